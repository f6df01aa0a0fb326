#include "arraymp/constellation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "arraymp/errors.hpp"

namespace arraymp {

namespace {

std::string lower_trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::string out = s.substr(b, e - b + 1);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

double parse_number(const std::string& raw, long line) {
    const std::string s = lower_trim(raw);
    if (s.empty()) throw ParseError("empty numeric field", line);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw ParseError("malformed numeric field '" + raw + "'", line);
    }
    return v;
}

enum class Field {
    kId, kHealth, kEcc, kToa, kIncl, kRaanRate, kSqrtA, kRaan,
    kArgPerigee, kMeanAnom, kAf0, kAf1, kWeek
};

// Keys are matched by prefix on the lowercased text before the colon, which
// tolerates the unit suffixes that vary between published files.
std::optional<Field> classify_key(const std::string& key) {
    struct Entry { const char* prefix; Field field; };
    static const Entry table[] = {
        {"id", Field::kId},
        {"health", Field::kHealth},
        {"eccentricity", Field::kEcc},
        {"time of applicability", Field::kToa},
        {"orbital inclination", Field::kIncl},
        {"rate of right ascen", Field::kRaanRate},
        {"sqrt(a)", Field::kSqrtA},
        {"right ascen at week", Field::kRaan},
        {"argument of perigee", Field::kArgPerigee},
        {"mean anom", Field::kMeanAnom},
        {"af0", Field::kAf0},
        {"af1", Field::kAf1},
        {"week", Field::kWeek},
    };
    for (const auto& entry : table) {
        if (key.rfind(entry.prefix, 0) == 0) return entry.field;
    }
    return std::nullopt;
}

AlmanacRecord finalize_block(const std::map<Field, double>& fields, long first_line) {
    static const std::pair<Field, const char*> required[] = {
        {Field::kId, "ID"},
        {Field::kHealth, "Health"},
        {Field::kEcc, "Eccentricity"},
        {Field::kToa, "Time of Applicability"},
        {Field::kIncl, "Orbital Inclination"},
        {Field::kRaanRate, "Rate of Right Ascen"},
        {Field::kSqrtA, "SQRT(A)"},
        {Field::kRaan, "Right Ascen at Week"},
        {Field::kArgPerigee, "Argument of Perigee"},
        {Field::kMeanAnom, "Mean Anom"},
        {Field::kAf0, "Af0"},
        {Field::kAf1, "Af1"},
        {Field::kWeek, "week"},
    };
    for (const auto& [field, name] : required) {
        if (!fields.count(field)) {
            throw ParseError(std::string("almanac block missing '") + name + "' key",
                             first_line);
        }
    }
    AlmanacRecord rec;
    rec.prn = static_cast<int>(fields.at(Field::kId));
    rec.health = static_cast<int>(fields.at(Field::kHealth));
    rec.ecc = fields.at(Field::kEcc);
    rec.toa = fields.at(Field::kToa);
    rec.incl = fields.at(Field::kIncl);
    rec.raan_rate = fields.at(Field::kRaanRate);
    rec.sqrt_a = fields.at(Field::kSqrtA);
    rec.raan = fields.at(Field::kRaan);
    rec.arg_perigee = fields.at(Field::kArgPerigee);
    rec.mean_anomaly = fields.at(Field::kMeanAnom);
    rec.af0 = fields.at(Field::kAf0);
    rec.af1 = fields.at(Field::kAf1);
    rec.week = static_cast<int>(fields.at(Field::kWeek));
    if (rec.ecc < 0.0 || rec.ecc >= 1.0) {
        throw ParseError("eccentricity out of [0,1)", first_line);
    }
    if (rec.sqrt_a <= 0.0) {
        throw ParseError("SQRT(A) must be positive", first_line);
    }
    return rec;
}

}  // namespace

std::vector<AlmanacRecord> parse_yuma(std::istream& in) {
    std::vector<AlmanacRecord> records;
    std::map<Field, double> fields;
    long line_no = 0;
    long block_start = 0;
    std::string line;

    auto flush = [&] {
        if (!fields.empty()) {
            records.push_back(finalize_block(fields, block_start));
            fields.clear();
        }
    };

    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = lower_trim(line);
        if (trimmed.empty()) {
            flush();
            continue;
        }
        if (trimmed.front() == '*') continue;  // banner line
        const size_t colon = line.find(':');
        if (colon == std::string::npos) {
            throw ParseError("expected 'KEY: value'", line_no);
        }
        const auto field = classify_key(lower_trim(line.substr(0, colon)));
        if (!field) continue;  // unknown key; ignore
        if (fields.empty()) block_start = line_no;
        fields[*field] = parse_number(line.substr(colon + 1), line_no);
    }
    flush();
    return records;
}

std::vector<AlmanacRecord> parse_yuma_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open almanac file: " + path);
    return parse_yuma(in);
}

double kepler_solve(double mean_anomaly, double ecc) {
    if (ecc < 0.0 || ecc >= 1.0) {
        throw NumericError("kepler_solve: eccentricity out of [0,1)");
    }
    // Reduce to a base interval; E is equivariant under 2*pi shifts of M.
    const double two_pi = 2.0 * M_PI;
    const double shift = two_pi * std::floor(mean_anomaly / two_pi + 0.5);
    const double m = mean_anomaly - shift;

    double e_anom = m + ecc * std::sin(m);
    int iter = 0;
    for (; iter < 25; ++iter) {
        const double f = e_anom - ecc * std::sin(e_anom) - m;
        if (std::abs(f) < 1e-12) return e_anom + shift;
        e_anom -= f / (1.0 - ecc * std::cos(e_anom));
    }
    // Bisection fallback: f is strictly increasing in E.
    double lo = m - ecc, hi = m + ecc;
    for (; iter < 50; ++iter) {
        e_anom = 0.5 * (lo + hi);
        const double f = e_anom - ecc * std::sin(e_anom) - m;
        if (std::abs(f) < 1e-12) return e_anom + shift;
        (f > 0.0 ? hi : lo) = e_anom;
    }
    const double f = e_anom - ecc * std::sin(e_anom) - m;
    if (std::abs(f) < 1e-12) return e_anom + shift;
    throw NumericError("kepler_solve: no convergence in 50 iterations");
}

EcefPos sat_position(const AlmanacRecord& rec, const GpsTime& t) {
    if (rec.ecc >= 1.0) throw NumericError("sat_position: invalid record (ecc >= 1)");
    const double a = rec.sqrt_a * rec.sqrt_a;
    const double n = std::sqrt(kEarthGm / (a * a * a));
    const double tk = gps_diff_seconds(t, GpsTime{rec.week, rec.toa});

    const double mk = rec.mean_anomaly + n * tk;
    const double ek = kepler_solve(mk, rec.ecc);
    const double nu = std::atan2(std::sqrt(1.0 - rec.ecc * rec.ecc) * std::sin(ek),
                                 std::cos(ek) - rec.ecc);
    const double u = nu + rec.arg_perigee;      // argument of latitude
    const double radius = a * (1.0 - rec.ecc * std::cos(ek));

    const double x_orb = radius * std::cos(u);
    const double y_orb = radius * std::sin(u);

    // Longitude of ascending node in ECEF at time t.
    const double omega = rec.raan + (rec.raan_rate - kEarthRotationRate) * tk -
                         kEarthRotationRate * rec.toa;

    const double cos_om = std::cos(omega), sin_om = std::sin(omega);
    const double cos_i = std::cos(rec.incl), sin_i = std::sin(rec.incl);
    return {x_orb * cos_om - y_orb * cos_i * sin_om,
            x_orb * sin_om + y_orb * cos_i * cos_om,
            y_orb * sin_i};
}

}  // namespace arraymp
