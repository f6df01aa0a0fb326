#include "arraymp/obs_sim.hpp"

#include <cmath>
#include <complex>

#include "arraymp/errors.hpp"

namespace arraymp {

Vec3 ArrayGeometry::body_offset(int r) const {
    switch (r) {
        case 1: return {0.0, 0.0, 0.0};
        case 2: return {d12, 0.0, 0.0};
        case 3: return {d12 + d23, 0.0, 0.0};
        case 4: return {0.0, d14, 0.0};
        case 5: return {0.0, d14 + d45, 0.0};
        default: throw ConfigError("antenna index out of 1..5");
    }
}

void ArrayGeometry::validate() const {
    const double half = wavelength / 2.0;
    if (wavelength <= 0.0) throw ConfigError("wavelength must be positive");
    for (double d : {d12, d23, d14, d45}) {
        if (d <= half) {
            throw ConfigError("array distances must exceed lambda/2");
        }
    }
    const double dx = std::abs(d12 - d23);
    const double dy = std::abs(d14 - d45);
    if (dx <= 0.0 || dx > half || dy <= 0.0 || dy > half) {
        throw ConfigError(
            "baseline spacing differences must lie in (0, lambda/2] for "
            "phase disambiguation");
    }
}

double CanyonModel::height_at(Side side, double s) const {
    const auto& h = (side == Side::kLeft) ? left_heights : right_heights;
    if (h.empty()) return 0.0;
    const double idx = std::floor(s / segment_length) + std::floor(h.size() / 2.0);
    const auto i = static_cast<long>(std::clamp(idx, 0.0, double(h.size() - 1)));
    return h[static_cast<size_t>(i)];
}

CanyonModel CanyonModel::make(double half_width, double rayleigh_scale,
                              std::mt19937_64& rng, double extent) {
    CanyonModel c;
    c.half_width_left = c.half_width_right = half_width;
    const auto nseg = static_cast<size_t>(std::ceil(2.0 * extent / c.segment_length));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto rayleigh = [&] {
        const double u = std::max(unit(rng), 1e-12);
        return rayleigh_scale * std::sqrt(-2.0 * std::log(u));
    };
    c.left_heights.resize(nseg);
    c.right_heights.resize(nseg);
    for (auto& h : c.left_heights) h = rayleigh();
    for (auto& h : c.right_heights) h = rayleigh();
    return c;
}

CanyonModel CanyonModel::suburban(std::mt19937_64& rng) { return make(15.0, 8.0, rng); }
CanyonModel CanyonModel::urban(std::mt19937_64& rng) { return make(10.0, 20.0, rng); }

CanyonModel CanyonModel::open_sky() {
    CanyonModel c;
    c.left_heights.assign(1, 0.0);
    c.right_heights.assign(1, 0.0);
    return c;
}

Eigen::MatrixX3d ArrayEpoch::los() const {
    Eigen::MatrixX3d h(sats.size(), 3);
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        const Vec3 sat_enu = ecef_to_enu(sats[static_cast<size_t>(i)].sat_pos, enu_origin);
        h.row(i) = (sat_enu - truth_position).normalized().transpose();
    }
    return h;
}

std::vector<uint8_t> ArrayEpoch::truth_flags() const {
    std::vector<uint8_t> flags(sats.size());
    for (size_t i = 0; i < sats.size(); ++i) flags[i] = sats[i].contaminated ? 1 : 0;
    return flags;
}

double composite_amplitude(const std::vector<PathTerm>& terms) {
    std::complex<double> sum(1.0, 0.0);
    for (const auto& t : terms) sum += std::polar(t.amplitude, t.phase_delay);
    return std::abs(sum);
}

double excess_path_length(const Vec3& sat, const Vec3& antenna, const Vec3& refl) {
    const double in_leg = (sat - refl).norm();
    const double out_leg = (refl - antenna).norm();
    const double direct = (sat - antenna).norm();
    if (in_leg < 1e-9 || out_leg < 1e-9 || direct < 1e-9) {
        throw DegenerateGeometryError("excess_path_length: coincident points");
    }
    return std::max(in_leg + out_leg - direct, 0.0);
}

std::array<double, kNumAntennas> propagate_to_antennas(double delta_1,
                                                       const Vec3& arrival_dir,
                                                       const ArrayGeometry& geometry,
                                                       const Mat3& attitude) {
    std::array<double, kNumAntennas> delta;
    delta[0] = delta_1;
    for (int r = 2; r <= kNumAntennas; ++r) {
        const Vec3 baseline = attitude * geometry.body_offset(r);
        delta[r - 1] = std::max(delta_1 - baseline.dot(arrival_dir), 0.0);
    }
    return delta;
}

double phase_delay(double excess_path, double wavelength) {
    return wrap_pi(2.0 * M_PI * excess_path / wavelength);
}

namespace {

// Shared numerator/denominator of Eqs for the composite error.
void phasor_sums(const std::vector<PathTerm>& terms, double& sin_sum,
                 double& cos_sum, double& range_sum) {
    sin_sum = 0.0;
    cos_sum = 1.0;
    range_sum = 0.0;
    for (const auto& t : terms) {
        sin_sum += t.amplitude * std::sin(t.phase_delay);
        cos_sum += t.amplitude * std::cos(t.phase_delay);
        range_sum += t.amplitude * t.excess_path * std::sin(t.phase_delay);
    }
}

void check_fade(const std::vector<PathTerm>& terms) {
    if (composite_amplitude(terms) < kFadeGuard) {
        throw DestructiveFadeError("composite signal destructively faded");
    }
}

}  // namespace

double carrier_phase_error(const std::vector<PathTerm>& terms) {
    if (terms.empty()) return 0.0;
    check_fade(terms);
    double s, c, unused;
    phasor_sums(terms, s, c, unused);
    return std::atan2(s, c);
}

double pseudorange_error(const std::vector<PathTerm>& terms) {
    if (terms.empty()) return 0.0;
    check_fade(terms);
    double s, c, num;
    phasor_sums(terms, s, c, num);
    return num / c;
}

namespace {

struct StreetFrame {
    Vec3 along;  // unit, ENU
    Vec3 left;   // unit, ENU
    Vec3 to_street(const Vec3& v) const { return {v.dot(along), v.dot(left), v.z()}; }
    Vec3 to_enu(const Vec3& s) const { return s.x() * along + s.y() * left + s.z() * Vec3::UnitZ(); }
};

StreetFrame street_frame(double heading) {
    StreetFrame f;
    f.along = Vec3(std::cos(heading), std::sin(heading), 0.0);
    f.left = Vec3(-std::sin(heading), std::cos(heading), 0.0);
    return f;
}

// Specular reflection against the wall plane at signed lateral offset w.
// sat is the satellite position relative to antenna 1 in street coordinates.
std::optional<Vec3> mirror_reflection_point(const Vec3& sat, double wall_offset,
                                            CanyonModel::Side side,
                                            const CanyonModel& canyon) {
    const double side_sign = (wall_offset >= 0.0) ? 1.0 : -1.0;
    if (sat.y() * side_sign >= std::abs(wall_offset)) return std::nullopt;  // behind wall
    const Vec3 mirrored(sat.x(), 2.0 * wall_offset - sat.y(), sat.z());
    const double c = wall_offset / mirrored.y();  // in (0,1) by the check above
    const Vec3 o = c * mirrored;
    if (o.z() < 0.0) return std::nullopt;  // below street level
    if (o.z() > canyon.height_at(side, o.x())) return std::nullopt;  // over the roof
    return o;
}

// Does the direct antenna->satellite ray hit a wall below its facade height?
bool wall_blocks_direct(const Vec3& sat, double wall_offset, CanyonModel::Side side,
                        const CanyonModel& canyon) {
    const double side_sign = (wall_offset >= 0.0) ? 1.0 : -1.0;
    if (sat.y() * side_sign <= std::abs(wall_offset)) return false;  // no crossing
    const double t = wall_offset / sat.y();
    const double x_cross = t * sat.x();
    const double z_cross = t * sat.z();
    return z_cross <= canyon.height_at(side, x_cross);
}

}  // namespace

CanyonTrace reflect_against_canyon(const Vec3& sat_enu, const Vec3& antenna_enu,
                                   const CanyonModel& canyon, double heading,
                                   const ArrayGeometry& geometry, const Mat3& attitude,
                                   std::mt19937_64& rng) {
    const StreetFrame frame = street_frame(heading);
    const Vec3 sat = frame.to_street(sat_enu - antenna_enu);

    CanyonTrace trace;
    trace.direct_blocked =
        wall_blocks_direct(sat, canyon.half_width_left, CanyonModel::Side::kLeft, canyon) ||
        wall_blocks_direct(sat, -canyon.half_width_right, CanyonModel::Side::kRight, canyon);

    std::uniform_real_distribution<double> amp(canyon.amp_min, canyon.amp_max);
    const struct { double offset; CanyonModel::Side side; } walls[] = {
        {canyon.half_width_left, CanyonModel::Side::kLeft},
        {-canyon.half_width_right, CanyonModel::Side::kRight},
    };
    for (const auto& wall : walls) {
        if (static_cast<int>(trace.paths.size()) >= canyon.max_reflections) break;
        const auto o = mirror_reflection_point(sat, wall.offset, wall.side, canyon);
        if (!o) continue;
        MultipathPath path;
        path.amplitude = amp(rng);
        const Vec3 o_enu = antenna_enu + frame.to_enu(*o);
        path.reflection_point = o_enu;
        path.arrival_dir = frame.to_enu(o->normalized());
        const double delta_1 = excess_path_length(sat_enu, antenna_enu, o_enu);
        path.excess_path = propagate_to_antennas(delta_1, path.arrival_dir, geometry, attitude);
        for (int r = 0; r < kNumAntennas; ++r) {
            path.phase_delay[r] = phase_delay(path.excess_path[r], geometry.wavelength);
        }
        trace.paths.push_back(std::move(path));
    }
    return trace;
}

ArrayEpoch generate_epoch(const GeodeticPosition& truth_geodetic,
                          const Mat3& truth_attitude,
                          const std::vector<std::pair<int, EcefPos>>& sats,
                          const CanyonModel& canyon, const ArrayGeometry& geometry,
                          const NoiseConfig& noise, const EpochSettings& settings,
                          const GpsTime& time, const GeodeticPosition& enu_origin,
                          std::mt19937_64& rng) {
    geometry.validate();

    ArrayEpoch epoch;
    epoch.time = time;
    epoch.enu_origin = enu_origin;
    epoch.truth_attitude = truth_attitude;
    const EcefPos ant1_ecef = geodetic_to_ecef(truth_geodetic);
    epoch.truth_position = ecef_to_enu(ant1_ecef, enu_origin);

    std::array<Vec3, kNumAntennas> antenna_enu;
    for (int r = 1; r <= kNumAntennas; ++r) {
        antenna_enu[r - 1] = epoch.truth_position + truth_attitude * geometry.body_offset(r);
    }
    const Vec3 body_x = truth_attitude * Vec3::UnitX();
    const double heading = std::atan2(body_x.y(), body_x.x());

    // Elevation/azimuth against the local vertical at the vehicle.
    const Mat3 local_enu = enu_rotation(truth_geodetic);

    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sigma_phase_cycles = noise.sigma_phase / geometry.wavelength;

    for (const auto& [prn, sat_ecef] : sats) {
        const Vec3 local = local_enu * (sat_ecef - ant1_ecef);
        const double range0 = local.norm();
        if (range0 < 1.0) throw DegenerateGeometryError("satellite at receiver");
        const double elevation = std::asin(std::clamp(local.z() / range0, -1.0, 1.0));
        if (elevation < settings.elevation_cutoff) continue;

        const Vec3 sat_enu = ecef_to_enu(sat_ecef, enu_origin);
        CanyonTrace trace = reflect_against_canyon(sat_enu, antenna_enu[0], canyon,
                                                   heading, geometry, truth_attitude, rng);

        ReceptionScenario scenario;
        if (trace.direct_blocked) {
            if (trace.paths.empty()) continue;  // blocked: no signal at all
            scenario = ReceptionScenario::kNlos;
        } else {
            scenario = trace.paths.empty() ? ReceptionScenario::kLos
                                           : ReceptionScenario::kMultipath;
        }

        // Per-antenna composite terms; one set per antenna since the phase
        // delays differ across the array.
        std::array<std::vector<PathTerm>, kNumAntennas> terms;
        for (int r = 0; r < kNumAntennas; ++r) {
            for (const auto& p : trace.paths) {
                terms[r].push_back({p.amplitude, p.excess_path[r], p.phase_delay[r]});
            }
        }
        if (scenario == ReceptionScenario::kMultipath) {
            const bool faded =
                std::any_of(terms.begin(), terms.end(), [](const auto& t) {
                    return composite_amplitude(t) < kFadeGuard;
                });
            if (faded) continue;  // destructive interference: treat as blocked
        }

        SatObservation obs;
        obs.prn = prn;
        obs.sat_pos = sat_ecef;
        obs.elevation = elevation;
        obs.azimuth = std::atan2(local.x(), local.y());
        obs.scenario = scenario;
        obs.contaminated = scenario != ReceptionScenario::kLos;
        obs.paths = std::move(trace.paths);

        int strongest = 0;
        for (size_t k = 1; k < obs.paths.size(); ++k) {
            if (obs.paths[k].amplitude > obs.paths[strongest].amplitude) {
                strongest = static_cast<int>(k);
            }
        }

        for (int r = 0; r < kNumAntennas; ++r) {
            const double range = (sat_enu - antenna_enu[r]).norm();
            double pr = range;
            double phase = range / geometry.wavelength;
            if (scenario == ReceptionScenario::kMultipath) {
                pr += pseudorange_error(terms[r]);
                phase += carrier_phase_error(terms[r]) / (2.0 * M_PI);
            } else if (scenario == ReceptionScenario::kNlos) {
                // Reflection-only reception: the full excess path enters.
                pr += obs.paths[static_cast<size_t>(strongest)].excess_path[r];
                phase += obs.paths[static_cast<size_t>(strongest)].excess_path[r] /
                         geometry.wavelength;
            }
            pr += noise.sigma_pseudorange * gauss(rng);
            phase += sigma_phase_cycles * gauss(rng);
            obs.pseudorange(r) = pr;
            obs.carrier_phase(r) = phase;
        }
        epoch.sats.push_back(std::move(obs));
    }

    if (epoch.sats.empty()) {
        throw EmptyEpochError("no visible satellites at this epoch");
    }
    return epoch;
}

}  // namespace arraymp
