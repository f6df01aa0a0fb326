#pragma once

#include <istream>
#include <vector>

#include "arraymp/frames.hpp"

namespace arraymp {

/// One YUMA almanac block. Angles in radians, toa in seconds of week.
struct AlmanacRecord {
    int prn = 0;
    int health = 0;       // 0 = usable; preserved verbatim otherwise
    double ecc = 0.0;     // eccentricity, [0, 1)
    double toa = 0.0;     // time of applicability, s
    double incl = 0.0;    // orbital inclination, rad
    double raan_rate = 0.0;  // rate of right ascension, rad/s
    double sqrt_a = 0.0;     // sqrt of semi-major axis, m^0.5
    double raan = 0.0;       // right ascension at week epoch, rad
    double arg_perigee = 0.0;  // rad
    double mean_anomaly = 0.0;  // at toa, rad
    double af0 = 0.0;  // clock bias, s (parsed, not applied to observables)
    double af1 = 0.0;  // clock drift, s/s
    int week = 0;
};

struct GpsTime {
    int week = 0;
    double tow = 0.0;  // seconds of week, [0, 604800)
};

constexpr double kSecondsPerWeek = 604800.0;
constexpr double kEarthRotationRate = 7.2921151467e-5;  // rad/s
constexpr double kEarthGm = 3.986005e14;                // m^3/s^2

inline double gps_diff_seconds(const GpsTime& a, const GpsTime& b) {
    return (a.week - b.week) * kSecondsPerWeek + (a.tow - b.tow);
}

/// Parses YUMA almanac text: blank-line separated blocks of `KEY: value`
/// lines (13 standard keys, arbitrary spacing around the colon). Unhealthy
/// satellites are retained with their health flag set.
/// Throws ParseError naming the offending line on malformed numerics or
/// truncated blocks.
std::vector<AlmanacRecord> parse_yuma(std::istream& in);
std::vector<AlmanacRecord> parse_yuma_file(const std::string& path);

/// Solves Kepler's equation E - e*sin(E) = M to |residual| < 1e-12.
/// Newton iteration with bisection fallback, <= 50 iterations total.
double kepler_solve(double mean_anomaly, double ecc);

/// Almanac propagation to an ECEF position (no clock or harmonic terms).
/// Throws NumericError when the record has ecc >= 1.
EcefPos sat_position(const AlmanacRecord& rec, const GpsTime& t);

}  // namespace arraymp
