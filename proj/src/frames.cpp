#include "arraymp/frames.hpp"

#include <cmath>

#include "arraymp/errors.hpp"

namespace arraymp {

EcefPos geodetic_to_ecef(const GeodeticPosition& g) {
    using namespace wgs84;
    const double sin_lat = std::sin(g.lat);
    const double cos_lat = std::cos(g.lat);
    const double n = kSemiMajorAxis / std::sqrt(1.0 - kEccSq * sin_lat * sin_lat);
    return {(n + g.height) * cos_lat * std::cos(g.lon),
            (n + g.height) * cos_lat * std::sin(g.lon),
            (n * (1.0 - kEccSq) + g.height) * sin_lat};
}

GeodeticPosition ecef_to_geodetic(const EcefPos& p) {
    using namespace wgs84;
    GeodeticPosition g;
    g.lon = std::atan2(p.y(), p.x());
    const double rho = std::hypot(p.x(), p.y());
    if (rho < 1.0) {  // polar axis
        g.lat = (p.z() >= 0.0) ? M_PI / 2.0 : -M_PI / 2.0;
        g.height = std::abs(p.z()) - kSemiMinorAxis;
        return g;
    }
    double lat = std::atan2(p.z(), rho * (1.0 - kEccSq));
    double n = kSemiMajorAxis;
    double height = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double sin_lat = std::sin(lat);
        n = kSemiMajorAxis / std::sqrt(1.0 - kEccSq * sin_lat * sin_lat);
        height = rho / std::cos(lat) - n;
        const double next = std::atan2(p.z(), rho * (1.0 - kEccSq * n / (n + height)));
        const bool done = std::abs(next - lat) < 1e-12;
        lat = next;
        if (done) break;
    }
    g.lat = lat;
    g.height = height;
    return g;
}

Mat3 enu_rotation(const GeodeticPosition& origin) {
    const double sl = std::sin(origin.lon), cl = std::cos(origin.lon);
    const double sp = std::sin(origin.lat), cp = std::cos(origin.lat);
    Mat3 r;
    r << -sl, cl, 0.0,
        -sp * cl, -sp * sl, cp,
        cp * cl, cp * sl, sp;
    return r;
}

EnuPos ecef_to_enu(const EcefPos& p, const GeodeticPosition& origin) {
    return enu_rotation(origin) * (p - geodetic_to_ecef(origin));
}

EcefPos enu_to_ecef(const EnuPos& v, const GeodeticPosition& origin) {
    return geodetic_to_ecef(origin) + enu_rotation(origin).transpose() * v;
}

LosAngles los_and_angles(const std::vector<EcefPos>& sat_positions,
                         const GeodeticPosition& receiver) {
    const auto n = static_cast<Eigen::Index>(sat_positions.size());
    LosAngles out;
    out.los.resize(n, 3);
    out.elevation.resize(n);
    out.azimuth.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const EnuPos d = ecef_to_enu(sat_positions[static_cast<size_t>(i)], receiver);
        const double range = d.norm();
        if (range < 1.0) {
            throw DegenerateGeometryError(
                "los_and_angles: satellite coincides with receiver");
        }
        const Vec3 u = d / range;
        out.los.row(i) = u.transpose();
        out.elevation(i) = std::asin(std::clamp(u.z(), -1.0, 1.0));
        out.azimuth(i) = std::atan2(u.x(), u.y());
    }
    return out;
}

}  // namespace arraymp
