#pragma once

#include <vector>

#include "arraymp/so3.hpp"

namespace arraymp {

// ECEF and local ENU positions are plain 3-vectors in meters.
using EcefPos = Vec3;
using EnuPos = Vec3;

/// WGS-84 geodetic coordinates.
struct GeodeticPosition {
    double lat = 0.0;     // radians, |lat| <= pi/2
    double lon = 0.0;     // radians, (-pi, pi]
    double height = 0.0;  // meters above the ellipsoid
};

namespace wgs84 {
constexpr double kSemiMajorAxis = 6378137.0;
constexpr double kFlattening = 1.0 / 298.257223563;
constexpr double kEccSq = kFlattening * (2.0 - kFlattening);
constexpr double kSemiMinorAxis = kSemiMajorAxis * (1.0 - kFlattening);
}  // namespace wgs84

EcefPos geodetic_to_ecef(const GeodeticPosition& g);

/// Bounded fixed-point inversion (<= 10 iterations, 1e-12 rad latitude tol).
GeodeticPosition ecef_to_geodetic(const EcefPos& p);

/// Rotation taking ECEF direction vectors into ENU axes at origin.
Mat3 enu_rotation(const GeodeticPosition& origin);

EnuPos ecef_to_enu(const EcefPos& p, const GeodeticPosition& origin);
EcefPos enu_to_ecef(const EnuPos& v, const GeodeticPosition& origin);

struct LosAngles {
    Eigen::MatrixX3d los;       // unit receiver->satellite rows, ENU
    Eigen::VectorXd elevation;  // radians
    Eigen::VectorXd azimuth;    // radians, clockwise from North
};

/// Line-of-sight matrix plus elevation/azimuth for each satellite.
/// Throws DegenerateGeometryError if a satellite coincides with the receiver.
LosAngles los_and_angles(const std::vector<EcefPos>& sat_positions,
                         const GeodeticPosition& receiver);

}  // namespace arraymp
