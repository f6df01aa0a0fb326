#pragma once

#include <Eigen/Dense>

namespace arraymp {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Roll/pitch/yaw, intrinsic z-y-x: R = Rz(yaw) * Ry(pitch) * Rx(roll).
/// pitch in [-pi/2, pi/2]; roll, yaw in (-pi, pi].
struct EulerRPY {
    double roll = 0.0;
    double pitch = 0.0;
    double yaw = 0.0;
    bool gimbal_lock = false;  // |pitch| at pi/2; yaw fixed to 0 by convention
};

/// Wraps an angle in radians to (-pi, pi].
double wrap_pi(double angle);

/// Wraps a phase in cycles to (-0.5, 0.5].
double wrap_half_cycle(double cycles);

Mat3 skew(const Vec3& v);

/// True when R is orthonormal with det +1, each check within tol per entry.
bool is_rotation(const Mat3& r, double tol = 1e-6);

/// Nearest rotation to m in Frobenius norm (polar projection, det +1).
Mat3 project_to_so3(const Mat3& m);

/// Rodrigues exponential. Total: any finite rotation vector is accepted.
Mat3 exp_so3(const Vec3& v);

/// Inverse of exp_so3; returns the canonical vector with norm <= pi.
/// Throws InvalidRotationError when r is not a rotation within tol.
Vec3 log_so3(const Mat3& r, double tol = 1e-6);

/// Geodesic distance ||log(r1^T r2)||_F = sqrt(2) * rotation angle.
double geodesic_distance(const Mat3& r1, const Mat3& r2);

EulerRPY so3_to_rpy(const Mat3& r);
Mat3 rpy_to_so3(const EulerRPY& e);

}  // namespace arraymp
