#include "arraymp/so3.hpp"

#include <algorithm>
#include <cmath>

#include "arraymp/errors.hpp"

namespace arraymp {

namespace {
constexpr double kPi = 3.14159265358979323846;
// Below this angle the Rodrigues coefficients switch to their second-order
// Taylor expansions.
constexpr double kSmallAngle = 1e-7;
}  // namespace

double wrap_pi(double angle) {
    double r = std::remainder(angle, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

double wrap_half_cycle(double cycles) {
    double r = std::remainder(cycles, 1.0);
    if (r <= -0.5) r += 1.0;
    return r;
}

Mat3 skew(const Vec3& v) {
    Mat3 k;
    k << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
        -v.y(), v.x(), 0.0;
    return k;
}

bool is_rotation(const Mat3& r, double tol) {
    const Mat3 gram = r.transpose() * r;
    if ((gram - Mat3::Identity()).cwiseAbs().maxCoeff() > tol) return false;
    return std::abs(r.determinant() - 1.0) <= tol;
}

Mat3 project_to_so3(const Mat3& m) {
    Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 u = svd.matrixU();
    Mat3 v = svd.matrixV();
    Vec3 s(1.0, 1.0, (u * v.transpose()).determinant());
    return u * s.asDiagonal() * v.transpose();
}

Mat3 exp_so3(const Vec3& v) {
    const double theta2 = v.squaredNorm();
    const double theta = std::sqrt(theta2);
    double c1, c2;  // sin(t)/t and (1-cos(t))/t^2
    if (theta < kSmallAngle) {
        c1 = 1.0 - theta2 / 6.0;
        c2 = 0.5 - theta2 / 24.0;
    } else {
        c1 = std::sin(theta) / theta;
        c2 = (1.0 - std::cos(theta)) / theta2;
    }
    const Mat3 k = skew(v);
    return Mat3::Identity() + c1 * k + c2 * k * k;
}

Vec3 log_so3(const Mat3& r, double tol) {
    if (!is_rotation(r, tol)) {
        throw InvalidRotationError("log_so3: input is not a rotation matrix");
    }
    const double cos_theta = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
    const double theta = std::acos(cos_theta);
    const Vec3 axis_sin(0.5 * (r(2, 1) - r(1, 2)),
                        0.5 * (r(0, 2) - r(2, 0)),
                        0.5 * (r(1, 0) - r(0, 1)));  // = sin(theta) * axis

    if (theta < kSmallAngle) {
        // log(R) ~ (R - R^T)/2 with a theta^2/6 curvature correction
        return (1.0 + theta * theta / 6.0) * axis_sin;
    }
    if (kPi - theta > 1e-3) {
        return (theta / std::sin(theta)) * axis_sin;
    }

    // Near pi the sin-based form is ill-conditioned. (R + I)/2 approaches
    // n n^T; take the axis from its dominant diagonal.
    const Mat3 outer = 0.5 * (r + Mat3::Identity());
    int k = 0;
    outer.diagonal().maxCoeff(&k);
    Vec3 axis = outer.col(k) / std::sqrt(std::max(outer(k, k), 1e-12));
    axis.normalize();
    // Fix the sign: axis_sin = sin(theta) * axis with sin(theta) >= 0 on [0, pi].
    const double s = axis.dot(axis_sin);
    if (s < 0.0) axis = -axis;
    const double sin_theta = std::min(axis_sin.norm(), 1.0);
    const double angle = kPi - std::asin(sin_theta);
    return angle * axis;
}

double geodesic_distance(const Mat3& r1, const Mat3& r2) {
    const Vec3 v = log_so3(r1.transpose() * r2);
    return std::sqrt(2.0) * v.norm();
}

EulerRPY so3_to_rpy(const Mat3& r) {
    EulerRPY e;
    const double sp = std::clamp(-r(2, 0), -1.0, 1.0);
    e.pitch = std::asin(sp);
    if (kPi / 2.0 - std::abs(e.pitch) < 1e-9) {
        e.gimbal_lock = true;
        e.yaw = 0.0;
        // At +pi/2: R(0,1) = sin(roll - yaw); at -pi/2: R(0,1) = -sin(roll + yaw).
        e.roll = (e.pitch > 0.0) ? std::atan2(r(0, 1), r(1, 1))
                                 : std::atan2(-r(0, 1), r(1, 1));
        e.roll = wrap_pi(e.roll);
        return e;
    }
    e.roll = wrap_pi(std::atan2(r(2, 1), r(2, 2)));
    e.yaw = wrap_pi(std::atan2(r(1, 0), r(0, 0)));
    return e;
}

Mat3 rpy_to_so3(const EulerRPY& e) {
    return (Eigen::AngleAxisd(e.yaw, Vec3::UnitZ()) *
            Eigen::AngleAxisd(e.pitch, Vec3::UnitY()) *
            Eigen::AngleAxisd(e.roll, Vec3::UnitX()))
        .toRotationMatrix();
}

}  // namespace arraymp
