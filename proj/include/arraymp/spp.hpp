#pragma once

#include <vector>

#include "arraymp/frames.hpp"

namespace arraymp {

struct SppSolution {
    EcefPos position = EcefPos::Zero();
    double clock_bias = 0.0;  // m
    Eigen::VectorXd residuals;  // post-fit, m, one per satellite
    int iterations = 0;
    Eigen::Matrix4d geometry_cov = Eigen::Matrix4d::Zero();  // (G^T G)^-1
};

/// Gauss-Newton single point positioning on [position, clock bias].
/// Unweighted least squares; converged when the step norm drops below
/// 1e-4 m, at most 20 iterations.
/// Throws: InsufficientSatellitesError (< 4 satellites), NumericError for
/// ill-conditioned geometry (cond > 1e8) or non-convergence.
SppSolution spp_solve(const Eigen::VectorXd& pseudoranges,
                      const std::vector<EcefPos>& sat_positions,
                      const EcefPos& initial);

}  // namespace arraymp
