#pragma once

#include <vector>

#include "arraymp/obs_sim.hpp"

namespace arraymp {

/// Carrier phases of one epoch: column s holds the five antennas' phases
/// (cycles) for satellite sat_ids[s]. The satellite set is shared by all
/// antennas.
struct PhaseSet {
    std::vector<int> sat_ids;
    Eigen::Matrix<double, kNumAntennas, Eigen::Dynamic> phases;

    static PhaseSet from_epoch(const ArrayEpoch& epoch);
    PhaseSet subset(const std::vector<int>& indices) const;
};

struct AttitudeSolution {
    Mat3 rotation = Mat3::Identity();
    double residual = 0.0;              // post-fit phase misfit RMS, cycles
    std::vector<int> used_satellites;   // column indices of the input set kept
};

/// Direction cosine of the satellite LOS onto one array axis from three
/// collinear antennas (a at the origin, b at d_ab, c at d_ab + d_bc).
/// The unequal spacings resolve the integer ambiguities in one shot:
/// a coarse estimate from the wrapped difference of single differences,
/// then integer rounding per baseline, then a combined refined estimate.
/// Throws UnresolvableAmbiguityError when the coarse estimate is outside
/// [-1-margin, 1+margin].
double direction_cosine_per_axis(double phi_a, double phi_b, double phi_c,
                                 double d_ab, double d_bc, double wavelength,
                                 double margin = 0.3);

/// Array attitude from carrier phases and the LOS matrix H (unit rows,
/// receiver -> satellite, same frame as the returned rotation).
/// Satellites whose ambiguities cannot be resolved are dropped; errors out
/// only when fewer than 3 remain or H loses rank.
AttitudeSolution att_from_phase(const PhaseSet& phases, const ArrayGeometry& geometry,
                                const Eigen::MatrixX3d& los);

}  // namespace arraymp
