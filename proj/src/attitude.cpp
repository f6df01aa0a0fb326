#include "arraymp/attitude.hpp"

#include <cmath>

#include "arraymp/errors.hpp"

namespace arraymp {

PhaseSet PhaseSet::from_epoch(const ArrayEpoch& epoch) {
    PhaseSet set;
    set.sat_ids.reserve(epoch.sats.size());
    set.phases.resize(kNumAntennas, static_cast<Eigen::Index>(epoch.sats.size()));
    for (Eigen::Index s = 0; s < epoch.size(); ++s) {
        set.sat_ids.push_back(epoch.sats[static_cast<size_t>(s)].prn);
        set.phases.col(s) = epoch.sats[static_cast<size_t>(s)].carrier_phase;
    }
    return set;
}

PhaseSet PhaseSet::subset(const std::vector<int>& indices) const {
    PhaseSet out;
    out.sat_ids.reserve(indices.size());
    out.phases.resize(kNumAntennas, static_cast<Eigen::Index>(indices.size()));
    Eigen::Index col = 0;
    for (int i : indices) {
        out.sat_ids.push_back(sat_ids[static_cast<size_t>(i)]);
        out.phases.col(col++) = phases.col(i);
    }
    return out;
}

double direction_cosine_per_axis(double phi_a, double phi_b, double phi_c,
                                 double d_ab, double d_bc, double wavelength,
                                 double margin) {
    // Single differences in cycles, fractional parts only.
    const double sd_ab = wrap_half_cycle(phi_a - phi_b);
    const double sd_bc = wrap_half_cycle(phi_b - phi_c);

    // |d_ab - d_bc| <= lambda/2 makes the difference of the two single
    // differences unambiguous, giving a coarse direction cosine.
    const double spacing_diff = d_ab - d_bc;
    const double u0 = wavelength * wrap_half_cycle(sd_ab - sd_bc) / spacing_diff;
    if (std::abs(u0) > 1.0 + margin) {
        throw UnresolvableAmbiguityError("coarse direction cosine out of range");
    }

    const double n_ab = std::round(d_ab * u0 / wavelength - sd_ab);
    const double n_bc = std::round(d_bc * u0 / wavelength - sd_bc);
    const double u = wavelength * ((sd_ab + n_ab) + (sd_bc + n_bc)) / (d_ab + d_bc);
    return std::clamp(u, -1.0, 1.0);
}

AttitudeSolution att_from_phase(const PhaseSet& phases, const ArrayGeometry& geometry,
                                const Eigen::MatrixX3d& los) {
    const auto n = static_cast<Eigen::Index>(phases.sat_ids.size());
    if (los.rows() != n) {
        throw ConfigError("att_from_phase: LOS rows do not match satellite count");
    }
    if (n < 3) {
        throw DegenerateGeometryError("att_from_phase: need at least 3 satellites");
    }

    std::vector<int> kept;
    std::vector<double> ux, uy;
    kept.reserve(static_cast<size_t>(n));
    for (Eigen::Index s = 0; s < n; ++s) {
        try {
            const double u_x = direction_cosine_per_axis(
                phases.phases(0, s), phases.phases(1, s), phases.phases(2, s),
                geometry.d12, geometry.d23, geometry.wavelength);
            const double u_y = direction_cosine_per_axis(
                phases.phases(0, s), phases.phases(3, s), phases.phases(4, s),
                geometry.d14, geometry.d45, geometry.wavelength);
            ux.push_back(u_x);
            uy.push_back(u_y);
            kept.push_back(static_cast<int>(s));
        } catch (const UnresolvableAmbiguityError&) {
            // drop this satellite
        }
    }
    if (kept.size() < 3) {
        throw DegenerateGeometryError(
            "att_from_phase: fewer than 3 satellites with resolvable ambiguities");
    }

    const auto m = static_cast<Eigen::Index>(kept.size());
    Eigen::MatrixX3d h(m, 3);
    Eigen::VectorXd bx_rhs(m), by_rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        h.row(i) = los.row(kept[static_cast<size_t>(i)]);
        bx_rhs(i) = ux[static_cast<size_t>(i)];
        by_rhs(i) = uy[static_cast<size_t>(i)];
    }

    Eigen::JacobiSVD<Eigen::MatrixX3d> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(2) < 1e-8 * svd.singularValues()(0)) {
        throw DegenerateGeometryError("att_from_phase: rank-deficient LOS matrix");
    }
    const Vec3 bx = svd.solve(bx_rhs);
    const Vec3 by = svd.solve(by_rhs);

    // Wahba step: closest rotation whose first two columns fit (bx, by).
    Mat3 frame;
    frame.col(0) = bx;
    frame.col(1) = by;
    frame.col(2) = bx.cross(by);
    const Mat3 rotation = project_to_so3(frame);

    // Post-fit misfit of the wrapped single differences, cycles RMS.
    const Vec3 ex = rotation.col(0);
    const Vec3 ey = rotation.col(1);
    double sq_sum = 0.0;
    long count = 0;
    const struct { int a, b; double d; const Vec3& axis; } baselines[] = {
        {0, 1, geometry.d12, ex},
        {1, 2, geometry.d23, ex},
        {0, 3, geometry.d14, ey},
        {3, 4, geometry.d45, ey},
    };
    for (Eigen::Index i = 0; i < m; ++i) {
        const int s = kept[static_cast<size_t>(i)];
        const Vec3 los_s = los.row(s).transpose();
        for (const auto& bl : baselines) {
            const double observed = wrap_half_cycle(phases.phases(bl.a, s) - phases.phases(bl.b, s));
            const double predicted = bl.d * los_s.dot(bl.axis) / geometry.wavelength;
            const double misfit = wrap_half_cycle(observed - predicted);
            sq_sum += misfit * misfit;
            ++count;
        }
    }

    AttitudeSolution solution;
    solution.rotation = rotation;
    solution.residual = std::sqrt(sq_sum / static_cast<double>(count));
    solution.used_satellites.reserve(kept.size());
    for (int i : kept) solution.used_satellites.push_back(i);
    return solution;
}

}  // namespace arraymp
