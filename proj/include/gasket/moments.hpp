#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "gasket/statistics.hpp"

namespace gasket {

/// Hausdorff dimension of an Apollonian gasket, used to rescale moments.
inline constexpr double kGasketDimension = 1.305688;

/// Midpoint rule on a square grid covering the bounding disk plus a margin.
/// Cell (i, j) has midpoint origin + ((i + 1/2) h, (j + 1/2) h).
struct QuadratureGrid {
    Complex origin;
    double spacing = 0.0;
    std::int64_t cells_per_side = 0;

    static QuadratureGrid covering(const CenterSet& cs, double margin, double spacing);
    /// As above, enlarged to contain E when E is bounded.
    static QuadratureGrid covering(const CenterSet& cs, double margin, double spacing, const Region& region);

    Complex midpoint(std::int64_t i, std::int64_t j) const {
        return {origin.real() + (static_cast<double>(i) + 0.5) * spacing,
                origin.imag() + (static_cast<double>(j) + 0.5) * spacing};
    }
    /// Number of cell midpoints inside the region.
    std::int64_t cells_in(const Region& region) const;
};

struct QuadratureOptions {
    double margin = 0.5;
    double spacing = 0.0;  // 0: the per-statistic default
    unsigned threads = 0;
};

struct MomentOptions : QuadratureOptions {
    double delta = kGasketDimension;
};

struct CountIndex {
    std::vector<int> r;
};

struct PowerIndex {
    std::vector<double> beta;
};

struct MomentEstimate {
    double t = 0.0;
    double estimate = 0.0;         // the integral
    double scaled_estimate = 0.0;  // e^{(2 - delta) t} times the integral
    double spacing = 0.0;
};

/// Integral of prod_i 1{N_t(Omega_i, z) = r_i} chi_E(z) dz by the midpoint rule.
/// Default spacing e^{-t}/4. With r = 0 the integrand is 1 away from the
/// gasket, so E must then be bounded (InvalidArgument otherwise).
MomentEstimate joint_indicator_moment(const CenterSet& cs, std::span<const Window> windows, const CountIndex& r,
                                      const Region& region, const MomentOptions& opts = {});

/// Integral of prod_i N_t(Omega_i, z)^{beta_i} chi_E(z) dz; at least one beta_i > 0.
MomentEstimate joint_power_moment(const CenterSet& cs, std::span<const Window> windows, const PowerIndex& beta,
                                  const Region& region, const MomentOptions& opts = {});

/// Header `t,estimate,scaled_estimate`.
void write_moment_csv(std::ostream& os, std::span<const MomentEstimate> rows);

/// Mixed 1-moment statistic on a xi grid, with the quadrature diagnostics the
/// sandwich checks need.
struct MixedMoment {
    Curve curve;
    /// Contribution to the statistic of a single grid cell carrying integrand 1.
    double cell_mass = 0.0;
    /// Largest N_t(B_eps, z) met at a grid midpoint.
    int max_epsilon_count = 0;
    double spacing = 0.0;
};

/// e^{2t} / (2 pi eps^2 #(C_t n E)) * integral chi_E N_t(B_eps, z) N_t(B_xi, z) dz - 1/2.
/// Requires 0 < eps < min(1/10, xi/10) for every xi. Default spacing eps e^{-t} / 8.
MixedMoment mixed_moment_pair(const CenterSet& cs, const Region& region, std::span<const double> xi_grid, double eps,
                              const QuadratureOptions& opts = {});
double mixed_moment_pair(const CenterSet& cs, const Region& region, double xi, double eps,
                         const QuadratureOptions& opts = {});

/// 1 - e^{2t} / (pi eps^2 #(C_t n E)) * integral chi_E 1{N_t(B_eps, z) = 1} 1{N_t(B_xi, z) = 1} dz.
MixedMoment mixed_moment_nn(const CenterSet& cs, const Region& region, std::span<const double> xi_grid, double eps,
                            const QuadratureOptions& opts = {});
double mixed_moment_nn(const CenterSet& cs, const Region& region, double xi, double eps,
                       const QuadratureOptions& opts = {});

} // namespace gasket
