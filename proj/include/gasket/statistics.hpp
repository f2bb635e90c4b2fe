#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "gasket/enumerator.hpp"
#include "gasket/region.hpp"
#include "gasket/spatial_index.hpp"

namespace gasket {

/// A statistic sampled on an increasing xi grid.
struct Curve {
    std::vector<double> xi;
    std::vector<double> values;

    std::size_t size() const { return xi.size(); }
};

/// lo, lo + step, ..., up to hi (inclusive within a rounding tolerance).
/// Points are lo + k*step, not accumulated sums.
std::vector<double> make_xi_grid(double lo, double hi, double step);

/// Header `xi,value`, 17 significant digits.
void write_curve_csv(std::ostream& os, const Curve& c);
Curve read_curve_csv(std::istream& is);

/// max |a(xi) - b(xi)| over shared grid points with lo <= xi <= hi.
double sup_distance(const Curve& a, const Curve& b, double lo, double hi);

struct StatOptions {
    unsigned threads = 0;  // 0: GASKET_STATS_THREADS or all cores
};

std::size_t count_in_region(const CenterSet& cs, const Region& region);

/// Pair correlation: (1 / (2 #(C_t n E))) times the number of ordered pairs
/// p != q in C_t n E with e^t |p - q| < xi. Equivalently, unordered pairs over #.
Curve pair_correlation(const CenterSet& cs, const Region& region, std::span<const double> xi_grid,
                       const StatOptions& opts = {});

/// Nearest-neighbor spacing: fraction of p in C_t n E with e^t d_t(p) < xi,
/// where d_t(p) is the distance to the nearest other point of all of C_t.
Curve nn_spacing(const CenterSet& cs, const Region& region, std::span<const double> xi_grid,
                 const StatOptions& opts = {});

/// Central difference (P(xi + step/2) - P(xi - step/2)) / step on the grid
/// points where both samples exist. The grid must be uniform with step/2 a
/// multiple of its spacing; throws GridMismatch otherwise.
Curve empirical_derivative(const Curve& curve, double step);

/// #((e^{-t} Omega + z) n C_t), by a linear scan.
std::size_t window_count(const CenterSet& cs, const Window& w, Complex z);

/// Window counts through a grid index; same answers as window_count.
class WindowCounter {
public:
    WindowCounter(const CenterSet& cs, double max_reach);

    std::size_t count(const Window& w, Complex z) const;
    /// counts[i] = N_t(windows[i], z)
    void count_all(std::span<const Window> windows, Complex z, std::span<int> counts) const;

private:
    GridIndex index_;
    double scale_ = 1.0;
    double radius_ = 0.0;
};

} // namespace gasket
