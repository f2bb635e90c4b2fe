#include "gasket/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "gasket/csv.hpp"
#include "gasket/parallel.hpp"

namespace gasket {

namespace {

constexpr std::size_t kCellChunk = 8192;
constexpr std::size_t kPointChunk = 512;

Circle bounding_circle(const CenterSet& cs) {
    for (const auto& c : cs.root().circles)
        if (c.enclosing()) return c;
    throw InvalidArgument("center set has no bounding circle");
}

struct CellRange {
    std::int64_t lo, hi;  // inclusive
};

// Cells whose midpoint coordinate may lie within [x - r, x + r], padded by one.
CellRange cells_near(double x, double r, double origin, double h, std::int64_t n) {
    const auto lo = static_cast<std::int64_t>(std::floor((x - r - origin) / h - 0.5)) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil((x + r - origin) / h - 0.5)) + 1;
    return {std::max<std::int64_t>(lo, 0), std::min<std::int64_t>(hi, n - 1)};
}

void validate_windows(std::span<const Window> windows, std::size_t index_size) {
    if (windows.empty()) throw InvalidArgument("at least one window is required");
    if (index_size != windows.size()) throw InvalidArgument("multi-index length must match the number of windows");
}

template <class Integrand>
MomentEstimate integrate_counts(const CenterSet& cs, std::span<const Window> windows, const Region& region,
                                const MomentOptions& opts, Integrand integrand) {
    const double scale = cs.scale();
    const double h = opts.spacing > 0.0 ? opts.spacing : 0.25 / scale;
    const std::vector<int> zeros(windows.size(), 0);
    const double at_zero = integrand(std::span<const int>(zeros));
    if (at_zero != 0.0 && !region.bounding_box()) throw InvalidArgument("moment diverges on an unbounded region");
    const auto grid = QuadratureGrid::covering(cs, opts.margin, h, region);
    const std::int64_t n = grid.cells_per_side;

    double reach = 0.0;
    for (const auto& w : windows) reach = std::max(reach, w.reach());
    const double radius = reach / scale * (1.0 + 1e-9);

    // Cells whose midpoint can see a center through some window. Every other
    // cell has all counts zero.
    const auto& pts = cs.points();
    std::vector<std::vector<std::int64_t>> partial_keys(chunk_count(pts.size(), kPointChunk));
    parallel_chunks(pts.size(), kPointChunk, opts.threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
        auto& keys = partial_keys[c];
        for (std::size_t k = begin; k < end; ++k) {
            const Complex p = pts[k].center;
            const auto xs = cells_near(p.real(), radius, grid.origin.real(), h, n);
            const auto ys = cells_near(p.imag(), radius, grid.origin.imag(), h, n);
            for (auto i = xs.lo; i <= xs.hi; ++i)
                for (auto j = ys.lo; j <= ys.hi; ++j)
                    if (std::abs(grid.midpoint(i, j) - p) <= radius) keys.push_back(i * n + j);
        }
    });
    std::vector<std::int64_t> active;
    for (auto& k : partial_keys) {
        active.insert(active.end(), k.begin(), k.end());
        k.clear();
        k.shrink_to_fit();
    }
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());

    const WindowCounter counter(cs, reach);
    const std::size_t chunks = chunk_count(active.size(), kCellChunk);
    std::vector<double> sums(chunks, 0.0);
    std::vector<std::int64_t> in_region(chunks, 0);
    parallel_chunks(active.size(), kCellChunk, opts.threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
        std::vector<int> counts(windows.size());
        double s = 0.0;
        std::int64_t m = 0;
        for (std::size_t k = begin; k < end; ++k) {
            const Complex z = grid.midpoint(active[k] / n, active[k] % n);
            if (!region.contains(z)) continue;
            ++m;
            counter.count_all(windows, z, counts);
            s += integrand(std::span<const int>(counts));
        }
        sums[c] = s;
        in_region[c] = m;
    });

    double total = 0.0;
    for (double s : sums) total += s;
    const std::int64_t active_in_region = std::accumulate(in_region.begin(), in_region.end(), std::int64_t{0});
    if (at_zero != 0.0) total += static_cast<double>(grid.cells_in(region) - active_in_region) * at_zero;

    MomentEstimate out;
    out.t = cs.t();
    out.spacing = h;
    out.estimate = total * h * h;
    out.scaled_estimate = std::exp((2.0 - opts.delta) * cs.t()) * out.estimate;
    return out;
}

void check_mixed_args(std::span<const double> xi_grid, double eps) {
    if (!(eps > 0.0) || !(eps < 0.1)) throw InvalidArgument("eps must lie in (0, 1/10)");
    if (xi_grid.empty()) throw InvalidArgument("mixed moments need at least one xi");
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        if (!(eps < xi_grid[i] / 10.0)) throw InvalidArgument("eps must be below xi/10 for every xi");
        if (i > 0 && !(xi_grid[i] > xi_grid[i - 1])) throw InvalidArgument("xi grid must be strictly increasing");
    }
}

enum class MixedKind { Pair, Nearest };

MixedMoment mixed_impl(const CenterSet& cs, const Region& region, std::span<const double> xi_grid, double eps,
                       const QuadratureOptions& opts, MixedKind kind) {
    check_mixed_args(xi_grid, eps);
    const std::size_t in_e = count_in_region(cs, region);
    if (in_e == 0) throw EmptyRegion("no centers of C_t lie in the region");

    const double scale = cs.scale();
    const double h = opts.spacing > 0.0 ? opts.spacing : eps / (8.0 * scale);
    const auto grid = QuadratureGrid::covering(cs, opts.margin, h);
    const std::int64_t n = grid.cells_per_side;
    const std::size_t nxi = xi_grid.size();
    const double xi_max = xi_grid.back();

    const auto centers = cs.centers();
    const double cand_radius = (xi_max + eps) / scale * (1.0 + 1e-9);
    const GridIndex index(centers, cand_radius);
    const double claim_radius = eps / scale * (1.0 + 1e-9);

    const std::size_t chunks = chunk_count(centers.size(), kPointChunk);
    std::vector<std::vector<std::int64_t>> diffs(chunks);
    std::vector<int> max_eps(chunks, 0);
    parallel_chunks(centers.size(), kPointChunk, opts.threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
        std::vector<std::int64_t> diff(nxi + 1, 0);
        std::vector<Complex> cand;
        int worst = 0;
        for (std::size_t k = begin; k < end; ++k) {
            const Complex p = centers[k];
            cand.clear();
            index.for_each_within(p, cand_radius, [&](std::size_t id, double) { cand.push_back(centers[id]); });
            const auto xs = cells_near(p.real(), claim_radius, grid.origin.real(), h, n);
            const auto ys = cells_near(p.imag(), claim_radius, grid.origin.imag(), h, n);
            for (auto i = xs.lo; i <= xs.hi; ++i) {
                for (auto j = ys.lo; j <= ys.hi; ++j) {
                    const Complex z = grid.midpoint(i, j);
                    if (!(std::abs((p - z) * scale) < eps) || !region.contains(z)) continue;
                    int small = 0;
                    double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
                    for (const Complex q : cand) {
                        const double d = std::abs((q - z) * scale);
                        small += d < eps;
                        if (kind == MixedKind::Pair) {
                            const auto at = std::upper_bound(xi_grid.begin(), xi_grid.end(), d) - xi_grid.begin();
                            ++diff[static_cast<std::size_t>(at)];
                        } else if (d < d1) {
                            d2 = d1;
                            d1 = d;
                        } else if (d < d2) {
                            d2 = d;
                        }
                    }
                    worst = std::max(worst, small);
                    if (kind == MixedKind::Nearest) {
                        // N(B_xi, z) = 1 exactly for d1 < xi <= d2.
                        const auto lo = std::upper_bound(xi_grid.begin(), xi_grid.end(), d1) - xi_grid.begin();
                        const auto hi = std::upper_bound(xi_grid.begin(), xi_grid.end(), d2) - xi_grid.begin();
                        if (lo < hi) {
                            ++diff[static_cast<std::size_t>(lo)];
                            --diff[static_cast<std::size_t>(hi)];
                        }
                    }
                }
            }
        }
        diffs[c] = std::move(diff);
        max_eps[c] = worst;
    });

    std::vector<std::int64_t> total(nxi + 1, 0);
    for (const auto& d : diffs)
        for (std::size_t k = 0; k <= nxi; ++k) total[k] += d[k];

    MixedMoment out;
    out.spacing = h;
    out.max_epsilon_count = *std::max_element(max_eps.begin(), max_eps.end());
    const double sh = scale * h;
    const double denom = (kind == MixedKind::Pair ? 2.0 : 1.0) * kPi * eps * eps * static_cast<double>(in_e);
    out.cell_mass = sh * sh / denom;
    out.curve.xi.assign(xi_grid.begin(), xi_grid.end());
    std::int64_t running = 0;
    for (std::size_t k = 0; k < nxi; ++k) {
        running += total[k];
        const double integral = out.cell_mass * static_cast<double>(running);
        out.curve.values.push_back(kind == MixedKind::Pair ? integral - 0.5 : 1.0 - integral);
    }
    return out;
}

} // namespace

QuadratureGrid QuadratureGrid::covering(const CenterSet& cs, double margin, double spacing) {
    if (!(spacing > 0.0)) throw InvalidArgument("quadrature spacing must be positive");
    if (!(margin >= 0.0)) throw InvalidArgument("quadrature margin must be nonnegative");
    const Circle outer = bounding_circle(cs);
    const double half = outer.radius() + margin;
    const double cells = std::ceil(2.0 * half / spacing);
    if (cells > 3e9) throw InvalidArgument("quadrature grid too fine");
    QuadratureGrid g;
    g.origin = outer.center - Complex(half, half);
    g.spacing = spacing;
    g.cells_per_side = static_cast<std::int64_t>(cells);
    return g;
}

QuadratureGrid QuadratureGrid::covering(const CenterSet& cs, double margin, double spacing, const Region& region) {
    QuadratureGrid g = covering(cs, margin, spacing);
    const auto box = region.bounding_box();
    if (!box) return g;
    const double side = static_cast<double>(g.cells_per_side) * spacing;
    const double x0 = std::min(g.origin.real(), box->first.real()), y0 = std::min(g.origin.imag(), box->first.imag());
    const double x1 = std::max(g.origin.real() + side, box->second.real());
    const double y1 = std::max(g.origin.imag() + side, box->second.imag());
    const double cells = std::ceil(std::max(x1 - x0, y1 - y0) / spacing);
    if (cells > 3e9) throw InvalidArgument("quadrature grid too fine");
    g.origin = {x0, y0};
    g.cells_per_side = static_cast<std::int64_t>(cells);
    return g;
}

std::int64_t QuadratureGrid::cells_in(const Region& region) const {
    const std::int64_t n = cells_per_side;
    const double x0 = origin.real(), h = spacing;
    std::int64_t total = 0;
    for (std::int64_t j = 0; j < n; ++j) {
        const double y = midpoint(0, j).imag();
        const auto span = region.row_span(y);
        if (!span) continue;
        auto first_after = [&](double x) -> std::int64_t {
            if (x == -std::numeric_limits<double>::infinity()) return 0;
            if (x == std::numeric_limits<double>::infinity()) return n;
            const double k = std::ceil((x - x0) / h - 0.5);
            return static_cast<std::int64_t>(std::clamp(k, 0.0, static_cast<double>(n)));
        };
        std::int64_t lo = first_after(span->first), hi = first_after(span->second);
        auto inside = [&](std::int64_t i) { return region.contains(midpoint(i, j)); };
        // The span is analytic; settle the endpoints against contains().
        while (lo < hi && !inside(lo)) ++lo;
        while (lo > 0 && inside(lo - 1)) --lo;
        while (hi > lo && !inside(hi - 1)) --hi;
        while (hi < n && inside(hi)) ++hi;
        total += hi - lo;
    }
    return total;
}

MomentEstimate joint_indicator_moment(const CenterSet& cs, std::span<const Window> windows, const CountIndex& r,
                                      const Region& region, const MomentOptions& opts) {
    validate_windows(windows, r.r.size());
    for (int v : r.r)
        if (v < 0) throw InvalidArgument("count multi-index entries must be >= 0");
    return integrate_counts(cs, windows, region, opts, [&](std::span<const int> counts) {
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] != r.r[i]) return 0.0;
        return 1.0;
    });
}

MomentEstimate joint_power_moment(const CenterSet& cs, std::span<const Window> windows, const PowerIndex& beta,
                                  const Region& region, const MomentOptions& opts) {
    validate_windows(windows, beta.beta.size());
    bool nonzero = false;
    for (double b : beta.beta) {
        if (!(b >= 0.0) || !std::isfinite(b)) throw InvalidArgument("power multi-index entries must be finite and >= 0");
        nonzero = nonzero || b > 0.0;
    }
    if (!nonzero) throw InvalidArgument("at least one power must be nonzero");
    return integrate_counts(cs, windows, region, opts, [&](std::span<const int> counts) {
        double v = 1.0;
        for (std::size_t i = 0; i < counts.size(); ++i) v *= std::pow(static_cast<double>(counts[i]), beta.beta[i]);
        return v;
    });
}

void write_moment_csv(std::ostream& os, std::span<const MomentEstimate> rows) {
    os << "t,estimate,scaled_estimate\n";
    for (const auto& m : rows)
        os << format_real(m.t) << ',' << format_real(m.estimate) << ',' << format_real(m.scaled_estimate) << '\n';
}

MixedMoment mixed_moment_pair(const CenterSet& cs, const Region& region, std::span<const double> xi_grid, double eps,
                              const QuadratureOptions& opts) {
    return mixed_impl(cs, region, xi_grid, eps, opts, MixedKind::Pair);
}

double mixed_moment_pair(const CenterSet& cs, const Region& region, double xi, double eps,
                         const QuadratureOptions& opts) {
    const double grid[] = {xi};
    return mixed_impl(cs, region, grid, eps, opts, MixedKind::Pair).curve.values.front();
}

MixedMoment mixed_moment_nn(const CenterSet& cs, const Region& region, std::span<const double> xi_grid, double eps,
                            const QuadratureOptions& opts) {
    return mixed_impl(cs, region, xi_grid, eps, opts, MixedKind::Nearest);
}

double mixed_moment_nn(const CenterSet& cs, const Region& region, double xi, double eps,
                       const QuadratureOptions& opts) {
    const double grid[] = {xi};
    return mixed_impl(cs, region, grid, eps, opts, MixedKind::Nearest).curve.values.front();
}

} // namespace gasket
