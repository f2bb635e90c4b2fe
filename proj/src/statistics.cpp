#include "gasket/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "gasket/csv.hpp"
#include "gasket/parallel.hpp"

namespace gasket {

namespace {

std::vector<std::size_t> ids_in_region(const CenterSet& cs, const Region& region) {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (region.contains(cs[i].center)) ids.push_back(i);
    return ids;
}

// Fraction of sorted samples strictly below each grid value.
Curve below_fraction(std::vector<double> samples, std::span<const double> xi_grid, double denom) {
    std::sort(samples.begin(), samples.end());
    Curve c;
    c.xi.assign(xi_grid.begin(), xi_grid.end());
    c.values.reserve(xi_grid.size());
    for (double xi : xi_grid) {
        const auto below = std::lower_bound(samples.begin(), samples.end(), xi) - samples.begin();
        c.values.push_back(static_cast<double>(below) / denom);
    }
    return c;
}

void check_grid(std::span<const double> xi_grid) {
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        if (!(xi_grid[i] >= 0.0) || !std::isfinite(xi_grid[i])) throw InvalidArgument("xi values must be finite and >= 0");
        if (i > 0 && !(xi_grid[i] > xi_grid[i - 1])) throw InvalidArgument("xi grid must be strictly increasing");
    }
}

} // namespace

std::vector<double> make_xi_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw InvalidArgument("xi grid needs step > 0 and hi >= lo");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) grid[k] = lo + static_cast<double>(k) * step;
    return grid;
}

void write_curve_csv(std::ostream& os, const Curve& c) {
    os << "xi,value\n";
    for (std::size_t i = 0; i < c.size(); ++i) os << format_real(c.xi[i]) << ',' << format_real(c.values[i]) << '\n';
}

Curve read_curve_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "xi,value") throw InvalidArgument("curve CSV must start with 'xi,value'");
    Curve c;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto v = parse_real_list(line);
        if (v.size() != 2) throw InvalidArgument("curve CSV rows need two columns");
        c.xi.push_back(v[0]);
        c.values.push_back(v[1]);
    }
    return c;
}

double sup_distance(const Curve& a, const Curve& b, double lo, double hi) {
    double worst = 0.0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.xi[i] < lo || a.xi[i] > hi) continue;
        while (j < b.size() && b.xi[j] < a.xi[i] - 1e-12) ++j;
        if (j < b.size() && std::abs(b.xi[j] - a.xi[i]) <= 1e-12)
            worst = std::max(worst, std::abs(a.values[i] - b.values[j]));
    }
    return worst;
}

std::size_t count_in_region(const CenterSet& cs, const Region& region) {
    std::size_t n = 0;
    for (const auto& p : cs.points()) n += region.contains(p.center);
    return n;
}

Curve pair_correlation(const CenterSet& cs, const Region& region, std::span<const double> xi_grid,
                       const StatOptions& opts) {
    check_grid(xi_grid);
    const auto ids = ids_in_region(cs, region);
    if (ids.empty()) throw EmptyRegion("no centers of C_t lie in the region");
    if (xi_grid.empty()) return {};

    const double xi_max = xi_grid.back();
    const double scale = cs.scale();
    std::vector<Complex> pts;
    pts.reserve(ids.size());
    for (auto i : ids) pts.push_back(cs[i].center);

    std::vector<double> scaled;
    const double radius = xi_max / scale * (1.0 + 1e-9);
    if (radius > 0.0 && pts.size() > 1) {
        const GridIndex index(pts, radius);
        constexpr std::size_t chunk = 4096;
        std::vector<std::vector<double>> partial(chunk_count(pts.size(), chunk));
        parallel_chunks(pts.size(), chunk, opts.threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
            auto& out = partial[c];
            for (std::size_t i = begin; i < end; ++i)
                index.for_each_within(pts[i], radius, [&](std::size_t j, double d) {
                    if (j > i && d * scale < xi_max) out.push_back(d * scale);
                });
        });
        for (auto& p : partial) scaled.insert(scaled.end(), p.begin(), p.end());
    }
    return below_fraction(std::move(scaled), xi_grid, static_cast<double>(ids.size()));
}

Curve nn_spacing(const CenterSet& cs, const Region& region, std::span<const double> xi_grid, const StatOptions& opts) {
    check_grid(xi_grid);
    if (cs.size() < 2) throw Singleton("nearest-neighbor spacing needs at least two centers");
    const auto ids = ids_in_region(cs, region);
    if (ids.empty()) throw EmptyRegion("no centers of C_t lie in the region");

    const double scale = cs.scale();
    const auto centers = cs.centers();
    const GridIndex index(centers, 4.0 / scale);
    std::vector<double> scaled(ids.size());
    parallel_chunks(ids.size(), 2048, opts.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) scaled[k] = index.nearest_neighbor(ids[k]).dist * scale;
    });
    return below_fraction(std::move(scaled), xi_grid, static_cast<double>(ids.size()));
}

Curve empirical_derivative(const Curve& curve, double step) {
    if (!(step > 0.0)) throw GridMismatch("derivative step must be positive");
    if (curve.size() < 2 || curve.values.size() != curve.size()) throw GridMismatch("curve too short for a derivative");
    const double spacing = curve.xi[1] - curve.xi[0];
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (std::abs((curve.xi[i] - curve.xi[i - 1]) - spacing) > 1e-9 * std::max(1.0, spacing))
            throw GridMismatch("derivative needs a uniform xi grid");
    const double half = step / (2.0 * spacing);
    const double k_real = std::round(half);
    if (k_real < 1.0 || std::abs(half - k_real) > 1e-6) throw GridMismatch("step/2 must be a multiple of the grid spacing");
    const auto k = static_cast<std::size_t>(k_real);

    Curve out;
    for (std::size_t i = k; i + k < curve.size(); ++i) {
        out.xi.push_back(curve.xi[i]);
        out.values.push_back((curve.values[i + k] - curve.values[i - k]) / step);
    }
    return out;
}

std::size_t window_count(const CenterSet& cs, const Window& w, Complex z) {
    const double scale = cs.scale();
    std::size_t n = 0;
    for (const auto& p : cs.points()) n += w.contains((p.center - z) * scale);
    return n;
}

WindowCounter::WindowCounter(const CenterSet& cs, double max_reach)
    : scale_(cs.scale()), radius_(max_reach / cs.scale() * (1.0 + 1e-9)) {
    if (!(max_reach > 0.0)) throw InvalidArgument("window reach must be positive");
    const auto centers = cs.centers();
    index_ = GridIndex(centers, radius_);
}

std::size_t WindowCounter::count(const Window& w, Complex z) const {
    if (w.reach() / scale_ > radius_) throw InvalidArgument("window is larger than the counter's reach");
    std::size_t n = 0;
    index_.for_each_within(z, radius_, [&](std::size_t id, double) { n += w.contains((index_.point(id) - z) * scale_); });
    return n;
}

void WindowCounter::count_all(std::span<const Window> windows, Complex z, std::span<int> counts) const {
    std::fill(counts.begin(), counts.end(), 0);
    index_.for_each_within(z, radius_, [&](std::size_t id, double) {
        const Complex w = (index_.point(id) - z) * scale_;
        for (std::size_t i = 0; i < windows.size(); ++i) counts[i] += windows[i].contains(w);
    });
}

} // namespace gasket
