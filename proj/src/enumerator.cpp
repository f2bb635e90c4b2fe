#include "gasket/enumerator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <utility>

#include <Eigen/Dense>

#include "gasket/csv.hpp"

namespace gasket {

namespace {

bool point_order(const CenterPoint& a, const CenterPoint& b) {
    if (a.curvature != b.curvature) return a.curvature < b.curvature;
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
}

} // namespace

CenterSet::CenterSet(std::vector<CenterPoint> points, double t, DescartesQuadruple root)
    : points_(std::move(points)), t_(t), scale_(std::exp(t)), root_(root) {
    std::sort(points_.begin(), points_.end(), point_order);
}

std::vector<Complex> CenterSet::centers() const {
    std::vector<Complex> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.center);
    return out;
}

CenterSet CenterSet::truncated(double t2) const {
    if (t2 > t_) throw InvalidArgument("cannot truncate a center set to a larger t");
    const double bound = std::exp(t2);
    std::vector<CenterPoint> kept;
    for (const auto& p : points_)
        if (p.curvature < bound) kept.push_back(p);
    return CenterSet(std::move(kept), t2, root_);
}

EnumerationStats walk_gasket(const DescartesQuadruple& root, double t, const std::function<void(const Circle&)>& emit,
                             const QuadrupleVisitor& visit, const EnumerationOptions& opts) {
    if (!(t >= 0.0)) throw InvalidArgument("threshold exponent t must be >= 0");
    const auto start = std::chrono::steady_clock::now();
    const double bound = std::exp(t);

    EnumerationStats stats;
    auto push_circle = [&](const Circle& c) {
        if (++stats.circles_emitted > opts.capacity_limit)
            throw CapacityExceeded("enumeration passed the capacity limit of " + std::to_string(opts.capacity_limit) +
                                   " circles");
        emit(c);
    };

    for (const auto& c : root.circles)
        if (c.curvature < bound) push_circle(c);
    if (visit) visit(root, 0);

    struct Node {
        DescartesQuadruple q;
        std::size_t depth;
    };
    std::vector<Node> stack;
    for (int i = 3; i >= 0; --i) {
        DescartesQuadruple child = reflect(root, i);
        if (child.circles[i].curvature < bound) stack.push_back({child, 1});
    }

    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        push_circle(node.q.circles[*node.q.last_swapped]);
        if (visit) visit(node.q, node.depth);
        stats.max_tree_depth = std::max(stats.max_tree_depth, node.depth);
        for (int i = 3; i >= 0; --i) {
            if (i == *node.q.last_swapped) continue;
            DescartesQuadruple child = reflect(node.q, i);
            if (child.circles[i].curvature < bound) stack.push_back({child, node.depth + 1});
        }
    }

    stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return stats;
}

CenterSet enumerate(const DescartesQuadruple& root, double t, const EnumerationOptions& opts, EnumerationStats* stats) {
    std::vector<CenterPoint> points;
    auto s = walk_gasket(
        root, t, [&](const Circle& c) { points.push_back({c.center, c.radius(), c.curvature}); }, {}, opts);
    CenterSet out(std::move(points), t, root);
    if (stats) *stats = s;
    return out;
}

std::vector<GrowthPoint> count_growth(const DescartesQuadruple& root, std::span<const double> t_grid,
                                      const EnumerationOptions& opts) {
    if (t_grid.empty()) return {};
    if (!std::is_sorted(t_grid.begin(), t_grid.end()) ||
        std::adjacent_find(t_grid.begin(), t_grid.end()) != t_grid.end())
        throw InvalidArgument("t grid must be strictly increasing");

    std::vector<double> curvatures;
    walk_gasket(root, t_grid.back(), [&](const Circle& c) { curvatures.push_back(c.curvature); }, {}, opts);
    std::sort(curvatures.begin(), curvatures.end());

    std::vector<GrowthPoint> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        const double bound = std::exp(t);
        const auto n = std::lower_bound(curvatures.begin(), curvatures.end(), bound) - curvatures.begin();
        out.push_back({t, static_cast<std::size_t>(n)});
    }
    return out;
}

std::optional<double> fit_growth_exponent(std::span<const GrowthPoint> growth, double t_lo, double t_hi) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& g : growth)
        if (g.t >= t_lo && g.t <= t_hi && g.count > 0) pts.emplace_back(g.t, std::log(static_cast<double>(g.count)));
    if (pts.size() < 2) return std::nullopt;

    Eigen::MatrixXd design(pts.size(), 2);
    Eigen::VectorXd rhs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        design(i, 0) = pts[i].first;
        design(i, 1) = 1.0;
        rhs(i) = pts[i].second;
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
    return coef(0);
}

void write_center_csv(std::ostream& os, const CenterSet& cs) {
    os << "curvature,center_re,center_im,radius\n";
    for (const auto& p : cs.points())
        os << format_real(p.curvature) << ',' << format_real(p.center.real()) << ','
           << format_real(p.center.imag()) << ',' << format_real(p.radius) << '\n';
}

} // namespace gasket
