#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "gasket/geometry.hpp"

namespace gasket {

struct CenterPoint {
    Complex center;
    double radius = 0.0;
    double curvature = 0.0;
};

/// Centers of every gasket circle with signed curvature below e^t, sorted by
/// curvature and then lexicographically by center.
///
/// The bounding circle (negative curvature) is always present. Its interior
/// contains every other circle, so the disjointness invariants below only
/// concern the inner circles.
class CenterSet {
public:
    CenterSet() = default;
    CenterSet(std::vector<CenterPoint> points, double t, DescartesQuadruple root);

    const std::vector<CenterPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const CenterPoint& operator[](std::size_t i) const { return points_[i]; }

    double t() const { return t_; }
    /// e^t, the factor that rescales distances.
    double scale() const { return scale_; }
    const DescartesQuadruple& root() const { return root_; }

    std::vector<Complex> centers() const;

    /// Subset with curvature below e^t2 (t2 <= t), preserving order.
    CenterSet truncated(double t2) const;

private:
    std::vector<CenterPoint> points_;
    double t_ = 0.0;
    double scale_ = 1.0;
    DescartesQuadruple root_;
};

struct EnumerationStats {
    std::size_t circles_emitted = 0;
    std::size_t max_tree_depth = 0;
    double wall_time = 0.0;
};

struct EnumerationOptions {
    std::size_t capacity_limit = 50'000'000;
};

/// Called once per quadruple visited by the tree walk (the root included),
/// with its depth below the root.
using QuadrupleVisitor = std::function<void(const DescartesQuadruple&, std::size_t depth)>;

/// Pruned reflection-tree walk over all circles with curvature < e^t.
/// Every circle is reported exactly once through `emit`; `visit` (optional)
/// sees every quadruple whose new circle passed the threshold.
EnumerationStats walk_gasket(const DescartesQuadruple& root, double t,
                             const std::function<void(const Circle&)>& emit,
                             const QuadrupleVisitor& visit = {}, const EnumerationOptions& opts = {});

CenterSet enumerate(const DescartesQuadruple& root, double t, const EnumerationOptions& opts = {},
                    EnumerationStats* stats = nullptr);

struct GrowthPoint {
    double t = 0.0;
    std::size_t count = 0;
};

/// N(C, t) for every t of an increasing grid, from a single pass at the largest t.
std::vector<GrowthPoint> count_growth(const DescartesQuadruple& root, std::span<const double> t_grid,
                                      const EnumerationOptions& opts = {});

/// Least-squares slope of log N against t over the points with t in [t_lo, t_hi].
/// Returns nullopt with fewer than two usable points.
std::optional<double> fit_growth_exponent(std::span<const GrowthPoint> growth, double t_lo, double t_hi);

/// CSV with header `curvature,center_re,center_im,radius`.
void write_center_csv(std::ostream& os, const CenterSet& cs);

} // namespace gasket
