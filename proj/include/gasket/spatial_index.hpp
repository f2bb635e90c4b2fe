#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "gasket/geometry.hpp"

namespace gasket {

class CenterSet;

struct Neighbor {
    std::size_t id = 0;
    double dist = 0.0;
};

struct CellCoord {
    std::int64_t x = 0;
    std::int64_t y = 0;
    bool operator==(const CellCoord&) const = default;
};

/// Uniform grid over a point set. The cell of p is floor(p / cell_size)
/// componentwise. All queries are exact; the grid only prunes candidates.
///
/// Nearest-neighbor search walks rings of cells outward. Points far from
/// everything else would need many empty rings, so the index also keeps a
/// chain of coarser grids (each 16x larger) and hands the search over after a
/// few rings.
class GridIndex {
public:
    GridIndex() = default;
    GridIndex(std::span<const Complex> points, double cell_size);

    static GridIndex build(const CenterSet& cs, double cell_size);

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    double cell_size() const { return cell_size_; }
    Complex point(std::size_t id) const { return points_[id]; }
    std::span<const Complex> points() const { return points_; }

    CellCoord cell_of(Complex z) const;
    /// Ids stored in one cell, in increasing order.
    std::span<const std::uint32_t> cell_points(CellCoord c) const;
    std::size_t occupied_cells() const { return cells_.size(); }
    CellCoord min_cell() const { return lo_; }
    CellCoord max_cell() const { return hi_; }

    /// Calls f(id, dist) for every stored point with |point - z| < radius.
    template <class F>
    void for_each_within(Complex z, double radius, F&& f) const;

    /// Number of unordered pairs {p, q}, p != q, with |p - q| < radius.
    std::uint64_t pairs_within(double radius, unsigned threads = 0) const;

    /// Calls f(i, j, dist) for every pair i < j with dist < radius.
    template <class F>
    void for_each_pair_within(double radius, F&& f) const;

    /// Closest other point; ties go to the smaller id. Throws Singleton when
    /// fewer than two points are stored.
    Neighbor nearest_neighbor(std::size_t id) const;
    std::vector<Neighbor> all_nearest_neighbors(unsigned threads = 0) const;

private:
    static std::uint64_t key(std::int64_t x, std::int64_t y) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
               static_cast<std::uint32_t>(y);
    }
    std::optional<Neighbor> ring_search(std::size_t id, std::int64_t max_rings) const;

    std::vector<Complex> points_;
    double cell_size_ = 1.0;
    std::vector<std::uint32_t> order_;
    std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> cells_;
    CellCoord lo_{}, hi_{};
    std::shared_ptr<const GridIndex> coarse_;
};

template <class F>
void GridIndex::for_each_within(Complex z, double radius, F&& f) const {
    if (points_.empty() || !(radius > 0.0)) return;
    const auto x0 = std::max<std::int64_t>(lo_.x, static_cast<std::int64_t>(std::floor((z.real() - radius) / cell_size_)));
    const auto x1 = std::min<std::int64_t>(hi_.x, static_cast<std::int64_t>(std::floor((z.real() + radius) / cell_size_)));
    const auto y0 = std::max<std::int64_t>(lo_.y, static_cast<std::int64_t>(std::floor((z.imag() - radius) / cell_size_)));
    const auto y1 = std::min<std::int64_t>(hi_.y, static_cast<std::int64_t>(std::floor((z.imag() + radius) / cell_size_)));
    for (std::int64_t cx = x0; cx <= x1; ++cx)
        for (std::int64_t cy = y0; cy <= y1; ++cy)
            for (std::uint32_t id : cell_points({cx, cy})) {
                const double d = std::abs(points_[id] - z);
                if (d < radius) f(static_cast<std::size_t>(id), d);
            }
}

template <class F>
void GridIndex::for_each_pair_within(double radius, F&& f) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
        for_each_within(points_[i], radius, [&](std::size_t j, double d) {
            if (j > i) f(i, j, d);
        });
}

} // namespace gasket
