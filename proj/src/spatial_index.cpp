#include "gasket/spatial_index.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "gasket/enumerator.hpp"
#include "gasket/parallel.hpp"

namespace gasket {

namespace {

constexpr std::int64_t kFineRings = 6;
constexpr double kCoarsening = 16.0;
constexpr std::size_t kTopLevelCells = 64;
constexpr double kCoordLimit = 1e15;

} // namespace

GridIndex::GridIndex(std::span<const Complex> points, double cell_size)
    : points_(points.begin(), points.end()), cell_size_(cell_size) {
    if (!(cell_size > 0.0) || !std::isfinite(cell_size)) throw InvalidArgument("cell size must be positive");
    if (points_.size() >= std::numeric_limits<std::uint32_t>::max()) throw InvalidArgument("too many points for index");
    if (points_.empty()) return;

    std::vector<std::uint64_t> keys(points_.size());
    lo_ = {std::numeric_limits<std::int64_t>::max(), std::numeric_limits<std::int64_t>::max()};
    hi_ = {std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::min()};
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double fx = std::floor(points_[i].real() / cell_size_), fy = std::floor(points_[i].imag() / cell_size_);
        if (!(std::abs(fx) < 2e9) || !(std::abs(fy) < 2e9) || !(std::abs(points_[i].real()) < kCoordLimit))
            throw InvalidArgument("point out of range for grid index at this cell size");
        const CellCoord c{static_cast<std::int64_t>(fx), static_cast<std::int64_t>(fy)};
        keys[i] = key(c.x, c.y);
        lo_ = {std::min(lo_.x, c.x), std::min(lo_.y, c.y)};
        hi_ = {std::max(hi_.x, c.x), std::max(hi_.y, c.y)};
    }

    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    std::stable_sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
    std::uint32_t begin = 0;
    for (std::uint32_t i = 1; i <= order_.size(); ++i) {
        if (i == order_.size() || keys[order_[i]] != keys[order_[begin]]) {
            cells_.emplace(keys[order_[begin]], std::make_pair(begin, i));
            begin = i;
        }
    }

    if (cells_.size() > kTopLevelCells) coarse_ = std::make_shared<GridIndex>(points, cell_size * kCoarsening);
}

GridIndex GridIndex::build(const CenterSet& cs, double cell_size) {
    const auto centers = cs.centers();
    return GridIndex(centers, cell_size);
}

CellCoord GridIndex::cell_of(Complex z) const {
    return {static_cast<std::int64_t>(std::floor(z.real() / cell_size_)),
            static_cast<std::int64_t>(std::floor(z.imag() / cell_size_))};
}

std::span<const std::uint32_t> GridIndex::cell_points(CellCoord c) const {
    const auto it = cells_.find(key(c.x, c.y));
    if (it == cells_.end()) return {};
    return std::span<const std::uint32_t>(order_).subspan(it->second.first, it->second.second - it->second.first);
}

std::uint64_t GridIndex::pairs_within(double radius, unsigned threads) const {
    constexpr std::size_t chunk = 4096;
    std::vector<std::uint64_t> partial(chunk_count(points_.size(), chunk), 0);
    parallel_chunks(points_.size(), chunk, threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
        std::uint64_t n = 0;
        for (std::size_t i = begin; i < end; ++i)
            for_each_within(points_[i], radius, [&](std::size_t j, double) { n += j > i; });
        partial[c] = n;
    });
    return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

std::optional<Neighbor> GridIndex::ring_search(std::size_t id, std::int64_t max_rings) const {
    const Complex p = points_[id];
    const CellCoord home = cell_of(p);
    const std::int64_t extent = std::max({home.x - lo_.x, hi_.x - home.x, home.y - lo_.y, hi_.y - home.y});

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_id = 0;
    auto consider_cell = [&](std::int64_t cx, std::int64_t cy) {
        for (std::uint32_t j : cell_points({cx, cy})) {
            if (j == id) continue;
            const double d = std::abs(points_[j] - p);
            if (d < best || (d == best && j < best_id)) {
                best = d;
                best_id = j;
            }
        }
    };

    for (std::int64_t k = 0; k <= extent; ++k) {
        // Every point in ring k is at least (k - 1) cells away.
        if (k > 0 && static_cast<double>(k - 1) * cell_size_ > best) break;
        if (k > max_rings) return std::nullopt;
        if (k == 0) {
            consider_cell(home.x, home.y);
            continue;
        }
        for (std::int64_t dx = -k; dx <= k; ++dx) {
            consider_cell(home.x + dx, home.y - k);
            consider_cell(home.x + dx, home.y + k);
        }
        for (std::int64_t dy = -k + 1; dy <= k - 1; ++dy) {
            consider_cell(home.x - k, home.y + dy);
            consider_cell(home.x + k, home.y + dy);
        }
    }
    return Neighbor{best_id, best};
}

Neighbor GridIndex::nearest_neighbor(std::size_t id) const {
    if (points_.size() < 2) throw Singleton("nearest neighbor needs at least two points");
    if (id >= points_.size()) throw InvalidArgument("point id out of range");
    for (const GridIndex* level = this; level; level = level->coarse_.get()) {
        const std::int64_t rings = level->coarse_ ? kFineRings : std::numeric_limits<std::int64_t>::max();
        if (auto hit = level->ring_search(id, rings)) return *hit;
    }
    return {};  // unreachable: the top level searches without a ring limit
}

std::vector<Neighbor> GridIndex::all_nearest_neighbors(unsigned threads) const {
    if (points_.size() < 2) throw Singleton("nearest neighbor needs at least two points");
    std::vector<Neighbor> out(points_.size());
    parallel_chunks(points_.size(), 2048, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) out[i] = nearest_neighbor(i);
    });
    return out;
}

} // namespace gasket
