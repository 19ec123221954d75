#include "shadowpath/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace shadowpath {

Heightmap Heightmap::from_rows(const std::vector<std::vector<double>>& rows, double cell_size) {
    if (rows.empty() || rows.front().empty()) throw std::invalid_argument("heightmap: elevation array is empty");
    Heightmap hm(rows.front().size(), rows.size(), cell_size);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != hm.width)
            throw std::invalid_argument("heightmap: row " + std::to_string(r) + " has " +
                                        std::to_string(rows[r].size()) + " values, expected " +
                                        std::to_string(hm.width));
        std::copy(rows[r].begin(), rows[r].end(), hm.elevations.begin() + static_cast<std::ptrdiff_t>(r * hm.width));
    }
    return hm;
}

// ---------------------------------------------------------------------------
// TraversabilityGraph

TraversabilityGraph::TraversabilityGraph(std::vector<Point3> points, const std::vector<std::vector<RegionId>>& adjacency,
                                         double cell_size, Connectivity connectivity)
    : points_(std::move(points)), cell_size_(cell_size), connectivity_(connectivity) {
    if (adjacency.size() != points_.size())
        throw std::invalid_argument("traversability: adjacency size does not match region count");
    if (!(cell_size > 0.0)) throw std::invalid_argument("traversability: cell_size must be positive");
    const auto n = points_.size();
    offsets_.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        auto nbrs = adjacency[i];
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        for (auto j : nbrs) {
            if (j >= n) throw std::invalid_argument("traversability: neighbor index out of range");
            if (j == i) throw std::invalid_argument("traversability: region listed as its own neighbor");
        }
        targets_.insert(targets_.end(), nbrs.begin(), nbrs.end());
        offsets_.push_back(targets_.size());
    }
    for (RegionId i = 0; i < n; ++i)
        for (auto j : neighbors(i))
            if (!adjacent(j, i)) throw std::invalid_argument("traversability: relation is not symmetric");
}

bool TraversabilityGraph::adjacent(RegionId a, RegionId b) const {
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

double TraversabilityGraph::step_lower_bound(RegionId a, RegionId b) const {
    const double dx = std::abs(points_[a].x - points_[b].x) / cell_size_;
    const double dy = std::abs(points_[a].y - points_[b].y) / cell_size_;
    return connectivity_ == Connectivity::Four ? dx + dy : std::max(dx, dy);
}

RegionSet TraversabilityGraph::reachable_from(RegionId start) const {
    RegionSet seen(size());
    std::vector<RegionId> stack{start};
    seen.set(start);
    while (!stack.empty()) {
        const auto r = stack.back();
        stack.pop_back();
        for (auto nb : neighbors(r)) {
            if (!seen.test(nb)) {
                seen.set(nb);
                stack.push_back(nb);
            }
        }
    }
    return seen;
}

// ---------------------------------------------------------------------------
// GridEnvironment

GridEnvironment::GridEnvironment(Heightmap heights, EnvironmentParams params)
    : heights_(std::move(heights)), params_(params) {
    if (heights_.width == 0 || heights_.height == 0) throw std::invalid_argument("environment: empty grid");
    if (heights_.elevations.size() != heights_.width * heights_.height)
        throw std::invalid_argument("environment: elevation count does not match width x height");
    if (!(heights_.cell_size > 0.0) || !std::isfinite(heights_.cell_size))
        throw std::invalid_argument("environment: cell_size must be positive and finite");
    if (!(params_.d >= 0.0) || !std::isfinite(params_.d))
        throw std::invalid_argument("environment: offset d must be non-negative and finite");
    if (!(params_.max_step >= 0.0)) throw std::invalid_argument("environment: max_step must be non-negative");
    for (double e : heights_.elevations)
        if (!std::isfinite(e)) throw std::invalid_argument("environment: elevations must be finite");

    const auto n = size();
    const double cs = heights_.cell_size;
    std::vector<Point3> points(n);
    for (RegionId r = 0; r < n; ++r)
        points[r] = {(static_cast<double>(col(r)) + 0.5) * cs, (static_cast<double>(row(r)) + 0.5) * cs,
                     heights_.elevations[r] + params_.d};

    std::vector<std::vector<RegionId>> adjacency(n);
    const bool eight = params_.connectivity == Connectivity::Eight;
    for (std::size_t r = 0; r < height(); ++r) {
        for (std::size_t c = 0; c < width(); ++c) {
            const auto a = index(r, c);
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    if (!eight && dr != 0 && dc != 0) continue;
                    const auto nr = static_cast<std::ptrdiff_t>(r) + dr;
                    const auto nc = static_cast<std::ptrdiff_t>(c) + dc;
                    if (nr < 0 || nc < 0 || nr >= static_cast<std::ptrdiff_t>(height()) ||
                        nc >= static_cast<std::ptrdiff_t>(width()))
                        continue;
                    const auto b = index(static_cast<std::size_t>(nr), static_cast<std::size_t>(nc));
                    if (std::abs(elevation(a) - elevation(b)) <= params_.max_step) adjacency[a].push_back(b);
                }
            }
        }
    }
    graph_ = TraversabilityGraph(std::move(points), adjacency, cs, params_.connectivity);
}

void GridEnvironment::check(RegionId r) const {
    if (r >= size()) throw std::out_of_range("region index " + std::to_string(r) + " out of range");
}

bool GridEnvironment::grid_adjacent(RegionId a, RegionId b) const {
    const auto dr = std::abs(static_cast<long>(row(a)) - static_cast<long>(row(b)));
    const auto dc = std::abs(static_cast<long>(col(a)) - static_cast<long>(col(b)));
    if (params_.connectivity == Connectivity::Four) return dr + dc == 1;
    return std::max(dr, dc) == 1;
}

bool GridEnvironment::traversable(RegionId a, RegionId b) const {
    check(a);
    check(b);
    return grid_adjacent(a, b) && std::abs(elevation(a) - elevation(b)) <= params_.max_step;
}

bool GridEnvironment::line_of_sight(RegionId a, RegionId b) const {
    check(a);
    check(b);
    return visible_unchecked(a, b);
}

// The ray is always walked from the lower index to the higher one so the
// answer is symmetric even where samples land exactly on cell boundaries.
bool GridEnvironment::visible_unchecked(RegionId a, RegionId b) const {
    if (a == b) return true;
    const RegionId lo = std::min(a, b);
    const RegionId hi = std::max(a, b);
    const Point3& p = point(lo);
    const Point3& q = point(hi);
    const double dx = q.x - p.x;
    const double dy = q.y - p.y;
    const double dz = q.z - p.z;
    const double dist = std::hypot(dx, dy);
    const double cs = heights_.cell_size;
    const double step = cs / 4.0;
    const auto samples = static_cast<long>(std::ceil(dist / step)) - 1;
    const auto max_col = static_cast<long>(width()) - 1;
    const auto max_row = static_cast<long>(height()) - 1;
    for (long k = 1; k <= samples; ++k) {
        const double t = static_cast<double>(k) * step / dist;
        const long c = std::clamp(static_cast<long>(std::floor((p.x + t * dx) / cs)), 0L, max_col);
        const long r = std::clamp(static_cast<long>(std::floor((p.y + t * dy) / cs)), 0L, max_row);
        const auto cell = index(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        if (cell == lo || cell == hi) continue;
        if (elevation(cell) > p.z + t * dz) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// ExposureField

ExposureField::ExposureField(std::vector<RegionSet> rows) : rows_(std::move(rows)) {
    const auto n = rows_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (rows_[i].size() != n) throw std::invalid_argument("exposure field: row length does not match region count");
        if (!rows_[i].test(i))
            throw std::invalid_argument("exposure field: region " + std::to_string(i) + " is not exposed to itself");
    }
    for (std::size_t i = 0; i < n; ++i) {
        bool ok = true;
        rows_[i].for_each([&](std::size_t j) { ok = ok && rows_[j].test(i); });
        if (!ok) throw std::invalid_argument("exposure field: relation is not symmetric at row " + std::to_string(i));
    }
    finalize();
}

void ExposureField::finalize() {
    const auto n = rows_.size();
    counts_.resize(n);
    std::size_t min_count = n;
    for (std::size_t i = 0; i < n; ++i) {
        counts_[i] = rows_[i].count();
        min_count = std::min(min_count, counts_[i]);
    }
    min_score_ = n == 0 ? 1.0 : static_cast<double>(min_count) / static_cast<double>(n);
}

ExposureField ExposureField::compute(const GridEnvironment& env, unsigned workers) {
    const auto n = env.size();
    if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));

    std::vector<RegionSet> rows(n, RegionSet(n));
    // Worker w owns every row a with a % workers == w and fills only the
    // upper triangle of those rows, so no two workers touch the same word.
    auto fill = [&](unsigned w) {
        for (std::size_t a = w; a < n; a += workers) {
            auto& row = rows[a];
            row.set(a);
            for (std::size_t b = a + 1; b < n; ++b)
                if (env.visible_unchecked(static_cast<RegionId>(a), static_cast<RegionId>(b))) row.set(b);
        }
    };
    if (workers == 1) {
        fill(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(fill, w);
    }
    for (std::size_t a = 0; a < n; ++a) {
        rows[a].for_each([&](std::size_t b) {
            if (b > a) rows[b].set(a);
        });
    }

    ExposureField field;
    field.rows_ = std::move(rows);
    field.finalize();
    return field;
}

const RegionSet& ExposureField::exposure_set(RegionId x) const {
    if (x >= rows_.size()) throw std::out_of_range("region index " + std::to_string(x) + " out of range");
    return rows_[x];
}

double ExposureField::exposure_score(RegionId x) const {
    return static_cast<double>(exposure_set(x).count()) / static_cast<double>(rows_.size());
}

}  // namespace shadowpath
