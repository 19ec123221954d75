#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "shadowpath/region_set.hpp"

namespace shadowpath {

using RegionId = std::uint32_t;

enum class Connectivity : std::uint8_t { Four = 4, Eight = 8 };

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// 3D Manhattan distance between two representative points.
inline double manhattan(const Point3& a, const Point3& b) {
    auto abs = [](double v) { return v < 0 ? -v : v; };
    return abs(a.x - b.x) + abs(a.y - b.y) + abs(a.z - b.z);
}

/// Row-major grid of per-cell surface heights. Row 0 is the northern edge.
struct Heightmap {
    std::size_t width = 0;
    std::size_t height = 0;
    double cell_size = 1.0;
    std::vector<double> elevations;

    Heightmap() = default;
    Heightmap(std::size_t w, std::size_t h, double cell, double fill = 0.0)
        : width(w), height(h), cell_size(cell), elevations(w * h, fill) {}

    /// Builds from explicit rows; throws std::invalid_argument on empty or ragged input.
    static Heightmap from_rows(const std::vector<std::vector<double>>& rows, double cell_size = 1.0);

    double& at(std::size_t row, std::size_t col) { return elevations[row * width + col]; }
    double at(std::size_t row, std::size_t col) const { return elevations[row * width + col]; }

    friend bool operator==(const Heightmap&, const Heightmap&) = default;
};

struct EnvironmentParams {
    double d = 1.0;
    double max_step = std::numeric_limits<double>::infinity();
    Connectivity connectivity = Connectivity::Four;
};

/// Symmetric traversability relation plus the representative point of every
/// region. Planners only see this and the exposure field, so hand-built
/// graphs can be searched the same way as terrain grids.
class TraversabilityGraph {
public:
    TraversabilityGraph() = default;

    /// `adjacency[i]` lists the regions reachable from i in one move. The
    /// relation must be symmetric and irreflexive; throws std::invalid_argument otherwise.
    TraversabilityGraph(std::vector<Point3> points, const std::vector<std::vector<RegionId>>& adjacency,
                        double cell_size, Connectivity connectivity);

    std::size_t size() const { return points_.size(); }
    std::span<const RegionId> neighbors(RegionId r) const {
        return {targets_.data() + offsets_[r], targets_.data() + offsets_[r + 1]};
    }
    bool adjacent(RegionId a, RegionId b) const;
    const Point3& point(RegionId r) const { return points_[r]; }
    std::span<const Point3> points() const { return points_; }
    double cell_size() const { return cell_size_; }
    Connectivity connectivity() const { return connectivity_; }

    /// Lower bound on the number of moves between two regions: planar
    /// Manhattan distance in cell units for 4-connectivity, Chebyshev for 8.
    double step_lower_bound(RegionId a, RegionId b) const;

    /// Regions reachable from `start` (including itself).
    RegionSet reachable_from(RegionId start) const;

private:
    std::vector<Point3> points_;
    std::vector<std::size_t> offsets_{0};
    std::vector<RegionId> targets_;
    double cell_size_ = 1.0;
    Connectivity connectivity_ = Connectivity::Four;
};

/// Discretized terrain: one region per heightmap cell, each with a
/// representative point at the cell center raised `d` above the cell's
/// surface height.
class GridEnvironment {
public:
    GridEnvironment(Heightmap heights, EnvironmentParams params = {});

    std::size_t width() const { return heights_.width; }
    std::size_t height() const { return heights_.height; }
    std::size_t size() const { return heights_.elevations.size(); }
    double cell_size() const { return heights_.cell_size; }
    double offset() const { return params_.d; }
    double max_step() const { return params_.max_step; }
    Connectivity connectivity() const { return params_.connectivity; }
    const EnvironmentParams& params() const { return params_; }
    const Heightmap& heightmap() const { return heights_; }

    RegionId index(std::size_t row, std::size_t col) const { return static_cast<RegionId>(row * width() + col); }
    std::size_t row(RegionId r) const { return r / width(); }
    std::size_t col(RegionId r) const { return r % width(); }

    double elevation(RegionId r) const { return heights_.elevations[r]; }
    const Point3& point(RegionId r) const { return graph_.point(r); }

    /// Throws std::out_of_range for invalid indices.
    bool line_of_sight(RegionId a, RegionId b) const;
    bool traversable(RegionId a, RegionId b) const;

    const TraversabilityGraph& graph() const { return graph_; }

private:
    void check(RegionId r) const;
    bool grid_adjacent(RegionId a, RegionId b) const;
    bool visible_unchecked(RegionId a, RegionId b) const;

    Heightmap heights_;
    EnvironmentParams params_;
    TraversabilityGraph graph_;

    friend class ExposureField;
};

/// Reflexive, symmetric visibility relation between regions, stored as one
/// bitset row per region. Immutable once built.
class ExposureField {
public:
    ExposureField() = default;

    /// Validates reflexivity and symmetry; throws std::invalid_argument on violation.
    explicit ExposureField(std::vector<RegionSet> rows);

    /// All-pairs line of sight. Each unordered pair is evaluated once and
    /// mirrored. `workers == 0` picks the hardware concurrency.
    static ExposureField compute(const GridEnvironment& env, unsigned workers = 0);

    std::size_t size() const { return rows_.size(); }
    const RegionSet& exposure_set(RegionId x) const;
    bool visible(RegionId a, RegionId b) const { return rows_[a].test(b); }
    std::size_t exposure_count(RegionId x) const { return counts_[x]; }

    /// Fraction of the environment visible from x, in [1/n, 1].
    double exposure_score(RegionId x) const;
    double min_exposure_score() const { return min_score_; }

    friend bool operator==(const ExposureField& a, const ExposureField& b) { return a.rows_ == b.rows_; }

private:
    void finalize();

    std::vector<RegionSet> rows_;
    std::vector<std::size_t> counts_;
    double min_score_ = 1.0;
};

}  // namespace shadowpath
