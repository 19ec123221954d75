#pragma once

#include <span>

#include "shadowpath/region_set.hpp"
#include "shadowpath/search.hpp"
#include "shadowpath/terrain.hpp"

namespace shadowpath {

/// Equal-exposure corridor of a seed path: every region whose own exposure
/// set lies inside the path's exposed set K, so it can be occupied without
/// exposing anything new.
struct Corridor {
    Path seed_path;
    RegionSet exposed;  // K
    RegionSet regions;  // C
    double avg_width = 0.0;
};

/// K = union of E(p) over the path. Throws std::invalid_argument on an empty path.
RegionSet exposed_set(const ExposureField& field, std::span<const RegionId> path);

/// C = { i : E(i) ⊆ K }, equivalently regions sharing no line of sight with
/// anything outside K.
RegionSet corridor(const ExposureField& field, const RegionSet& exposed);

/// |C| / |path|. Throws std::invalid_argument on an empty path.
double average_width(const RegionSet& corridor_regions, std::span<const RegionId> path);

/// Restricts C to regions reachable from the seed path without leaving C.
RegionSet restrict_to_reachable(const TraversabilityGraph& graph, const RegionSet& corridor_regions,
                                std::span<const RegionId> path);

struct CorridorOptions {
    bool reachable_only = false;
};

Corridor build_corridor(const TraversabilityGraph& graph, const ExposureField& field, std::span<const RegionId> path,
                        CorridorOptions options = {});

}  // namespace shadowpath
