#include "shadowpath/corridor.hpp"

#include <stdexcept>
#include <vector>

namespace shadowpath {

RegionSet exposed_set(const ExposureField& field, std::span<const RegionId> path) {
    return path_exposure(field, path);
}

RegionSet corridor(const ExposureField& field, const RegionSet& exposed) {
    if (exposed.size() != field.size()) throw std::invalid_argument("corridor: K has wrong length");
    RegionSet c(field.size());
    for (RegionId i = 0; i < field.size(); ++i)
        if (field.exposure_set(i).is_subset_of(exposed)) c.set(i);
    return c;
}

double average_width(const RegionSet& corridor_regions, std::span<const RegionId> path) {
    if (path.empty()) throw std::invalid_argument("average_width: path is empty");
    return static_cast<double>(corridor_regions.count()) / static_cast<double>(path.size());
}

RegionSet restrict_to_reachable(const TraversabilityGraph& graph, const RegionSet& corridor_regions,
                                std::span<const RegionId> path) {
    RegionSet out(corridor_regions.size());
    std::vector<RegionId> stack;
    for (auto p : path) {
        if (corridor_regions.test(p) && !out.test(p)) {
            out.set(p);
            stack.push_back(p);
        }
    }
    while (!stack.empty()) {
        const auto r = stack.back();
        stack.pop_back();
        for (auto nb : graph.neighbors(r)) {
            if (corridor_regions.test(nb) && !out.test(nb)) {
                out.set(nb);
                stack.push_back(nb);
            }
        }
    }
    return out;
}

Corridor build_corridor(const TraversabilityGraph& graph, const ExposureField& field, std::span<const RegionId> path,
                        CorridorOptions options) {
    Corridor out;
    out.seed_path.assign(path.begin(), path.end());
    out.exposed = exposed_set(field, path);
    out.regions = corridor(field, out.exposed);
    if (options.reachable_only) out.regions = restrict_to_reachable(graph, out.regions, path);
    out.avg_width = average_width(out.regions, path);
    return out;
}

}  // namespace shadowpath
