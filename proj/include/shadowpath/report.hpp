#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shadowpath/corridor.hpp"
#include "shadowpath/search.hpp"

namespace shadowpath {

/// Planner result plus the objectives of the returned path, as emitted by
/// the `plan` command and the Python bindings.
struct PlanReport {
    Algorithm algorithm = Algorithm::Shortest;
    PlannerConfig config;
    RegionId start = 0;
    RegionId goal = 0;
    PlanResult result;
    std::optional<std::size_t> obj_bin;
    std::optional<double> obj_acc;
    double duration_ms = 0.0;
};

/// Runs one planner and evaluates both objectives on the result. obj_acc
/// uses `config.tau` and `config.p_success`.
PlanReport run_plan_report(Algorithm algorithm, const TraversabilityGraph& graph, const ExposureField& field,
                           RegionId start, RegionId goal, PlannerConfig config);

/// One-line JSON record. When `names` is non-empty a "path_names" array is added.
std::string plan_report_json(const PlanReport& report, const std::vector<std::string>& names = {});

/// Seed path, sorted K and C, and average width as one JSON object.
std::string corridor_json(const Corridor& corridor, const std::vector<std::string>& names = {});

}  // namespace shadowpath
