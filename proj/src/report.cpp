#include "shadowpath/report.hpp"

#include <chrono>

#include "json.hpp"

namespace shadowpath {

namespace {

using nlohmann::json;

json names_of(const std::vector<RegionId>& ids, const std::vector<std::string>& names) {
    json out = json::array();
    for (auto id : ids) out.push_back(names.at(id));
    return out;
}

std::vector<RegionId> as_ids(const RegionSet& s) {
    std::vector<RegionId> out;
    s.for_each([&](std::size_t i) { out.push_back(static_cast<RegionId>(i)); });
    return out;
}

}  // namespace

PlanReport run_plan_report(Algorithm algorithm, const TraversabilityGraph& graph, const ExposureField& field,
                           RegionId start, RegionId goal, PlannerConfig config) {
    if (config.movement_cost <= 0.0) config.movement_cost = default_movement_cost(graph.size());
    PlanReport rep;
    rep.algorithm = algorithm;
    rep.config = config;
    rep.start = start;
    rep.goal = goal;
    const auto t0 = std::chrono::steady_clock::now();
    rep.result = run_planner(algorithm, graph, field, start, goal, config);
    rep.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (rep.result.found()) {
        rep.obj_bin = obj_bin(field, rep.result.path);
        rep.obj_acc = obj_acc(path_exposure_counts(field, rep.result.path, config.tau), config.p_success, config.tau);
    }
    return rep;
}

std::string plan_report_json(const PlanReport& report, const std::vector<std::string>& names) {
    json j;
    j["algorithm"] = std::string(algorithm_id(report.algorithm));
    j["params"] = {{"tau", report.config.tau},
                   {"p_success", report.config.p_success},
                   {"m", report.config.movement_cost},
                   {"node_budget", report.config.node_budget}};
    j["start"] = report.start;
    j["goal"] = report.goal;
    j["status"] = std::string(status_id(report.result.status));
    j["path"] = report.result.path;
    if (!names.empty()) j["path_names"] = names_of(report.result.path, names);
    j["obj_bin"] = report.obj_bin ? json(*report.obj_bin) : json(nullptr);
    j["obj_acc"] = report.obj_acc ? json(*report.obj_acc) : json(nullptr);
    j["cost"] = report.result.cost;
    j["expanded"] = report.result.expanded;
    j["duration_ms"] = report.duration_ms;
    return j.dump();
}

std::string corridor_json(const Corridor& corridor, const std::vector<std::string>& names) {
    json j;
    const auto k = as_ids(corridor.exposed);
    const auto c = as_ids(corridor.regions);
    j["seed_path"] = corridor.seed_path;
    j["K"] = k;
    j["C"] = c;
    j["K_size"] = k.size();
    j["C_size"] = c.size();
    j["avg_width"] = corridor.avg_width;
    if (!names.empty()) {
        j["seed_path_names"] = names_of(corridor.seed_path, names);
        j["K_names"] = names_of(k, names);
        j["C_names"] = names_of(c, names);
    }
    return j.dump();
}

}  // namespace shadowpath
