#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "shadowpath/search.hpp"

namespace shadowpath {

namespace {

void check_acc_params(double p_success, std::uint32_t tau) {
    if (!(p_success > 0.0 && p_success < 1.0)) throw std::invalid_argument("p_success must lie in (0, 1)");
    if (tau < 1) throw std::invalid_argument("saturation threshold tau must be >= 1");
}

}  // namespace

std::string_view algorithm_id(Algorithm a) {
    switch (a) {
        case Algorithm::Shortest: return "shortest";
        case Algorithm::ExposureScore: return "exposure_score";
        case Algorithm::Binary: return "binary";
        case Algorithm::Saturation: return "saturation";
        case Algorithm::Exact: return "exact";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view id) {
    if (id == "shortest" || id == "astar") return Algorithm::Shortest;
    if (id == "exposure_score" || id == "ess") return Algorithm::ExposureScore;
    if (id == "binary") return Algorithm::Binary;
    if (id == "saturation" || id == "sat") return Algorithm::Saturation;
    if (id == "exact" || id == "bfs") return Algorithm::Exact;
    return std::nullopt;
}

std::string_view status_id(PlanStatus s) {
    switch (s) {
        case PlanStatus::Found: return "found";
        case PlanStatus::NoPath: return "no_path";
        case PlanStatus::BudgetExceeded: return "budget_exceeded";
    }
    return "unknown";
}

RegionSet path_exposure(const ExposureField& field, std::span<const RegionId> path) {
    if (path.empty()) throw std::invalid_argument("path is empty");
    RegionSet exposed(field.size());
    for (auto r : path) exposed |= field.exposure_set(r);
    return exposed;
}

std::size_t obj_bin(const ExposureField& field, std::span<const RegionId> path) {
    return path_exposure(field, path).count();
}

double obj_acc(std::span<const std::uint32_t> counts, double p_success, std::uint32_t tau) {
    check_acc_params(p_success, tau);
    const double floor_prob = std::pow(p_success, static_cast<double>(tau));
    double total = 0.0;
    for (auto c : counts) total += -std::log10(std::max(std::pow(p_success, static_cast<double>(c)), floor_prob));
    return total;
}

std::vector<std::uint32_t> saturation_root_counts(const ExposureField& field, RegionId start, std::uint32_t tau) {
    std::vector<std::uint32_t> counts(field.size(), 0);
    field.exposure_set(start).for_each([&](std::size_t i) { counts[i] = 1; });
    counts[start] = tau;
    return counts;
}

void saturation_enter(std::vector<std::uint32_t>& counts, const ExposureField& field, RegionId c, std::uint32_t tau) {
    field.exposure_set(c).for_each([&](std::size_t i) {
        if (i != c) counts[i] += 1;
    });
    counts[c] += tau;
}

std::vector<std::uint32_t> path_exposure_counts(const ExposureField& field, std::span<const RegionId> path,
                                                std::uint32_t tau) {
    if (path.empty()) throw std::invalid_argument("path is empty");
    auto counts = saturation_root_counts(field, path.front(), tau);
    for (std::size_t i = 1; i < path.size(); ++i) saturation_enter(counts, field, path[i], tau);
    return counts;
}

double binary_transition_cost(const RegionSet& accumulator, const RegionSet& exposure_b, double m) {
    return static_cast<double>(accumulator.count_new(exposure_b)) + m;
}

// Clamped counts only change where they are still below tau, so the
// objective difference reduces to an integer count of newly saturating units.
double saturation_transition_cost(std::span<const std::uint32_t> counts, const ExposureField& field, RegionId c,
                                  std::uint32_t tau, double p_success) {
    check_acc_params(p_success, tau);
    std::uint64_t delta = 0;
    field.exposure_set(c).for_each([&](std::size_t i) {
        if (i != c && counts[i] < tau) ++delta;
    });
    delta += tau - std::min(counts[c], tau);
    return -std::log10(p_success) * static_cast<double>(delta);
}

std::optional<std::size_t> first_invalid_transition(const TraversabilityGraph& graph, std::span<const RegionId> path) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (path[i] >= graph.size() || path[i + 1] >= graph.size() || !graph.adjacent(path[i], path[i + 1])) return i;
    }
    return std::nullopt;
}

bool is_valid_path(const TraversabilityGraph& graph, std::span<const RegionId> path, RegionId start, RegionId goal) {
    if (path.empty() || path.front() != start || path.back() != goal) return false;
    if (path.front() >= graph.size()) return false;
    return !first_invalid_transition(graph, path).has_value();
}

PlanResult run_planner(Algorithm algorithm, const TraversabilityGraph& graph, const ExposureField& field,
                       RegionId start, RegionId goal, const PlannerConfig& config) {
    switch (algorithm) {
        case Algorithm::Shortest: return plan_shortest(graph, start, goal);
        case Algorithm::ExposureScore: return plan_exposure_score(graph, field, start, goal);
        case Algorithm::Binary:
            return config.movement_cost > 0.0 ? plan_binary(graph, field, start, goal, config.movement_cost)
                                              : plan_binary(graph, field, start, goal);
        case Algorithm::Saturation:
            return plan_saturation(graph, field, start, goal, {config.tau, config.p_success});
        case Algorithm::Exact: return plan_exact(graph, field, start, goal, {config.node_budget});
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace shadowpath
