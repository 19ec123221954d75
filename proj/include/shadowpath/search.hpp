#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shadowpath/region_set.hpp"
#include "shadowpath/terrain.hpp"

namespace shadowpath {

/// Ordered sequence of regions from start to goal.
using Path = std::vector<RegionId>;

enum class Algorithm : std::uint8_t {
    Shortest,       // exposure-agnostic A*, unit move cost
    ExposureScore,  // A* with per-region exposure-score transition cost
    Binary,         // A* with a binary exposure accumulator per node
    Saturation,     // A* with per-region saturating exposure counts
    Exact,          // best-first search over (region, history) states
};

std::string_view algorithm_id(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view id);

enum class PlanStatus : std::uint8_t { Found, NoPath, BudgetExceeded };

std::string_view status_id(PlanStatus s);

struct PlanResult {
    PlanStatus status = PlanStatus::NoPath;
    Path path;
    /// Accumulated search cost of the returned path, in the planner's own units.
    double cost = 0.0;
    std::size_t expanded = 0;
    std::size_t generated = 0;

    bool found() const { return status == PlanStatus::Found; }
};

inline constexpr double kDefaultSuccessProbability = 0.95;
inline constexpr std::size_t kDefaultExactBudget = 5'000'000;

/// Movement cost for A* Binary: 1/(2n), so n moves never outweigh one exposure.
inline double default_movement_cost(std::size_t n) { return 1.0 / (2.0 * static_cast<double>(n)); }

// ---------------------------------------------------------------------------
// Objectives

/// Number of regions exposed by any step of the path. Throws on an empty path.
std::size_t obj_bin(const ExposureField& field, std::span<const RegionId> path);

/// Union of the exposure sets of every region on the path.
RegionSet path_exposure(const ExposureField& field, std::span<const RegionId> path);

/// Accumulative objective: sum over regions of -log10(max(p^c, p^tau)).
/// Throws std::invalid_argument unless 0 < p < 1 and tau >= 1.
double obj_acc(std::span<const std::uint32_t> counts, double p_success, std::uint32_t tau);

/// Exposure counts accumulated along a path: the start contributes 1 per
/// region of E(start) and tau for itself; each later step adds 1 per region
/// of E(c) and tau for c itself (occupancy replaces the +1).
std::vector<std::uint32_t> path_exposure_counts(const ExposureField& field, std::span<const RegionId> path,
                                                std::uint32_t tau);

// ---------------------------------------------------------------------------
// Transition costs, exposed for property tests.

/// |acc ∪ E(b)| - |acc| + m
double binary_transition_cost(const RegionSet& accumulator, const RegionSet& exposure_b, double m);

/// Root accumulator for A* Saturation.
std::vector<std::uint32_t> saturation_root_counts(const ExposureField& field, RegionId start, std::uint32_t tau);

/// Applies the child update for entering region `c`.
void saturation_enter(std::vector<std::uint32_t>& counts, const ExposureField& field, RegionId c, std::uint32_t tau);

/// obj_acc(child) - obj_acc(parent) for entering `c` from a node with `counts`.
double saturation_transition_cost(std::span<const std::uint32_t> counts, const ExposureField& field, RegionId c,
                                  std::uint32_t tau, double p_success);

// ---------------------------------------------------------------------------
// Path validation

/// Index i of the first step where path[i] -> path[i+1] is not traversable.
std::optional<std::size_t> first_invalid_transition(const TraversabilityGraph& graph, std::span<const RegionId> path);

/// Non-empty, in range, starts at `start`, ends at `goal`, every step traversable.
bool is_valid_path(const TraversabilityGraph& graph, std::span<const RegionId> path, RegionId start, RegionId goal);

// ---------------------------------------------------------------------------
// Planners. All throw std::out_of_range for invalid start/goal and
// std::invalid_argument for invalid parameters. Planners keep no shared
// state; concurrent queries against one graph and field are safe.

PlanResult plan_shortest(const TraversabilityGraph& graph, RegionId start, RegionId goal);

PlanResult plan_exposure_score(const TraversabilityGraph& graph, const ExposureField& field, RegionId start,
                               RegionId goal);

/// `movement_cost` must lie in (0, 1/n).
PlanResult plan_binary(const TraversabilityGraph& graph, const ExposureField& field, RegionId start, RegionId goal,
                       double movement_cost);
PlanResult plan_binary(const TraversabilityGraph& graph, const ExposureField& field, RegionId start, RegionId goal);

struct SaturationParams {
    std::uint32_t tau = 1;
    double p_success = kDefaultSuccessProbability;
};

PlanResult plan_saturation(const TraversabilityGraph& graph, const ExposureField& field, RegionId start,
                           RegionId goal, SaturationParams params);

/// How the exact planner identifies duplicate states. Future cost depends
/// on history only through the exposed set, so keying on it is exact and
/// merges far more states; keying on the visited set is the literal form.
enum class ExactStateKey : std::uint8_t { ExposedSet, VisitedSet };

struct ExactOptions {
    std::size_t node_budget = kDefaultExactBudget;
    ExactStateKey key = ExactStateKey::ExposedSet;
};

/// Exposure-optimal path, or BudgetExceeded after `node_budget` expansions.
PlanResult plan_exact(const TraversabilityGraph& graph, const ExposureField& field, RegionId start, RegionId goal,
                      ExactOptions options = {});

/// Dispatch used by the CLI, bindings, and experiment harness.
struct PlannerConfig {
    std::uint32_t tau = 1;
    double p_success = kDefaultSuccessProbability;
    /// 0 selects default_movement_cost(n).
    double movement_cost = 0.0;
    std::size_t node_budget = kDefaultExactBudget;
};

PlanResult run_planner(Algorithm algorithm, const TraversabilityGraph& graph, const ExposureField& field,
                       RegionId start, RegionId goal, const PlannerConfig& config);

}  // namespace shadowpath
