#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

#include "shadowpath/search.hpp"

namespace shadowpath {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

void check_endpoints(std::size_t n, RegionId start, RegionId goal) {
    if (start >= n) throw std::out_of_range("start region " + std::to_string(start) + " out of range");
    if (goal >= n) throw std::out_of_range("goal region " + std::to_string(goal) + " out of range");
}

// A* keyed on region only: one best-g node per region, stale heap entries
// skipped on pop. A region may be expanded again if a cheaper node for it
// appears later (heuristics here are not guaranteed consistent).
//
// Policy provides:
//   State root(RegionId)
//   double cost(const State&, RegionId child)
//   State make(const State&, RegionId child)
//   double heuristic(RegionId, const State&)
template <typename Policy>
PlanResult region_astar(const TraversabilityGraph& graph, RegionId start, RegionId goal, Policy& policy) {
    using State = typename Policy::State;
    struct Node {
        RegionId region;
        std::uint32_t parent;
        double g;
        State state;
    };
    struct Entry {
        double f;
        double h;
        RegionId region;
        std::uint32_t id;
    };
    auto later = [](const Entry& a, const Entry& b) {
        return std::tie(a.f, a.h, a.region, a.id) > std::tie(b.f, b.h, b.region, b.id);
    };

    PlanResult result;
    std::vector<Node> nodes;
    std::vector<std::uint32_t> best(graph.size(), kNone);
    std::priority_queue<Entry, std::vector<Entry>, decltype(later)> open(later);

    {
        State root = policy.root(start);
        const double h = policy.heuristic(start, root);
        nodes.push_back({start, kNone, 0.0, std::move(root)});
        best[start] = 0;
        open.push({h, h, start, 0});
    }

    while (!open.empty()) {
        const Entry top = open.top();
        open.pop();
        if (best[top.region] != top.id) continue;

        ++result.expanded;
        const RegionId region = top.region;
        const double g = nodes[top.id].g;
        if (region == goal) {
            for (auto id = top.id; id != kNone; id = nodes[id].parent) result.path.push_back(nodes[id].region);
            std::reverse(result.path.begin(), result.path.end());
            result.status = PlanStatus::Found;
            result.cost = g;
            result.generated = nodes.size();
            return result;
        }

        // The parent's state is only needed to build children.
        const State parent = std::move(nodes[top.id].state);
        nodes[top.id].state = State{};
        for (auto nb : graph.neighbors(region)) {
            const double g2 = g + policy.cost(parent, nb);
            const auto prev = best[nb];
            if (prev != kNone && !(g2 < nodes[prev].g)) continue;
            if (prev != kNone) nodes[prev].state = State{};
            State child = policy.make(parent, nb);
            const double h = policy.heuristic(nb, child);
            const auto id = static_cast<std::uint32_t>(nodes.size());
            nodes.push_back({nb, top.id, g2, std::move(child)});
            best[nb] = id;
            open.push({g2 + h, h, nb, id});
        }
    }
    result.status = PlanStatus::NoPath;
    result.generated = nodes.size();
    return result;
}

struct Empty {};

struct ShortestPolicy {
    using State = Empty;
    const TraversabilityGraph& graph;
    RegionId goal;

    State root(RegionId) const { return {}; }
    double cost(const State&, RegionId) const { return 1.0; }
    State make(const State&, RegionId) const { return {}; }
    double heuristic(RegionId r, const State&) const { return graph.step_lower_bound(r, goal); }
};

struct ExposureScorePolicy {
    using State = Empty;
    const TraversabilityGraph& graph;
    const ExposureField& field;
    RegionId goal;
    double delta;
    double n;

    State root(RegionId) const { return {}; }
    double cost(const State&, RegionId b) const { return static_cast<double>(field.exposure_count(b)) / n; }
    State make(const State&, RegionId) const { return {}; }
    double heuristic(RegionId r, const State&) const { return manhattan(graph.point(r), graph.point(goal)) * delta; }
};

struct BinaryPolicy {
    using State = RegionSet;
    const ExposureField& field;
    RegionId goal;
    double m;

    State root(RegionId s) const { return field.exposure_set(s); }
    double cost(const State& acc, RegionId b) const { return binary_transition_cost(acc, field.exposure_set(b), m); }
    State make(const State& acc, RegionId b) const { return acc | field.exposure_set(b); }
    double heuristic(RegionId, const State& acc) const {
        return static_cast<double>(acc.count_new(field.exposure_set(goal)));
    }
};

// Counts are stored clamped at tau; the clamped objective is identical and
// the narrower type keeps per-node memory at 2n bytes.
struct SaturationPolicy {
    using State = std::vector<std::uint16_t>;
    const TraversabilityGraph& graph;
    const ExposureField& field;
    RegionId goal;
    std::uint16_t tau;
    double unit;  // -log10(p_success)

    State root(RegionId s) const {
        State counts(field.size(), 0);
        field.exposure_set(s).for_each([&](std::size_t i) { counts[i] = std::min<std::uint16_t>(1, tau); });
        counts[s] = tau;
        return counts;
    }
    double cost(const State& counts, RegionId c) const {
        std::uint64_t delta = 0;
        field.exposure_set(c).for_each([&](std::size_t i) {
            if (i != c && counts[i] < tau) ++delta;
        });
        delta += static_cast<std::uint64_t>(tau - counts[c]);
        return unit * static_cast<double>(delta);
    }
    State make(const State& counts, RegionId c) const {
        State child = counts;
        field.exposure_set(c).for_each([&](std::size_t i) {
            if (i != c && child[i] < tau) ++child[i];
        });
        child[c] = tau;
        return child;
    }
    double heuristic(RegionId r, const State&) const {
        return manhattan(graph.point(r), graph.point(goal)) * static_cast<double>(tau) * unit;
    }
};

void check_field(const TraversabilityGraph& graph, const ExposureField& field) {
    if (field.size() != graph.size()) throw std::invalid_argument("exposure field size does not match graph");
}

}  // namespace

PlanResult plan_shortest(const TraversabilityGraph& graph, RegionId start, RegionId goal) {
    check_endpoints(graph.size(), start, goal);
    ShortestPolicy policy{graph, goal};
    return region_astar(graph, start, goal, policy);
}

PlanResult plan_exposure_score(const TraversabilityGraph& graph, const ExposureField& field, RegionId start,
                               RegionId goal) {
    check_field(graph, field);
    check_endpoints(graph.size(), start, goal);
    ExposureScorePolicy policy{graph, field, goal, field.min_exposure_score(), static_cast<double>(field.size())};
    return region_astar(graph, start, goal, policy);
}

PlanResult plan_binary(const TraversabilityGraph& graph, const ExposureField& field, RegionId start, RegionId goal,
                       double movement_cost) {
    check_field(graph, field);
    check_endpoints(graph.size(), start, goal);
    const double limit = 1.0 / static_cast<double>(graph.size());
    if (!(movement_cost > 0.0 && movement_cost < limit))
        throw std::invalid_argument("movement cost must lie in (0, 1/n)");
    BinaryPolicy policy{field, goal, movement_cost};
    return region_astar(graph, start, goal, policy);
}

PlanResult plan_binary(const TraversabilityGraph& graph, const ExposureField& field, RegionId start, RegionId goal) {
    return plan_binary(graph, field, start, goal, default_movement_cost(graph.size()));
}

PlanResult plan_saturation(const TraversabilityGraph& graph, const ExposureField& field, RegionId start,
                           RegionId goal, SaturationParams params) {
    check_field(graph, field);
    check_endpoints(graph.size(), start, goal);
    if (params.tau < 1) throw std::invalid_argument("saturation threshold tau must be >= 1");
    if (params.tau > std::numeric_limits<std::uint16_t>::max())
        throw std::invalid_argument("saturation threshold tau must be <= 65535");
    if (!(params.p_success > 0.0 && params.p_success < 1.0))
        throw std::invalid_argument("p_success must lie in (0, 1)");
    SaturationPolicy policy{graph, field, goal, static_cast<std::uint16_t>(params.tau), -std::log10(params.p_success)};
    return region_astar(graph, start, goal, policy);
}

}  // namespace shadowpath
