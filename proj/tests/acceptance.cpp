// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "shadowpath/bench.hpp"
#include "shadowpath/corridor.hpp"
#include "shadowpath/experiment.hpp"
#include "shadowpath/io.hpp"
#include "shadowpath/search.hpp"

using namespace shadowpath;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

double rel_err(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// ---------------------------------------------------------------------------

Outcome fixture_counts() {
    const auto t0 = Clock::now();
    const auto fx = lemma1_fixture();
    const auto fh = plan_exact(fx.graph, fx.field, fx.id("F"), fx.id("H"));
    const auto fe = plan_exact(fx.graph, fx.field, fx.id("F"), fx.id("E"));
    if (!fh.found() || !fe.found()) return {false, "exact planner did not find a path"};
    const auto opt_fh = obj_bin(fx.field, fh.path);
    const auto opt_fe = obj_bin(fx.field, fe.path);
    const auto prefix = obj_bin(fx.field, fx.path("FJIE"));
    const auto suffix = obj_bin(fx.field, fx.path("EDH"));
    const double secs = seconds_since(t0);
    const bool ok = opt_fh == 12 && opt_fe == 9 && prefix == 11 && suffix == 10 && secs < 1.0;
    return {ok, "F->H " + std::to_string(opt_fh) + ", F->E " + std::to_string(opt_fe) + ", {F,J,I,E} " +
                    std::to_string(prefix) + ", {E,D,H} " + std::to_string(suffix) + " in " + fmt(secs) + " s"};
}

Outcome non_markovian_witness() {
    const auto t0 = Clock::now();
    const auto fx = lemma1_fixture();
    const auto e = fx.id("E");
    const auto fh = plan_exact(fx.graph, fx.field, fx.id("F"), fx.id("H"));
    const auto fe = plan_exact(fx.graph, fx.field, fx.id("F"), e);
    if (!fh.found() || !fe.found()) return {false, "exact planner did not find a path"};
    const auto at_e = std::find(fh.path.begin(), fh.path.end(), e);
    if (at_e == fh.path.end()) return {false, "optimal F->H path does not pass through E"};
    const Path prefix(fh.path.begin(), at_e + 1);
    const auto prefix_cost = obj_bin(fx.field, prefix);
    const auto best_fe = obj_bin(fx.field, fe.path);
    const double secs = seconds_since(t0);
    return {best_fe < prefix_cost && secs < 1.0,
            "optimal F->E " + std::to_string(best_fe) + " < prefix of optimal F->H " + std::to_string(prefix_cost)};
}

Outcome oracle_equivalence() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> height(0.0, 3.0);
    std::size_t instances = 0, mismatches = 0, attempts = 0;
    while (instances < 250 && attempts < 100000) {
        ++attempts;
        const std::size_t w = 2 + rng() % 3;
        const std::size_t h = 2 + rng() % (16 / w - 1);
        Heightmap hm(w, h, 1.0);
        for (auto& e : hm.elevations) e = height(rng);
        const GridEnvironment env(hm, {1.0, 1.0});
        if (env.graph().reachable_from(0).count() != env.size()) continue;
        const auto field = ExposureField::compute(env, 1);
        const auto s = static_cast<RegionId>(rng() % env.size());
        const auto g = static_cast<RegionId>(rng() % env.size());
        const auto oracle = brute_force_min_exposure(env.graph(), field, s, g, env.size());
        const auto exact = plan_exact(env.graph(), field, s, g);
        ++instances;
        if (oracle.status != OracleStatus::Ok || !exact.found() ||
            obj_bin(field, exact.path) != oracle.min_exposure || !is_valid_path(env.graph(), exact.path, s, g))
            ++mismatches;
    }
    const double secs = seconds_since(t0);
    return {instances >= 200 && mismatches == 0 && secs < 300.0,
            std::to_string(instances) + " connected instances (<= 16 regions), " + std::to_string(mismatches) +
                " mismatches, " + fmt(secs) + " s"};
}

Outcome gap_sanity() {
    const auto t0 = Clock::now();
    ExperimentConfig config;
    config.maps = {MapKind::Boxes, MapKind::Hills};
    config.sizes = {20};
    config.seeds = {1, 2, 3, 4};
    config.queries = 18;
    config.algorithms = {Algorithm::Exact, Algorithm::Binary, Algorithm::Saturation, Algorithm::ExposureScore,
                         Algorithm::Shortest};
    config.taus = {1};
    config.budget = 2'000'000;
    config.corridors = false;
    config.timing = false;
    const auto records = run_experiment(config);

    std::vector<double> exact, binary, ess, shortest;
    std::size_t completed = 0, negative = 0;
    for (const auto& r : records) {
        if (!r.optimality_gap) continue;
        if (*r.optimality_gap < 0.0) ++negative;
        if (r.algorithm == "exact") {
            exact.push_back(*r.optimality_gap);
            ++completed;
        }
        if (r.algorithm == "binary") binary.push_back(*r.optimality_gap);
        if (r.algorithm == "exposure_score") ess.push_back(*r.optimality_gap);
        if (r.algorithm == "shortest") shortest.push_back(*r.optimality_gap);
    }
    const double me = median(exact), mb = median(binary), ms = median(ess), mh = median(shortest);
    const double secs = seconds_since(t0);
    const bool ok = completed >= 100 && negative == 0 && me <= mb && mb <= ms && ms <= mh && secs < 1800.0;
    return {ok, std::to_string(completed) + " completed queries, " + std::to_string(negative) +
                    " negative gaps, median gaps exact " + fmt(me) + " <= binary " + fmt(mb) + " <= exposure_score " +
                    fmt(ms) + " <= shortest " + fmt(mh) + " (%), " + fmt(secs) + " s"};
}

Outcome saturation_binary_link() {
    std::mt19937_64 rng(99);
    const std::vector<double> probabilities{0.5, 0.8, 0.95, 0.99};
    std::size_t transitions = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto kind = seed % 2 == 0 ? MapKind::Boxes : MapKind::Hills;
        const GridEnvironment env(generate_map(kind, seed, 16), bench_params(kind));
        const auto field = ExposureField::compute(env);
        const double m = default_movement_cost(env.size());
        for (int walk = 0; walk < 10; ++walk) {
            auto here = static_cast<RegionId>(rng() % env.size());
            auto counts = saturation_root_counts(field, here, 1);
            RegionSet acc = field.exposure_set(here);
            for (int step = 0; step < 40; ++step) {
                const auto nbs = env.graph().neighbors(here);
                if (nbs.empty()) break;
                const auto next = nbs[rng() % nbs.size()];
                const double p = probabilities[rng() % probabilities.size()];
                const double t_bin = binary_transition_cost(acc, field.exposure_set(next), m);
                const double t_sat = saturation_transition_cost(counts, field, next, 1, p);
                const double expected = -std::log10(p) * (t_bin - m);
                worst = std::max(worst, rel_err(t_sat, expected));
                ++transitions;
                saturation_enter(counts, field, next, 1);
                acc |= field.exposure_set(next);
                here = next;
            }
        }
    }
    return {transitions >= 1000 && worst <= 1e-10,
            std::to_string(transitions) + " transitions, worst relative error " + fmt(worst)};
}

Outcome obj_acc_identity() {
    std::mt19937_64 rng(7);
    std::size_t cases = 0;
    double worst = 0.0;
    for (double p : {0.5, 0.9, 0.99}) {
        for (std::uint32_t tau : {1U, 5U, 200U}) {
            for (int trial = 0; trial < 200; ++trial) {
                std::vector<std::uint32_t> counts(1 + rng() % 300);
                for (auto& c : counts) c = static_cast<std::uint32_t>(rng() % 400);
                double clamped = 0.0;
                for (auto c : counts) clamped += std::min<double>(c, tau);
                worst = std::max(worst, rel_err(obj_acc(counts, p, tau), -std::log10(p) * clamped));
                ++cases;
            }
        }
    }
    return {worst <= 1e-12, std::to_string(cases) + " count vectors, worst relative error " + fmt(worst)};
}

// Binary-planner seed paths on 50x50 maps, shared by the corridor criteria.
struct CorridorSample {
    MapKind kind;
    double width;
    bool guarantees_hold;
};

std::vector<CorridorSample> corridor_samples(double& secs) {
    const auto t0 = Clock::now();
    std::vector<CorridorSample> out;
    for (auto kind : {MapKind::Boxes, MapKind::Hills}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const GridEnvironment env(generate_map(kind, seed, 50), bench_params(kind));
            const auto field = ExposureField::compute(env);
            std::mt19937_64 rng(1000 + seed);
            std::size_t paths = 0;
            while (paths < 20) {
                const auto s = static_cast<RegionId>(rng() % env.size());
                const auto g = static_cast<RegionId>(rng() % env.size());
                if (s == g || !env.graph().reachable_from(s).test(g)) continue;
                const auto plan = plan_binary(env.graph(), field, s, g);
                if (!plan.found()) continue;
                ++paths;
                const auto cor = build_corridor(env.graph(), field, plan.path);

                bool ok = true;
                for (auto p : plan.path) ok = ok && cor.regions.test(p);
                cor.regions.for_each([&](std::size_t c) {
                    ok = ok && field.exposure_set(static_cast<RegionId>(c)).is_subset_of(cor.exposed);
                });
                for (int walk = 0; walk < 5; ++walk) {
                    RegionId here = plan.path[rng() % plan.path.size()];
                    Path steps{here};
                    for (int i = 0; i < 300; ++i) {
                        std::vector<RegionId> inside;
                        for (auto nb : env.graph().neighbors(here))
                            if (cor.regions.test(nb)) inside.push_back(nb);
                        if (inside.empty()) break;
                        here = inside[rng() % inside.size()];
                        steps.push_back(here);
                    }
                    ok = ok && exposed_set(field, steps).is_subset_of(cor.exposed);
                }
                out.push_back({kind, cor.avg_width, ok});
            }
        }
    }
    secs = seconds_since(t0);
    return out;
}

Outcome corridor_guarantees(const std::vector<CorridorSample>& samples, double secs) {
    const auto failures = std::count_if(samples.begin(), samples.end(), [](auto& s) { return !s.guarantees_hold; });
    return {samples.size() >= 100 && failures == 0 && secs < 600.0,
            std::to_string(samples.size()) + " seed paths on 50x50 maps, " + std::to_string(failures) +
                " violations, " + fmt(secs) + " s"};
}

Outcome corridor_width_direction(const std::vector<CorridorSample>& samples) {
    std::vector<double> boxes, hills;
    for (const auto& s : samples) (s.kind == MapKind::Boxes ? boxes : hills).push_back(s.width);
    const double mb = median(boxes), mh = median(hills);
    return {mb > mh, "median width Boxes " + fmt(mb) + " > Hills " + fmt(mh) + " over " +
                         std::to_string(boxes.size()) + " + " + std::to_string(hills.size()) + " matched queries"};
}

Outcome field_invariants() {
    std::vector<std::pair<std::string, ExposureField>> fields;
    std::vector<std::function<ExposureField(unsigned)>> builders;
    builders.push_back([](unsigned) { return lemma1_fixture().field; });
    for (auto kind : {MapKind::Boxes, MapKind::Hills})
        for (std::size_t size : {20, 50})
            builders.push_back([kind, size](unsigned workers) {
                return ExposureField::compute(GridEnvironment(generate_map(kind, 1, size), bench_params(kind)),
                                              workers);
            });

    std::size_t maps = 0;
    for (const auto& build : builders) {
        const auto field = build(1);
        const auto again = build(4);
        if (!(field == again)) return {false, "field differs between runs"};
        for (RegionId i = 0; i < field.size(); ++i) {
            if (!field.visible(i, i)) return {false, "reflexivity violated"};
            for (RegionId j = i + 1; j < field.size(); ++j)
                if (field.visible(i, j) != field.visible(j, i)) return {false, "symmetry violated"};
        }
        std::ostringstream first;
        write_field_cache(first, field);
        std::istringstream in(first.str());
        const auto loaded = read_field_cache(in);
        std::ostringstream second;
        write_field_cache(second, loaded);
        if (!(loaded == field) || first.str() != second.str()) return {false, "cache round trip not byte-identical"};
        ++maps;
    }
    return {true, std::to_string(maps) + " maps reflexive, symmetric, deterministic; cache round trip byte-identical"};
}

Outcome runtime_ordering() {
    const auto t0 = Clock::now();
    ExperimentConfig config;
    config.maps = {MapKind::Boxes, MapKind::Hills};
    config.sizes = {50};
    config.seeds = {1, 2};
    config.queries = 8;
    config.algorithms = {Algorithm::Shortest, Algorithm::ExposureScore, Algorithm::Binary, Algorithm::Exact};
    config.taus = {1};
    config.budget = 1'000'000;
    config.max_query_distance = 15;
    config.corridors = false;
    config.timing = true;
    const auto records = run_experiment(config);
    std::vector<double> ess, binary, exact;
    for (const auto& r : records) {
        if (!r.runtime_ratio || r.status == "error") continue;
        if (r.algorithm == "exposure_score") ess.push_back(*r.runtime_ratio);
        if (r.algorithm == "binary") binary.push_back(*r.runtime_ratio);
        if (r.algorithm == "exact") exact.push_back(*r.runtime_ratio);
    }
    const double me = median(ess), mb = median(binary), mx = median(exact);
    return {me <= 10.0 && mb > me && mb > 1.0 && mx > mb,
            "median runtime ratios exposure_score " + fmt(me) + " (<= 10), binary " + fmt(mb) + ", exact " +
                fmt(mx) + " over " + std::to_string(ess.size()) + " queries, " + fmt(seconds_since(t0)) + " s"};
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const char* name, const Outcome& o) {
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    };
    auto guarded = [](const std::function<Outcome()>& fn) {
        try {
            return fn();
        } catch (const std::exception& e) {
            return Outcome{false, std::string("exception: ") + e.what()};
        }
    };

    report(1, "counterexample fixture counts", guarded(fixture_counts));
    report(2, "non-Markovian witness", guarded(non_markovian_witness));
    report(3, "oracle equivalence", guarded(oracle_equivalence));
    report(4, "gap sanity", guarded(gap_sanity));
    report(5, "saturation/binary link", guarded(saturation_binary_link));
    report(6, "obj_acc identity", guarded(obj_acc_identity));

    double corridor_secs = 0.0;
    std::vector<CorridorSample> samples;
    std::string sample_error;
    try {
        samples = corridor_samples(corridor_secs);
    } catch (const std::exception& e) {
        sample_error = e.what();
    }
    report(7, "corridor guarantees",
           sample_error.empty() ? corridor_guarantees(samples, corridor_secs)
                                : Outcome{false, "exception: " + sample_error});
    report(8, "exposure-field invariants", guarded(field_invariants));
    report(9, "runtime-ratio ordering", guarded(runtime_ordering));
    report(10, "corridor-width direction",
           sample_error.empty() ? corridor_width_direction(samples) : Outcome{false, "exception: " + sample_error});

    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
