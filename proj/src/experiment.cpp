#include "shadowpath/experiment.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "shadowpath/corridor.hpp"

namespace shadowpath {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& key, const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError(key, "empty list element");
        out.push_back(item);
    }
    return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    std::istringstream ss(text);
    T v{};
    if constexpr (std::is_unsigned_v<T>) {
        if (!text.empty() && text.front() == '-') throw ConfigError(key, "expected a non-negative integer, got '" + text + "'");
    }
    if (!(ss >> v) || !(ss >> std::ws).eof()) throw ConfigError(key, "cannot parse '" + text + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError(key, "expected a boolean, got '" + text + "'");
}

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct Cell {
    Algorithm algorithm;
    std::uint32_t tau;
};

std::vector<Cell> expand_cells(const ExperimentConfig& config) {
    std::vector<Cell> cells;
    for (auto a : config.algorithms) {
        if (a == Algorithm::Saturation) {
            for (auto t : config.taus) cells.push_back({a, t});
        } else {
            cells.push_back({a, 1});
        }
    }
    return cells;
}

struct Query {
    RegionId start;
    RegionId goal;
};

std::optional<Query> sample_query(const GridEnvironment& env, std::mt19937_64& rng, std::size_t max_distance) {
    const auto n = env.size();
    const auto& graph = env.graph();
    for (int attempt = 0; attempt < 20000; ++attempt) {
        const auto s = static_cast<RegionId>(rng() % n);
        const auto g = static_cast<RegionId>(rng() % n);
        if (s == g) continue;
        if (max_distance != 0 && graph.step_lower_bound(s, g) > static_cast<double>(max_distance)) continue;
        if (!graph.reachable_from(s).test(g)) continue;
        return Query{s, g};
    }
    return std::nullopt;
}

struct Timed {
    PlanResult result;
    double ms = 0.0;
    std::string error;
};

Timed timed_run(Algorithm a, const TraversabilityGraph& graph, const ExposureField& field, Query q,
                const PlannerConfig& pc) {
    Timed t;
    const auto t0 = Clock::now();
    try {
        t.result = run_planner(a, graph, field, q.start, q.goal, pc);
    } catch (const std::exception& e) {
        t.error = e.what();
    }
    t.ms = elapsed_ms(t0);
    return t;
}

struct MapInstance {
    MapKind kind;
    std::size_t size;
    std::uint64_t seed;
};

std::vector<ExperimentRecord> run_query(const ExperimentConfig& config, const MapInstance& inst,
                                        const GridEnvironment& env, const ExposureField& field, Query q,
                                        const std::vector<Cell>& cells) {
    const auto& graph = env.graph();
    const auto n = env.size();
    PlannerConfig base;
    base.p_success = config.p_success;
    base.node_budget = config.budget;
    base.movement_cost = default_movement_cost(n);

    const Timed baseline = timed_run(Algorithm::Shortest, graph, field, q, base);
    std::optional<Timed> exact;
    if (std::any_of(cells.begin(), cells.end(), [](const Cell& c) { return c.algorithm == Algorithm::Exact; }))
        exact = timed_run(Algorithm::Exact, graph, field, q, base);
    const bool exact_ok = exact && exact->error.empty() && exact->result.found();
    const std::size_t exact_obj = exact_ok ? obj_bin(field, exact->result.path) : 0;

    std::vector<ExperimentRecord> out;
    out.reserve(cells.size());
    for (const auto& cell : cells) {
        PlannerConfig pc = base;
        pc.tau = cell.tau;
        Timed run;
        if (cell.algorithm == Algorithm::Shortest) {
            run = baseline;
        } else if (cell.algorithm == Algorithm::Exact) {
            run = *exact;
        } else {
            run = timed_run(cell.algorithm, graph, field, q, pc);
        }

        ExperimentRecord rec;
        rec.map_kind = std::string(map_kind_id(inst.kind));
        rec.map_seed = inst.seed;
        rec.resolution = inst.size;
        rec.algorithm = std::string(algorithm_id(cell.algorithm));
        rec.tau = cell.tau;
        rec.p_success = config.p_success;
        rec.movement_cost = base.movement_cost;
        rec.start = q.start;
        rec.goal = q.goal;
        rec.expanded = run.result.expanded;
        rec.duration_ms = run.ms;
        rec.runtime_ratio = run.ms / std::max(baseline.ms, 1e-6);
        if (!run.error.empty()) {
            rec.status = "error";
            rec.error = run.error;
            out.push_back(std::move(rec));
            continue;
        }
        rec.status = std::string(status_id(run.result.status));
        if (run.result.found()) {
            const auto& path = run.result.path;
            rec.path_length = path.size();
            rec.obj_bin = obj_bin(field, path);
            rec.obj_acc = obj_acc(path_exposure_counts(field, path, cell.tau), config.p_success, cell.tau);
            if (exact_ok) {
                rec.optimality_gap = optimality_gap(*rec.obj_bin, exact_obj, n);
                if (*rec.optimality_gap < 0.0) rec.error = "oracle violation: negative optimality gap";
            }
            if (config.corridors) rec.avg_width = build_corridor(graph, field, path).avg_width;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::uint64_t instance_seed(std::uint64_t query_seed, const MapInstance& inst) {
    std::seed_seq seq{static_cast<std::uint32_t>(query_seed), static_cast<std::uint32_t>(query_seed >> 32),
                      static_cast<std::uint32_t>(inst.kind), static_cast<std::uint32_t>(inst.size),
                      static_cast<std::uint32_t>(inst.seed), static_cast<std::uint32_t>(inst.seed >> 32)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

// ---------------------------------------------------------------------------
// Config parsing

ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line, "line " + std::to_string(lineno) + " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError(key, "missing value");

        if (key == "maps") {
            cfg.maps.clear();
            for (const auto& m : split_list(key, value)) {
                if (m == "boxes") cfg.maps.push_back(MapKind::Boxes);
                else if (m == "hills") cfg.maps.push_back(MapKind::Hills);
                else throw ConfigError(key, "unknown map kind '" + m + "'");
            }
        } else if (key == "sizes") {
            cfg.sizes.clear();
            for (const auto& s : split_list(key, value)) {
                const auto v = parse_number<std::size_t>(key, s);
                if (v < kMinGeneratedSize) throw ConfigError(key, "size must be >= " + std::to_string(kMinGeneratedSize));
                cfg.sizes.push_back(v);
            }
        } else if (key == "seeds") {
            cfg.seeds.clear();
            for (const auto& s : split_list(key, value)) cfg.seeds.push_back(parse_number<std::uint64_t>(key, s));
        } else if (key == "queries") {
            cfg.queries = parse_number<std::size_t>(key, value);
        } else if (key == "algorithms") {
            cfg.algorithms.clear();
            for (const auto& a : split_list(key, value)) {
                auto alg = parse_algorithm(a);
                if (!alg) throw ConfigError(key, "unknown algorithm '" + a + "'");
                cfg.algorithms.push_back(*alg);
            }
        } else if (key == "taus") {
            cfg.taus.clear();
            for (const auto& t : split_list(key, value)) {
                const auto v = parse_number<std::uint32_t>(key, t);
                if (v < 1) throw ConfigError(key, "tau must be >= 1");
                cfg.taus.push_back(v);
            }
        } else if (key == "p_success") {
            cfg.p_success = parse_number<double>(key, value);
            if (!(cfg.p_success > 0.0 && cfg.p_success < 1.0)) throw ConfigError(key, "must lie in (0, 1)");
        } else if (key == "budget") {
            cfg.budget = parse_number<std::size_t>(key, value);
            if (cfg.budget == 0) throw ConfigError(key, "must be positive");
        } else if (key == "d") {
            cfg.d = parse_number<double>(key, value);
            if (!(cfg.d >= 0.0)) throw ConfigError(key, "must be non-negative");
        } else if (key == "max_step") {
            cfg.max_step = value == "inf" ? std::numeric_limits<double>::infinity() : parse_number<double>(key, value);
            if (!(*cfg.max_step >= 0.0)) throw ConfigError(key, "must be non-negative");
        } else if (key == "query_seed") {
            cfg.query_seed = parse_number<std::uint64_t>(key, value);
        } else if (key == "max_query_distance") {
            cfg.max_query_distance = parse_number<std::size_t>(key, value);
        } else if (key == "corridors") {
            cfg.corridors = parse_bool(key, value);
        } else if (key == "timing") {
            cfg.timing = parse_bool(key, value);
        } else if (key == "workers") {
            cfg.workers = parse_number<unsigned>(key, value);
            if (cfg.workers == 0) throw ConfigError(key, "must be positive");
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
    return cfg;
}

ExperimentConfig parse_experiment_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_experiment_config(in);
}

// ---------------------------------------------------------------------------
// Harness

std::size_t cells_per_query(const ExperimentConfig& config) { return expand_cells(config).size(); }

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config, const ProgressFn& progress) {
    const auto cells = expand_cells(config);
    std::vector<ExperimentRecord> records;
    if (config.queries == 0 || cells.empty()) return records;

    for (auto kind : config.maps) {
        for (auto size : config.sizes) {
            for (auto seed : config.seeds) {
                const MapInstance inst{kind, size, seed};
                const std::string label = std::string(map_kind_id(kind)) + "-" + std::to_string(size) + "-s" +
                                          std::to_string(seed);
                if (progress) progress("generating " + label);
                auto params = bench_params(kind);
                params.d = config.d;
                if (config.max_step) params.max_step = *config.max_step;
                const GridEnvironment env(generate_map(kind, seed, size), params);
                const auto field = ExposureField::compute(env, config.workers);

                std::mt19937_64 rng(instance_seed(config.query_seed, inst));
                std::vector<std::optional<Query>> queries;
                for (std::size_t i = 0; i < config.queries; ++i)
                    queries.push_back(sample_query(env, rng, config.max_query_distance));

                std::vector<std::vector<ExperimentRecord>> per_query(queries.size());
                auto work = [&](std::size_t i) {
                    if (!queries[i]) {
                        for (const auto& cell : cells) {
                            ExperimentRecord rec;
                            rec.map_kind = std::string(map_kind_id(kind));
                            rec.map_seed = seed;
                            rec.resolution = size;
                            rec.algorithm = std::string(algorithm_id(cell.algorithm));
                            rec.tau = cell.tau;
                            rec.p_success = config.p_success;
                            rec.status = "error";
                            rec.error = "no reachable start/goal pair found";
                            per_query[i].push_back(std::move(rec));
                        }
                        return;
                    }
                    per_query[i] = run_query(config, inst, env, field, *queries[i], cells);
                };

                const unsigned workers = config.timing ? 1U : std::max(1U, config.workers);
                if (workers == 1) {
                    for (std::size_t i = 0; i < queries.size(); ++i) {
                        if (progress) progress(label + " query " + std::to_string(i + 1) + "/" + std::to_string(queries.size()));
                        work(i);
                    }
                } else {
                    std::vector<std::jthread> pool;
                    for (unsigned w = 0; w < workers; ++w)
                        pool.emplace_back([&, w] {
                            for (std::size_t i = w; i < queries.size(); i += workers) work(i);
                        });
                }
                for (auto& q : per_query)
                    for (auto& r : q) records.push_back(std::move(r));
            }
        }
    }
    return records;
}

// ---------------------------------------------------------------------------
// Serialization

std::string record_header_json() {
    json h;
    h["format"] = "shadowpath.experiment";
    h["version"] = kRecordFormatVersion;
    return h.dump();
}

std::string record_to_json(const ExperimentRecord& rec, bool include_timing) {
    json j;
    j["map"] = rec.map_kind;
    j["map_seed"] = rec.map_seed;
    j["resolution"] = rec.resolution;
    j["algorithm"] = rec.algorithm;
    j["params"] = {{"tau", rec.tau}, {"p_success", rec.p_success}, {"m", rec.movement_cost}};
    j["start"] = rec.start;
    j["goal"] = rec.goal;
    j["status"] = rec.status;
    j["path_length"] = rec.path_length;
    j["obj_bin"] = rec.obj_bin ? json(*rec.obj_bin) : json(nullptr);
    j["obj_acc"] = optional_json(rec.obj_acc);
    j["optimality_gap"] = optional_json(rec.optimality_gap);
    j["avg_width"] = optional_json(rec.avg_width);
    j["expanded"] = rec.expanded;
    if (include_timing) {
        j["duration_ms"] = rec.duration_ms;
        j["runtime_ratio"] = optional_json(rec.runtime_ratio);
    }
    if (!rec.error.empty()) j["error"] = rec.error;
    return j.dump();
}

void write_records_jsonl(std::ostream& out, const std::vector<ExperimentRecord>& records, bool include_timing) {
    out << record_header_json() << '\n';
    for (const auto& r : records) out << record_to_json(r, include_timing) << '\n';
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + (values[hi] - values[lo]) * frac;
}

void write_summary_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    out << "map,resolution,algorithm,tau,records,found,gap_count,gap_median,gap_q1,gap_q3,"
           "ratio_median,ratio_q1,ratio_q3,width_median,width_q1,width_q3\n";
    struct Group {
        std::string map;
        std::size_t resolution;
        std::string algorithm;
        std::uint32_t tau;
        std::size_t records = 0;
        std::size_t found = 0;
        std::vector<double> gaps{};
        std::vector<double> ratios{};
        std::vector<double> widths{};
    };
    std::vector<Group> groups;
    std::map<std::tuple<std::string, std::size_t, std::string, std::uint32_t>, std::size_t> index;
    for (const auto& r : records) {
        const auto key = std::make_tuple(r.map_kind, r.resolution, r.algorithm, r.tau);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, groups.size()).first;
            groups.push_back({r.map_kind, r.resolution, r.algorithm, r.tau});
        }
        auto& g = groups[it->second];
        ++g.records;
        if (r.status == "found") ++g.found;
        if (r.optimality_gap) g.gaps.push_back(*r.optimality_gap);
        if (r.runtime_ratio && r.status != "error") g.ratios.push_back(*r.runtime_ratio);
        if (r.avg_width) g.widths.push_back(*r.avg_width);
    }
    auto stat = [&](const std::vector<double>& v, double q) {
        if (v.empty()) return std::string{};
        std::ostringstream ss;
        ss.precision(6);
        ss << quantile(v, q);
        return ss.str();
    };
    for (const auto& g : groups) {
        out << g.map << ',' << g.resolution << ',' << g.algorithm << ',' << g.tau << ',' << g.records << ','
            << g.found << ',' << g.gaps.size() << ',' << stat(g.gaps, 0.5) << ',' << stat(g.gaps, 0.25) << ','
            << stat(g.gaps, 0.75) << ',' << stat(g.ratios, 0.5) << ',' << stat(g.ratios, 0.25) << ','
            << stat(g.ratios, 0.75) << ',' << stat(g.widths, 0.5) << ',' << stat(g.widths, 0.25) << ','
            << stat(g.widths, 0.75) << '\n';
    }
}

}  // namespace shadowpath
