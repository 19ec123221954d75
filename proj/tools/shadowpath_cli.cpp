// shadowpath: command-line front end for exposure-minimizing path planning.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or input error,
// 3 no path, 4 exact-search budget exceeded. Machine-readable output goes
// to stdout; diagnostics go to stderr.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shadowpath/bench.hpp"
#include "shadowpath/corridor.hpp"
#include "shadowpath/experiment.hpp"
#include "shadowpath/io.hpp"
#include "shadowpath/render.hpp"
#include "shadowpath/report.hpp"
#include "shadowpath/search.hpp"
#include "shadowpath/terrain.hpp"

namespace fs = std::filesystem;
using namespace shadowpath;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoPath = 3;
constexpr int kExitBudget = 4;

constexpr std::string_view kFixturePrefix = "fixture:";

/// Input the user got wrong; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MapOptions {
    std::string map;
    double d = 1.0;
    std::string max_step = "inf";
    int connectivity = 4;
    bool no_cache = false;
    std::string field_file;
};

void add_map_options(CLI::App* cmd, MapOptions& opt) {
    cmd->add_option("--map", opt.map, "Heightmap file, or fixture:lemma1 for the built-in 13-position graph")
        ->required();
    cmd->add_option("--d", opt.d, "Camera offset above the surface")->capture_default_str();
    cmd->add_option("--max-step", opt.max_step, "Largest climbable elevation change ('inf' for unlimited)")
        ->capture_default_str();
    cmd->add_option("--connectivity", opt.connectivity, "4 or 8 neighbors")
        ->check(CLI::IsMember({4, 8}))
        ->capture_default_str();
    cmd->add_flag("--no-cache", opt.no_cache, "Do not read or write the exposure field cache");
}

double parse_max_step(const std::string& text) {
    if (text == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !(v >= 0.0)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError("--max-step must be a non-negative number or 'inf', got '" + text + "'");
    }
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + p.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Loaded map: either a terrain grid or the hand-built fixture graph.
struct LoadedMap {
    std::optional<GridEnvironment> env;
    std::optional<FixtureGraph> fixture;
    ExposureField field;

    const TraversabilityGraph& graph() const { return env ? env->graph() : fixture->graph; }
    std::vector<std::string> names() const { return fixture ? fixture->names : std::vector<std::string>{}; }

    RegionId parse_region(const std::string& text) const {
        if (fixture) {
            try {
                return fixture->id(text);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }
        const auto comma = text.find(',');
        if (comma == std::string::npos) throw UsageError("expected 'row,col', got '" + text + "'");
        std::size_t row = 0;
        std::size_t col = 0;
        try {
            std::size_t used = 0;
            row = std::stoul(text.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument(text);
            const auto rest = text.substr(comma + 1);
            col = std::stoul(rest, &used);
            if (used != rest.size()) throw std::invalid_argument(text);
        } catch (const std::exception&) {
            throw UsageError("expected 'row,col', got '" + text + "'");
        }
        if (row >= env->height() || col >= env->width())
            throw UsageError("cell '" + text + "' is outside the " + std::to_string(env->height()) + "x" +
                             std::to_string(env->width()) + " map");
        return env->index(row, col);
    }

    std::string describe(RegionId r) const {
        if (fixture) return fixture->names[r];
        return std::to_string(env->row(r)) + "," + std::to_string(env->col(r));
    }
};

fs::path cache_path_for(const fs::path& map, std::uint64_t key) {
    std::ostringstream name;
    name << map.filename().string() << '.' << std::hex << key << ".expf";
    return map.parent_path() / name.str();
}

void remove_stale_caches(const fs::path& map, const fs::path& keep) {
    const auto dir = map.parent_path().empty() ? fs::path(".") : map.parent_path();
    const auto prefix = map.filename().string() + ".";
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        const auto name = entry.path().filename().string();
        if (name.starts_with(prefix) && name.ends_with(".expf") && entry.path().filename() != keep.filename())
            fs::remove(entry.path(), ec);
    }
}

LoadedMap load_map(const MapOptions& opt) {
    LoadedMap m;
    if (opt.map.starts_with(kFixturePrefix)) {
        if (opt.map != "fixture:lemma1") throw UsageError("unknown fixture '" + opt.map + "'");
        m.fixture = lemma1_fixture();
        m.field = m.fixture->field;
        return m;
    }
    const fs::path map_path(opt.map);
    const std::string bytes = read_file(map_path);
    Heightmap hm;
    try {
        std::istringstream in(bytes);
        hm = read_heightmap(in);
    } catch (const FormatError& e) {
        throw UsageError(e.what());
    }
    EnvironmentParams params;
    params.d = opt.d;
    params.max_step = parse_max_step(opt.max_step);
    params.connectivity = opt.connectivity == 8 ? Connectivity::Eight : Connectivity::Four;
    try {
        m.env.emplace(std::move(hm), params);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    if (!opt.field_file.empty()) {
        try {
            m.field = load_field_cache(opt.field_file);
        } catch (const FormatError& e) {
            throw UsageError(e.what());
        }
        if (m.field.size() != m.env->size())
            throw UsageError("field cache has " + std::to_string(m.field.size()) + " regions but the map has " +
                             std::to_string(m.env->size()));
        return m;
    }

    // Line of sight depends on the heightmap and d only.
    std::ostringstream salt;
    salt << "d=" << opt.d;
    const auto key = fnv1a64(salt.str(), fnv1a64(bytes));
    const auto cache = cache_path_for(map_path, key);
    if (!opt.no_cache && fs::exists(cache)) {
        try {
            m.field = load_field_cache(cache);
            if (m.field.size() == m.env->size()) return m;
        } catch (const std::exception& e) {
            std::cerr << "warning: ignoring unreadable cache " << cache << ": " << e.what() << '\n';
        }
    }
    m.field = ExposureField::compute(*m.env);
    if (!opt.no_cache) {
        try {
            save_field_cache(cache, m.field);
            remove_stale_caches(map_path, cache);
        } catch (const std::exception& e) {
            std::cerr << "warning: could not write cache " << cache << ": " << e.what() << '\n';
        }
    }
    return m;
}

Path parse_path(const LoadedMap& m, const std::string& text) {
    Path path;
    std::string normalized = text;
    for (auto& ch : normalized)
        if (ch == ';' || ch == '\n' || ch == '\r' || ch == '\t') ch = ' ';
    std::istringstream ss(normalized);
    std::string tok;
    while (ss >> tok) {
        if (m.fixture) {
            // Fixture paths may be written "F,C,B" or "FCB".
            for (char c : tok)
                if (c != ',' && c != '-' && c != '>') path.push_back(m.parse_region(std::string(1, c)));
        } else {
            path.push_back(m.parse_region(tok));
        }
    }
    if (path.empty()) throw UsageError("path is empty");
    return path;
}

void validate_path(const LoadedMap& m, const Path& path) {
    if (auto bad = first_invalid_transition(m.graph(), path))
        throw UsageError("path is not traversable: step " + std::to_string(*bad) + " (" + m.describe(path[*bad]) +
                         " -> " + m.describe(path[*bad + 1]) + ")");
}

// ---------------------------------------------------------------------------

struct GenOptions {
    std::string kind;
    std::uint64_t seed = 1;
    std::size_t size = 50;
    std::string out;
};

int cmd_gen(const GenOptions& opt) {
    Heightmap hm;
    try {
        hm = opt.kind == "boxes" ? gen_boxes(opt.seed, opt.size) : gen_hills(opt.seed, opt.size);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    save_heightmap(opt.out, hm);
    std::cerr << "wrote " << opt.kind << ' ' << hm.width << 'x' << hm.height << " map to " << opt.out << '\n';
    return kExitOk;
}

int cmd_field(const MapOptions& opt, const std::string& out) {
    const auto m = load_map(opt);
    if (!out.empty()) save_field_cache(out, m.field);
    std::cout << "{\"regions\":" << m.field.size() << ",\"min_exposure_score\":" << m.field.min_exposure_score()
              << "}\n";
    return kExitOk;
}

struct PlanOptions {
    std::string algorithm;
    std::string start;
    std::string goal;
    std::uint32_t tau = 1;
    double p_success = kDefaultSuccessProbability;
    double m = 0.0;
    std::size_t budget = kDefaultExactBudget;
};

int cmd_plan(const MapOptions& mopt, const PlanOptions& opt) {
    const auto alg = parse_algorithm(opt.algorithm);
    if (!alg) throw UsageError("unknown algorithm '" + opt.algorithm + "'");
    if (opt.tau < 1) throw UsageError("--tau must be >= 1");
    if (!(opt.p_success > 0.0 && opt.p_success < 1.0)) throw UsageError("--p-success must lie in (0, 1)");
    if (opt.budget == 0) throw UsageError("--budget must be positive");
    const auto m = load_map(mopt);
    const auto start = m.parse_region(opt.start);
    const auto goal = m.parse_region(opt.goal);
    PlannerConfig pc;
    pc.tau = opt.tau;
    pc.p_success = opt.p_success;
    pc.movement_cost = opt.m;
    pc.node_budget = opt.budget;
    PlanReport rep;
    try {
        rep = run_plan_report(*alg, m.graph(), m.field, start, goal, pc);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::cout << plan_report_json(rep, m.names()) << '\n';
    switch (rep.result.status) {
        case PlanStatus::Found: return kExitOk;
        case PlanStatus::NoPath: std::cerr << "no traversable path\n"; return kExitNoPath;
        case PlanStatus::BudgetExceeded: std::cerr << "node budget exceeded\n"; return kExitBudget;
    }
    return kExitFailure;
}

struct CorridorArgs {
    std::string path;
    std::string path_file;
    std::string out;
    std::string render;
    bool reachable = false;
};

Path path_from_options(const LoadedMap& m, const std::string& inline_path, const std::string& file) {
    if (!inline_path.empty() && !file.empty()) throw UsageError("give either --path or --path-file, not both");
    if (inline_path.empty() && file.empty()) throw UsageError("a path is required (--path or --path-file)");
    return parse_path(m, inline_path.empty() ? read_file(file) : inline_path);
}

int cmd_corridor(const MapOptions& mopt, const CorridorArgs& opt) {
    const auto m = load_map(mopt);
    const auto path = path_from_options(m, opt.path, opt.path_file);
    validate_path(m, path);
    const auto c = build_corridor(m.graph(), m.field, path, {opt.reachable});
    const auto record = corridor_json(c, m.names());
    if (!opt.out.empty()) {
        std::ofstream out(opt.out);
        if (!out) throw std::runtime_error("cannot write '" + opt.out + "'");
        out << record << '\n';
    }
    std::cout << record << '\n';
    if (!opt.render.empty()) {
        if (!m.env) throw UsageError("rendering needs a heightmap, not a fixture graph");
        auto img = render_exposure(m.env->width(), m.env->height(), m.field);
        overlay_corridor(img, c.regions);
        overlay_path(img, path);
        save_pgm(opt.render, img);
    }
    return kExitOk;
}

struct RenderArgs {
    std::string path;
    std::string path_file;
    bool corridor = false;
    std::string out;
};

int cmd_render(const MapOptions& mopt, const RenderArgs& opt) {
    if (mopt.map.starts_with(kFixturePrefix)) throw UsageError("rendering needs a heightmap, not a fixture graph");
    const auto m = load_map(mopt);
    auto img = render_exposure(m.env->width(), m.env->height(), m.field);
    if (!opt.path.empty() || !opt.path_file.empty()) {
        const auto path = path_from_options(m, opt.path, opt.path_file);
        if (opt.corridor) {
            validate_path(m, path);
            overlay_corridor(img, corridor(m.field, exposed_set(m.field, path)));
        }
        overlay_path(img, path);
    } else if (opt.corridor) {
        throw UsageError("--corridor needs a seed path");
    }
    save_pgm(opt.out, img);
    return kExitOk;
}

int cmd_experiment(const std::string& config_file, const std::string& out_dir, unsigned workers) {
    ExperimentConfig cfg;
    {
        std::ifstream in(config_file);
        if (!in) throw UsageError("cannot open config '" + config_file + "'");
        cfg = parse_experiment_config(in);
    }
    if (workers != 0) cfg.workers = workers;
    fs::create_directories(out_dir);
    const auto records = run_experiment(cfg, [](const std::string& msg) { std::cerr << msg << '\n'; });
    {
        std::ofstream out(fs::path(out_dir) / "records.jsonl", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write records.jsonl");
        write_records_jsonl(out, records);
    }
    {
        std::ofstream out(fs::path(out_dir) / "summary.csv", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write summary.csv");
        write_summary_csv(out, records);
    }
    std::cerr << "wrote " << records.size() << " records to " << out_dir << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exposure-minimizing path planning on heightmaps"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a benchmark heightmap");
    gen_cmd->add_option("kind", gen.kind, "boxes or hills")->required()->check(CLI::IsMember({"boxes", "hills"}));
    gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
    gen_cmd->add_option("--size", gen.size, "Grid side length in cells")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Output heightmap file")->required();

    MapOptions field_map;
    std::string field_out;
    auto* field_cmd = app.add_subcommand("field", "Compute (and cache) the exposure field of a map");
    add_map_options(field_cmd, field_map);
    field_cmd->add_option("--out", field_out, "Also write the field to this EXPF file");

    MapOptions plan_map;
    PlanOptions plan;
    auto* plan_cmd = app.add_subcommand("plan", "Plan a path and print its result record as JSON");
    add_map_options(plan_cmd, plan_map);
    plan_cmd->add_option("--field", plan_map.field_file, "Use this EXPF exposure field instead of computing one");
    plan_cmd->add_option("--alg", plan.algorithm, "shortest | exposure_score | binary | saturation | exact")
        ->required();
    plan_cmd->add_option("--start", plan.start, "Start cell 'row,col' (or fixture position name)")->required();
    plan_cmd->add_option("--goal", plan.goal, "Goal cell 'row,col' (or fixture position name)")->required();
    plan_cmd->add_option("--tau", plan.tau, "Saturation threshold")->capture_default_str();
    plan_cmd->add_option("--p-success", plan.p_success, "Probability of success per exposure")->capture_default_str();
    plan_cmd->add_option("--m", plan.m, "A* Binary movement cost (default 1/(2n))");
    plan_cmd->add_option("--budget", plan.budget, "Exact-search expansion budget")->capture_default_str();

    MapOptions corr_map;
    CorridorArgs corr;
    auto* corr_cmd = app.add_subcommand("corridor", "Equal-exposure corridor of a seed path");
    add_map_options(corr_cmd, corr_map);
    corr_cmd->add_option("--field", corr_map.field_file, "Use this EXPF exposure field");
    corr_cmd->add_option("--path", corr.path, "Inline path: 'r,c;r,c;...' (fixture: 'F,C,B')");
    corr_cmd->add_option("--path-file", corr.path_file, "File holding the path in the inline syntax");
    corr_cmd->add_option("--out", corr.out, "Also write the corridor record to this file");
    corr_cmd->add_option("--render", corr.render, "Write a PGM overlay of path and corridor");
    corr_cmd->add_flag("--reachable", corr.reachable, "Keep only corridor cells reachable from the path");

    MapOptions render_map;
    RenderArgs render;
    auto* render_cmd = app.add_subcommand(
        "render", "Render exposure scores as a PGM image (darker = more exposed; path black, corridor white)");
    add_map_options(render_cmd, render_map);
    render_cmd->add_option("--field", render_map.field_file, "Use this EXPF exposure field");
    render_cmd->add_option("--path", render.path, "Inline path overlay");
    render_cmd->add_option("--path-file", render.path_file, "Path overlay file");
    render_cmd->add_flag("--corridor", render.corridor, "Also overlay the corridor of the path");
    render_cmd->add_option("--out", render.out, "Output PGM file")->required();

    std::string config_file;
    std::string out_dir;
    unsigned workers = 0;
    auto* exp_cmd = app.add_subcommand("experiment", "Run a benchmark batch; writes records.jsonl and summary.csv");
    exp_cmd->add_option("--config", config_file, "Key-value config file")->required();
    exp_cmd->add_option("--out-dir", out_dir, "Output directory")->required();
    exp_cmd->add_option("--workers", workers, "Worker threads for untimed batches (overrides config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cerr, std::cerr);
        return kExitUsage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen);
        if (*field_cmd) return cmd_field(field_map, field_out);
        if (*plan_cmd) return cmd_plan(plan_map, plan);
        if (*corr_cmd) return cmd_corridor(corr_map, corr);
        if (*render_cmd) return cmd_render(render_map, render);
        if (*exp_cmd) return cmd_experiment(config_file, out_dir, workers);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
