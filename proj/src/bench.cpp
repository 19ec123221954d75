#include "shadowpath/bench.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace shadowpath {

namespace {

void check_size(std::size_t size) {
    if (size < kMinGeneratedSize)
        throw std::invalid_argument("map size " + std::to_string(size) + " is below the minimum of " +
                                    std::to_string(kMinGeneratedSize));
}

// Uniform helpers written against the raw engine output so generated maps
// do not depend on the standard library's distribution implementations.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(hi - lo + 1));
}

}  // namespace

Heightmap gen_boxes(std::uint64_t seed, std::size_t size) {
    check_size(size);
    std::mt19937_64 rng(seed);
    Heightmap map(size, size, 1.0, 0.0);
    // Occupancy including a one-cell moat around every box keeps lanes open.
    std::vector<char> blocked(size * size, 0);

    // Sparse enough that most of the plain stays open and mutually visible.
    const std::size_t target = std::max<std::size_t>(2, size * size / 400);
    const std::size_t max_side = std::max<std::size_t>(3, size / 7);
    std::size_t placed = 0;
    for (std::size_t attempt = 0; attempt < target * 50 && placed < target; ++attempt) {
        const auto w = uniform_index(rng, 2, max_side);
        const auto h = uniform_index(rng, 2, max_side);
        if (w >= size - 2 || h >= size - 2) continue;
        const auto c0 = uniform_index(rng, 1, size - 1 - w);
        const auto r0 = uniform_index(rng, 1, size - 1 - h);
        const double top = 3.0 + 4.0 * uniform01(rng);

        bool clear = true;
        for (std::size_t r = r0; r < r0 + h && clear; ++r)
            for (std::size_t c = c0; c < c0 + w && clear; ++c) clear = blocked[r * size + c] == 0;
        if (!clear) continue;

        for (std::size_t r = r0 - 1; r <= std::min(size - 1, r0 + h); ++r)
            for (std::size_t c = c0 - 1; c <= std::min(size - 1, c0 + w); ++c) blocked[r * size + c] = 1;
        for (std::size_t r = r0; r < r0 + h; ++r)
            for (std::size_t c = c0; c < c0 + w; ++c) map.at(r, c) = top;
        ++placed;
    }
    if (placed == 0) throw std::invalid_argument("map size too small to place any box");
    return map;
}

Heightmap gen_hills(std::uint64_t seed, std::size_t size, HillsParams params) {
    check_size(size);
    if (!(params.amplitude >= 0.0)) throw std::invalid_argument("hill amplitude must be non-negative");
    std::mt19937_64 rng(seed);
    Heightmap map(size, size, 1.0, 0.0);
    const auto fsize = static_cast<double>(size);
    const double narrow = std::max(1.5, fsize / 25.0);
    const double wide = std::max(narrow, fsize / 10.0);

    const std::size_t bumps = 3 + size / 2;
    for (std::size_t b = 0; b < bumps; ++b) {
        const double cx = uniform01(rng) * fsize;
        const double cy = uniform01(rng) * fsize;
        const double sigma = narrow + uniform01(rng) * (wide - narrow);
        // Peaks between one and two widths tall give hill flanks that shadow
        // the valleys behind them.
        const double peak = params.amplitude * (1.0 + uniform01(rng)) * sigma;
        const double inv = 1.0 / (2.0 * sigma * sigma);
        for (std::size_t r = 0; r < size; ++r) {
            for (std::size_t c = 0; c < size; ++c) {
                const double dx = static_cast<double>(c) + 0.5 - cx;
                const double dy = static_cast<double>(r) + 0.5 - cy;
                map.at(r, c) += peak * std::exp(-(dx * dx + dy * dy) * inv);
            }
        }
    }
    return map;
}

std::string_view map_kind_id(MapKind k) { return k == MapKind::Boxes ? "boxes" : "hills"; }

Heightmap generate_map(MapKind kind, std::uint64_t seed, std::size_t size) {
    return kind == MapKind::Boxes ? gen_boxes(seed, size) : gen_hills(seed, size);
}

EnvironmentParams bench_params(MapKind kind) {
    EnvironmentParams params;
    params.d = kBenchOffset;
    if (kind == MapKind::Boxes) params.max_step = kBenchMaxStep;
    return params;
}

// ---------------------------------------------------------------------------
// Counterexample fixture
//
// Layout (x = column, y = row); '#' blocks sight and movement, while the
// G|A and L|E borders block movement only.
//
//        0   1   2   3   4
//   0        G | A   B   C
//   1    K   H   D   #   F
//   2    M   L | E   I   J

FixtureGraph lemma1_fixture() {
    FixtureGraph fx;
    fx.names = {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M"};
    const std::vector<std::pair<double, double>> xy = {
        {2, 0}, {3, 0}, {4, 0}, {2, 1}, {2, 2}, {4, 1}, {1, 0}, {1, 1}, {3, 2}, {4, 2}, {0, 1}, {1, 2}, {0, 2},
    };
    std::vector<Point3> points;
    for (auto [x, y] : xy) points.push_back({x + 0.5, y + 0.5, kBenchOffset});

    auto id = [&](char c) { return static_cast<RegionId>(c - 'A'); };
    std::vector<std::vector<RegionId>> adjacency(13);
    const char* moves[] = {"AB", "BC", "CF", "FJ", "JI", "IE", "ED", "DA", "DH", "HG", "HK", "HL", "LM", "KM"};
    for (const char* m : moves) {
        adjacency[id(m[0])].push_back(id(m[1]));
        adjacency[id(m[1])].push_back(id(m[0]));
    }
    fx.graph = TraversabilityGraph(std::move(points), adjacency, 1.0, Connectivity::Four);

    const char* sight[] = {"ABD", "BAC", "CBFJ", "DEAHIJ", "EIDH", "FCJ", "GHJK",
                           "HDEIGKLM", "IJEHLMD", "JFIGKCD", "KJHG", "LIHM", "MIHL"};
    std::vector<RegionSet> rows(13, RegionSet(13));
    for (std::size_t i = 0; i < 13; ++i)
        for (const char* p = sight[i]; *p != '\0'; ++p) rows[i].set(id(*p));
    fx.field = ExposureField(std::move(rows));
    return fx;
}

RegionId FixtureGraph::id(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<RegionId>(i);
    throw std::invalid_argument("unknown fixture position '" + std::string(name) + "'");
}

Path FixtureGraph::path(std::string_view names_in_order) const {
    Path p;
    for (char c : names_in_order) {
        if (c == ' ' || c == ',' || c == '-' || c == '>') continue;
        p.push_back(id(std::string_view(&c, 1)));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Brute-force oracle. Tracks per-region sighting counts over the current
// DFS path instead of set unions, so it shares no code with the planners.

namespace {

struct Enumerator {
    const TraversabilityGraph& graph;
    const ExposureField& field;
    RegionId goal;
    std::size_t max_len;
    std::size_t step_limit;

    std::vector<int> seen_by{};
    std::vector<char> on_path{};
    Path path{};
    std::size_t exposed = 0;
    std::size_t steps = 0;
    bool overflow = false;
    OracleResult result{};

    void push(RegionId r) {
        path.push_back(r);
        on_path[r] = 1;
        for (RegionId j = 0; j < field.size(); ++j)
            if (field.visible(r, j) && seen_by[j]++ == 0) ++exposed;
    }
    void pop() {
        const auto r = path.back();
        path.pop_back();
        on_path[r] = 0;
        for (RegionId j = 0; j < field.size(); ++j)
            if (field.visible(r, j) && --seen_by[j] == 0) --exposed;
    }

    void dfs() {
        if (overflow) return;
        if (++steps > step_limit) {
            overflow = true;
            return;
        }
        const auto here = path.back();
        if (here == goal) {
            ++result.paths_enumerated;
            if (result.status != OracleStatus::Ok || exposed < result.min_exposure) {
                result.status = OracleStatus::Ok;
                result.min_exposure = exposed;
                result.best_path = path;
            }
            return;
        }
        if (path.size() >= max_len) return;
        for (auto nb : graph.neighbors(here)) {
            if (on_path[nb]) continue;
            push(nb);
            dfs();
            pop();
        }
    }
};

}  // namespace

OracleResult brute_force_min_exposure(const TraversabilityGraph& graph, const ExposureField& field, RegionId start,
                                      RegionId goal, std::size_t max_path_len, std::size_t step_limit) {
    const auto n = graph.size();
    if (field.size() != n) throw std::invalid_argument("exposure field size does not match graph");
    if (start >= n || goal >= n) throw std::out_of_range("oracle endpoint out of range");
    if (max_path_len == 0) throw std::invalid_argument("max_path_len must be positive");
    Enumerator e{graph, field, goal, max_path_len, step_limit};
    e.seen_by.assign(n, 0);
    e.on_path.assign(n, 0);
    e.push(start);
    e.dfs();
    if (e.overflow) {
        e.result.status = OracleStatus::Overflow;
        e.result.best_path.clear();
    }
    return e.result;
}

double optimality_gap(std::size_t exposed_alg, std::size_t exposed_exact, std::size_t n) {
    if (n == 0) throw std::invalid_argument("optimality_gap: region count must be positive");
    return 100.0 * (static_cast<double>(exposed_alg) - static_cast<double>(exposed_exact)) / static_cast<double>(n);
}

}  // namespace shadowpath
