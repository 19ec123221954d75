#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shadowpath/search.hpp"
#include "shadowpath/terrain.hpp"

namespace shadowpath {

/// Climbing capability used on Boxes maps so box walls block movement.
/// Hills maps use the unlimited default.
inline constexpr double kBenchMaxStep = 1.0;

/// Camera height above the surface for benchmark maps.
inline constexpr double kBenchOffset = 1.0;

/// Smallest grid the generators accept.
inline constexpr std::size_t kMinGeneratedSize = 10;

/// Flat plane at elevation 0 with non-overlapping rectangular boxes tall
/// enough to block both movement and sight. Deterministic per seed.
/// Throws std::invalid_argument when `size` is below kMinGeneratedSize.
Heightmap gen_boxes(std::uint64_t seed, std::size_t size);

struct HillsParams {
    /// Bump height multiplier; 0 yields a flat map.
    double amplitude = 1.0;
};

/// Sum of randomly placed Gaussian bumps. Fully traversable under the
/// default unlimited max_step. Deterministic per seed.
Heightmap gen_hills(std::uint64_t seed, std::size_t size, HillsParams params = {});

enum class MapKind : std::uint8_t { Boxes, Hills };
std::string_view map_kind_id(MapKind k);
Heightmap generate_map(MapKind kind, std::uint64_t seed, std::size_t size);

/// Environment parameters the benchmark uses for each map family.
EnvironmentParams bench_params(MapKind kind);

/// Hand-built 13-region graph (positions A..M) whose exposure relation
/// reproduces the counterexample to optimal substructure: the best F->H
/// path exposes 12 positions, its F->E prefix 11, its E->H suffix 10, while
/// the best F->E path on its own exposes only 9.
struct FixtureGraph {
    std::vector<std::string> names;
    TraversabilityGraph graph;
    ExposureField field;

    /// Region for a position name ("A".."M"); throws std::invalid_argument otherwise.
    RegionId id(std::string_view name) const;
    Path path(std::string_view names_in_order) const;
};

FixtureGraph lemma1_fixture();

enum class OracleStatus : std::uint8_t { Ok, NoPath, Overflow };

struct OracleResult {
    OracleStatus status = OracleStatus::NoPath;
    std::size_t min_exposure = 0;
    Path best_path;
    std::size_t paths_enumerated = 0;
};

/// Minimum binary exposure over every simple traversable path from start to
/// goal with at most `max_path_len` regions, by exhaustive depth-first
/// enumeration. Reports Overflow once more than `step_limit` DFS steps run.
OracleResult brute_force_min_exposure(const TraversabilityGraph& graph, const ExposureField& field, RegionId start,
                                      RegionId goal, std::size_t max_path_len, std::size_t step_limit = 50'000'000);

/// Extra percentage of the map exposed relative to the optimum.
double optimality_gap(std::size_t exposed_alg, std::size_t exposed_exact, std::size_t n);

}  // namespace shadowpath
