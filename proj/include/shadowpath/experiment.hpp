#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shadowpath/bench.hpp"
#include "shadowpath/search.hpp"

namespace shadowpath {

/// Saturation thresholds swept by default.
inline const std::vector<std::uint32_t> kDefaultTauSweep = {1, 2, 3, 4, 5, 10, 15, 20, 25, 50, 100, 200};

struct ExperimentConfig {
    std::vector<MapKind> maps{MapKind::Boxes, MapKind::Hills};
    std::vector<std::size_t> sizes{50};
    std::vector<std::uint64_t> seeds{1};
    /// Queries per generated map.
    std::size_t queries = 10;
    std::vector<Algorithm> algorithms{Algorithm::Shortest, Algorithm::ExposureScore, Algorithm::Binary,
                                      Algorithm::Saturation, Algorithm::Exact};
    std::vector<std::uint32_t> taus = kDefaultTauSweep;
    double p_success = kDefaultSuccessProbability;
    std::size_t budget = kDefaultExactBudget;
    double d = kBenchOffset;
    /// Overrides the per-family climbing limit from bench_params when set.
    std::optional<double> max_step;
    std::uint64_t query_seed = 1;
    /// Reject start/goal pairs farther apart than this many grid steps; 0 disables.
    std::size_t max_query_distance = 0;
    bool corridors = true;
    /// Timing runs execute sequentially regardless of `workers`.
    bool timing = true;
    unsigned workers = 1;
};

/// Raised for unparseable or out-of-range configuration; names the key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Parses flat "key = value" text; '#' starts a comment, lists are comma-separated.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig parse_experiment_config_text(const std::string& text);

struct ExperimentRecord {
    std::string map_kind;
    std::uint64_t map_seed = 0;
    std::size_t resolution = 0;
    std::string algorithm;
    std::uint32_t tau = 1;
    double p_success = kDefaultSuccessProbability;
    double movement_cost = 0.0;
    RegionId start = 0;
    RegionId goal = 0;
    std::string status;
    std::size_t path_length = 0;
    std::optional<std::size_t> obj_bin;
    std::optional<double> obj_acc;
    std::optional<double> optimality_gap;
    std::optional<double> avg_width;
    std::size_t expanded = 0;
    // Wall-clock fields; excluded from determinism comparisons.
    double duration_ms = 0.0;
    std::optional<double> runtime_ratio;
    std::string error;
};

/// Number of (algorithm, parameter) cells per query.
std::size_t cells_per_query(const ExperimentConfig& config);

using ProgressFn = std::function<void(const std::string&)>;

/// One record per (map, query, algorithm cell), ordered by map, query and
/// then the configured algorithm order. Per-cell failures are recorded in
/// the row and never abort the batch.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config, const ProgressFn& progress = {});

inline constexpr int kRecordFormatVersion = 1;

std::string record_header_json();
std::string record_to_json(const ExperimentRecord& rec, bool include_timing = true);
void write_records_jsonl(std::ostream& out, const std::vector<ExperimentRecord>& records, bool include_timing = true);

/// Median and quartiles of gap, runtime ratio and corridor width per
/// (map kind, resolution, algorithm, tau).
void write_summary_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

/// Linear-interpolated quantile of an unsorted sample; NaN when empty.
double quantile(std::vector<double> values, double q);

}  // namespace shadowpath
