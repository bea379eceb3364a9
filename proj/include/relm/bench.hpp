#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relm/dataset.hpp"
#include "relm/relm.hpp"

namespace relm {

inline constexpr int kReportSchemaVersion = 1;

enum class Algorithm { Elm, Relm };

Algorithm algorithm_from_name(const std::string& name);
const char* algorithm_name(Algorithm a);

/// Synthetic dataset request, as given on the command line or in a config
/// file.
struct GeneratorSpec {
    std::string kind;  // "stagger" | "hyperplane"
    int n = 500;
    int concept_id = 1;    // stagger
    int dims = 10;         // hyperplane
    double noise = 0.1;    // hyperplane
    std::uint64_t seed = 1;

    nlohmann::json to_json() const;
    static GeneratorSpec from_json(const nlohmann::json& doc);
};

/// One experiment: dataset source, algorithm, hyperparameters, repetition
/// protocol. Parsed from JSON; every field can be overridden by a CLI flag
/// (flags win).
struct ExperimentConfig {
    std::string data_path;    // CSV source, with
    std::string schema_path;  // its sidecar schema (JSON), or
    std::string schema_cols;  // an inline "name:type,..." schema
    std::optional<GeneratorSpec> generator;  // or a generator instead

    Algorithm algorithm = Algorithm::Relm;
    std::optional<int> L;  // fixed hidden-layer size; RELM falls back to the sizing rule
    SizingParams sizing;
    double ridge = 1000.0;
    double fusion_c = 0.5;
    ActivationKind activation = ActivationKind::Sigmoid;
    bool independent_banks = false;
    int repetitions = 10;
    double train_fraction = 0.7;
    bool stratified = false;
    std::uint64_t seed = 1;
    std::string out_path;

    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& doc);
    static ExperimentConfig from_json_file(const std::string& path);
    void validate() const;
};

struct RunResult {
    std::uint64_t seed = 0;
    double accuracy = 0.0;
    double train_seconds = 0.0;
    double predict_seconds = 0.0;
    int L_used = 0;
    int reduct_size = 0;
    bool reduct_fallback = false;
    bool degenerate_lower = false;
};

struct ExperimentReport {
    std::vector<RunResult> runs;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;  // population formula
    double mean_train_seconds = 0.0;
    double mean_predict_seconds = 0.0;
    nlohmann::json config_echo;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

struct ReductionReport {
    int before = 0;
    int after = 0;
    int reduced = 0;
    double ratio = 0.0;  // reduced / before
    std::vector<std::string> members;
    bool fallback = false;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// Loads the CSV or runs the generator named by the config.
Dataset resolve_dataset(const ExperimentConfig& config);

/// Repeated seeded split/train/evaluate runs; repetition r uses seed
/// config.seed + r for both the split and the training call. Timing uses a
/// monotonic clock and excludes dataset loading and report I/O.
ExperimentReport run_benchmark(const ExperimentConfig& config, const Dataset& data);

/// Discretize + reduce only; the before/after attribute counts.
ReductionReport run_reduce(const Dataset& data);

/// Structural check against the published report schema
/// (docs/report.schema.json). Returns false and fills `why` on the first
/// violation.
bool validate_report_json(const nlohmann::json& doc, std::string* why = nullptr);

/// Fraction of rows where prediction equals the recorded label code.
double accuracy_of(const std::vector<int>& predicted, const std::vector<int>& actual);

}  // namespace relm
