#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relm/errors.hpp"

namespace relm {

enum class ColumnRole { Numeric, Categorical, Label };

/// Typed column layout of a CSV file: every column is a numeric feature, a
/// categorical feature, or the single label column.
struct DatasetSchema {
    struct Column {
        std::string name;
        ColumnRole role;
    };
    std::vector<Column> columns;

    int label_index() const;
    /// Throws Error unless there is exactly one label column, at least one
    /// feature column, and names are unique. `allow_missing_label` relaxes
    /// the label rule to "at most one" for feature-only files.
    void validate(bool allow_missing_label = false) const;

    static DatasetSchema from_json_text(const std::string& text);
    static DatasetSchema from_json_file(const std::string& path);
    /// Inline form used on the command line: "x:numeric,color:categorical,y:label".
    static DatasetSchema from_spec_string(const std::string& text);
    std::string to_json_text() const;
};

/// One feature column; `numeric` or `categories` is populated depending on
/// the type, the other stays empty.
struct FeatureColumn {
    std::string name;
    ColumnRole type = ColumnRole::Numeric;  // Numeric or Categorical
    std::vector<double> numeric;
    std::vector<std::string> categories;
};

/// Column-typed in-memory dataset: feature columns plus one label column
/// (stored as class codes against `class_labels`, first-appearance order).
/// Feature-only files loaded for prediction leave the label side empty.
struct Dataset {
    std::vector<FeatureColumn> features;
    std::string label_name = "label";
    std::vector<std::string> class_labels;
    std::vector<int> label_codes;

    bool has_labels() const { return !label_codes.empty(); }
    int n_rows() const {
        if (has_labels()) return static_cast<int>(label_codes.size());
        if (features.empty()) return 0;
        const auto& col = features.front();
        return static_cast<int>(col.type == ColumnRole::Numeric ? col.numeric.size()
                                                                : col.categories.size());
    }
    int n_features() const { return static_cast<int>(features.size()); }
    int n_classes() const { return static_cast<int>(class_labels.size()); }
    const std::string& label_of(int row) const {
        return class_labels[static_cast<std::size_t>(label_codes[static_cast<std::size_t>(row)])];
    }

    Dataset select_rows(const std::vector<int>& rows) const;
    DatasetSchema schema() const;
};

/// RFC-4180-style CSV reader (quotes, embedded commas/newlines, CRLF). The
/// header row is required and must match the schema's column names. Missing
/// markers ("?" or empty cell) become the dedicated category "<missing>" in
/// categorical columns and the column mean of the present values in numeric
/// columns (0 when the whole column is missing).
Dataset load_csv(const std::string& path, const DatasetSchema& schema);

/// Canonical CSV serialization: header, then one row per sample, label last.
/// Numeric cells use shortest round-trip formatting.
std::string to_csv(const Dataset& data);
void write_csv(const Dataset& data, const std::string& path);

/// FNV-1a 64 over the canonical CSV bytes; the golden checksum printed by
/// the generate command and frozen in tests.
std::uint64_t dataset_checksum(const Dataset& data);

/// STAGGER concept task: three categorical attributes
/// color in {green, blue, red}, shape in {triangle, circle, rectangle},
/// size in {small, medium, large}, sampled uniformly. Binary label by
/// concept: 1 = (color=red and size=small), 2 = (color=green or
/// shape=circle), 3 = (size=medium or size=large). No label noise.
Dataset gen_stagger(int n, int concept_id, std::uint64_t seed);

/// Rotating-hyperplane task: d numeric attributes uniform on [-10, 10],
/// weights uniform on [0, 1] drawn once per dataset, threshold at half the
/// weight sum; positive iff the weighted sum reaches the threshold. Labels
/// flip independently with probability `noise`. Identical (n, d, seed) give
/// identical points and weights regardless of the noise setting.
Dataset gen_hyperplane(int n, int d, double noise, std::uint64_t seed);

struct SplitSpec {
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
    bool stratified = false;
};

/// Seeded shuffle then cut. Stratified mode shuffles and cuts each class
/// separately, preserving class ratios within one sample per class.
std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec);

}  // namespace relm
