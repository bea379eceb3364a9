#pragma once

#include <Eigen/Core>
#include <string>
#include <variant>
#include <vector>

#include "relm/dataset.hpp"
#include "relm/decision_table.hpp"

namespace relm {

/// Equal-interval bins over the training range of a numeric attribute.
/// Bins are half-open; the maximum value falls into the last bin, values
/// outside the range clamp to the nearest edge bin.
struct NumericBins {
    double min = 0.0;
    double max = 0.0;
    int n_bins = 1;
};

/// First-appearance category codes of a categorical attribute. Code =
/// position in `categories`; unseen values at apply time get the reserved
/// overflow code categories.size(), so the declared cardinality is
/// categories.size() + 1.
struct CategoryCodes {
    std::vector<std::string> categories;
};

/// Per-attribute coding fitted on training rows only. Immutable after fit.
struct DiscretizationSpec {
    struct Attribute {
        std::string name;
        std::variant<NumericBins, CategoryCodes> coding;
    };
    std::vector<Attribute> attributes;

    int n_attributes() const { return static_cast<int>(attributes.size()); }
    int cardinality(int attr) const;
    bool is_numeric(int attr) const;

    std::string to_json_text() const;
    static DiscretizationSpec from_json_text(const std::string& text);
};

/// Fits the coding: numeric columns get n_classes equal-interval bins over
/// [min, max] of the data, categorical columns a first-appearance code map.
/// Throws EmptyDataset, NonFiniteValue.
DiscretizationSpec fit_discretization(const Dataset& data, int n_classes);

/// Codes every cell of `data` against the spec. Column count, names and
/// types must match the fit (SchemaMismatch otherwise).
Eigen::MatrixXi apply_discretization(const DiscretizationSpec& spec, const Dataset& data);

/// apply_discretization plus the decision column, packaged as a table for
/// the rough-set pathway.
DecisionTable make_decision_table(const DiscretizationSpec& spec, const Dataset& data);

/// Real-valued feature matrix for the network pathway: numeric attributes
/// keep their raw values, categorical attributes contribute their category
/// code (overflow code for unseen values).
Eigen::MatrixXd numeric_features(const DiscretizationSpec& spec, const Dataset& data);

}  // namespace relm
