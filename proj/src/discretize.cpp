#include "relm/discretize.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace relm {

namespace {

void check_schema(const DiscretizationSpec& spec, const Dataset& data) {
    if (data.n_features() != spec.n_attributes())
        throw SchemaMismatch("dataset has " + std::to_string(data.n_features()) +
                             " feature columns, spec has " + std::to_string(spec.n_attributes()));
    for (int j = 0; j < spec.n_attributes(); ++j) {
        const auto& attr = spec.attributes[static_cast<std::size_t>(j)];
        const auto& col = data.features[static_cast<std::size_t>(j)];
        if (col.name != attr.name)
            throw SchemaMismatch("feature column " + std::to_string(j) + " is '" + col.name +
                                 "', spec expects '" + attr.name + "'");
        const bool numeric = std::holds_alternative<NumericBins>(attr.coding);
        if (numeric != (col.type == ColumnRole::Numeric))
            throw SchemaMismatch("feature column '" + col.name + "' type differs from the fitted spec");
    }
}

int bin_of(const NumericBins& bins, double v) {
    if (bins.n_bins == 1 || bins.max <= bins.min) return 0;
    const double width = (bins.max - bins.min) / bins.n_bins;
    // clamp in double space first, extreme drift values must not overflow int
    const double raw = std::floor((v - bins.min) / width);
    if (raw < 0.0) return 0;
    if (raw >= bins.n_bins) return bins.n_bins - 1;
    return static_cast<int>(raw);
}

int code_of(const CategoryCodes& codes, const std::string& value) {
    for (std::size_t i = 0; i < codes.categories.size(); ++i)
        if (codes.categories[i] == value) return static_cast<int>(i);
    return static_cast<int>(codes.categories.size());  // overflow code
}

}  // namespace

int DiscretizationSpec::cardinality(int attr) const {
    const auto& coding = attributes[static_cast<std::size_t>(attr)].coding;
    if (const auto* bins = std::get_if<NumericBins>(&coding)) return bins->n_bins;
    return static_cast<int>(std::get<CategoryCodes>(coding).categories.size()) + 1;
}

bool DiscretizationSpec::is_numeric(int attr) const {
    return std::holds_alternative<NumericBins>(attributes[static_cast<std::size_t>(attr)].coding);
}

std::string DiscretizationSpec::to_json_text() const {
    nlohmann::json attrs = nlohmann::json::array();
    for (const auto& attr : attributes) {
        nlohmann::json entry{{"name", attr.name}};
        if (const auto* bins = std::get_if<NumericBins>(&attr.coding)) {
            entry["kind"] = "numeric";
            entry["min"] = bins->min;
            entry["max"] = bins->max;
            entry["n_bins"] = bins->n_bins;
        } else {
            entry["kind"] = "categorical";
            entry["categories"] = std::get<CategoryCodes>(attr.coding).categories;
        }
        attrs.push_back(std::move(entry));
    }
    return nlohmann::json{{"attributes", attrs}}.dump(2);
}

DiscretizationSpec DiscretizationSpec::from_json_text(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    DiscretizationSpec spec;
    for (const auto& entry : doc.at("attributes")) {
        Attribute attr;
        attr.name = entry.at("name").get<std::string>();
        const std::string kind = entry.at("kind").get<std::string>();
        if (kind == "numeric") {
            NumericBins bins;
            bins.min = entry.at("min").get<double>();
            bins.max = entry.at("max").get<double>();
            bins.n_bins = entry.at("n_bins").get<int>();
            if (bins.n_bins < 1 || !(bins.min <= bins.max))
                throw Error("invalid numeric bins for attribute '" + attr.name + "'");
            attr.coding = bins;
        } else if (kind == "categorical") {
            CategoryCodes codes;
            codes.categories = entry.at("categories").get<std::vector<std::string>>();
            attr.coding = std::move(codes);
        } else {
            throw Error("unknown coding kind '" + kind + "'");
        }
        spec.attributes.push_back(std::move(attr));
    }
    return spec;
}

DiscretizationSpec fit_discretization(const Dataset& data, int n_classes) {
    if (data.n_rows() < 1) throw EmptyDataset("cannot fit a discretization on an empty dataset");
    if (n_classes < 1) throw Error("n_classes must be positive");

    DiscretizationSpec spec;
    for (const auto& col : data.features) {
        DiscretizationSpec::Attribute attr;
        attr.name = col.name;
        if (col.type == ColumnRole::Numeric) {
            NumericBins bins;
            bins.min = col.numeric.front();
            bins.max = col.numeric.front();
            for (double v : col.numeric) {
                if (!std::isfinite(v))
                    throw NonFiniteValue("non-finite value in numeric column '" + col.name + "'");
                bins.min = std::min(bins.min, v);
                bins.max = std::max(bins.max, v);
            }
            // a constant column degenerates to one bin
            bins.n_bins = (bins.max > bins.min) ? n_classes : 1;
            attr.coding = bins;
        } else {
            CategoryCodes codes;
            for (const auto& v : col.categories)
                if (std::find(codes.categories.begin(), codes.categories.end(), v) == codes.categories.end())
                    codes.categories.push_back(v);
            attr.coding = std::move(codes);
        }
        spec.attributes.push_back(std::move(attr));
    }
    return spec;
}

Eigen::MatrixXi apply_discretization(const DiscretizationSpec& spec, const Dataset& data) {
    check_schema(spec, data);
    const int n = data.n_rows();
    Eigen::MatrixXi codes(n, spec.n_attributes());
    for (int j = 0; j < spec.n_attributes(); ++j) {
        const auto& coding = spec.attributes[static_cast<std::size_t>(j)].coding;
        const auto& col = data.features[static_cast<std::size_t>(j)];
        if (const auto* bins = std::get_if<NumericBins>(&coding)) {
            for (int r = 0; r < n; ++r)
                codes(r, j) = bin_of(*bins, col.numeric[static_cast<std::size_t>(r)]);
        } else {
            const auto& cats = std::get<CategoryCodes>(coding);
            for (int r = 0; r < n; ++r)
                codes(r, j) = code_of(cats, col.categories[static_cast<std::size_t>(r)]);
        }
    }
    return codes;
}

DecisionTable make_decision_table(const DiscretizationSpec& spec, const Dataset& data) {
    Eigen::MatrixXi codes = apply_discretization(spec, data);
    std::vector<int> cards(static_cast<std::size_t>(spec.n_attributes()));
    std::vector<std::string> names(static_cast<std::size_t>(spec.n_attributes()));
    for (int j = 0; j < spec.n_attributes(); ++j) {
        cards[static_cast<std::size_t>(j)] = spec.cardinality(j);
        names[static_cast<std::size_t>(j)] = spec.attributes[static_cast<std::size_t>(j)].name;
    }
    Eigen::VectorXi decisions(data.n_rows());
    for (int r = 0; r < data.n_rows(); ++r)
        decisions(r) = data.label_codes[static_cast<std::size_t>(r)];
    return DecisionTable(std::move(codes), std::move(cards), std::move(decisions),
                         data.n_classes(), std::move(names), data.class_labels);
}

Eigen::MatrixXd numeric_features(const DiscretizationSpec& spec, const Dataset& data) {
    check_schema(spec, data);
    const int n = data.n_rows();
    Eigen::MatrixXd X(n, spec.n_attributes());
    for (int j = 0; j < spec.n_attributes(); ++j) {
        const auto& coding = spec.attributes[static_cast<std::size_t>(j)].coding;
        const auto& col = data.features[static_cast<std::size_t>(j)];
        if (std::holds_alternative<NumericBins>(coding)) {
            for (int r = 0; r < n; ++r) X(r, j) = col.numeric[static_cast<std::size_t>(r)];
        } else {
            const auto& cats = std::get<CategoryCodes>(coding);
            for (int r = 0; r < n; ++r)
                X(r, j) = static_cast<double>(code_of(cats, col.categories[static_cast<std::size_t>(r)]));
        }
    }
    return X;
}

}  // namespace relm
