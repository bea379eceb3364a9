#include "relm/relm.hpp"

#include <cassert>
#include <chrono>
#include <cmath>

#include "relm/rng.hpp"

namespace relm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& X, const std::vector<int>& cols) {
    Eigen::MatrixXd out(X.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = X.col(cols[j]);
    return out;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& X, const std::vector<int>& rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), X.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = X.row(rows[i]);
    return out;
}

/// Reduct-projected, scaled feature matrix for the network pathway.
Eigen::MatrixXd projected_inputs(const RelmModel& model, const Dataset& data) {
    const Eigen::MatrixXd X = numeric_features(model.features, data);
    return model.scaler.transform(select_columns(X, model.reduct.members()));
}

void check_config(const RelmConfig& config) {
    if (!(config.fusion_c >= 0.0 && config.fusion_c <= 1.0))
        throw Error("fusion weight c must lie in [0, 1]");
    if (!(config.ridge > 0.0)) throw Error("ridge parameter must be positive");
    if (config.sizing.k1 < 0.0 || config.sizing.k2 < 0.0)
        throw Error("sizing parameters must be non-negative");
    if (!config.L_override && config.sizing.k1 == 0.0 && config.sizing.k2 == 0.0)
        throw Error("sizing parameters k1 and k2 must not both be zero");
    if (config.L_override && *config.L_override < 1)
        throw Error("hidden-layer size must be positive");
}

}  // namespace

RoughSplit rough_split(const DecisionTable& table, const AttrSet& reduct) {
    const RegionReport report = regions(table, reduct);

    RoughSplit split;
    split.upper_rows.resize(static_cast<std::size_t>(table.n_rows()));
    for (int r = 0; r < table.n_rows(); ++r) split.upper_rows[static_cast<std::size_t>(r)] = r;
    split.positive_count = static_cast<int>(report.positive.size());
    if (split.positive_count < table.n_classes()) {
        // not enough certain rows to carry every class: train both banks on everything
        split.lower_rows = split.upper_rows;
        split.degenerate_lower = true;
    } else {
        split.lower_rows = report.positive;
    }
    return split;
}

int size_hidden(int n_rows, int n_pos, const SizingParams& params) {
    if (n_rows < 1) throw Error("size_hidden needs n_rows >= 1");
    if (n_pos < 0 || n_pos > n_rows) throw Error("n_pos must lie in [0, n_rows]");
    const double certainty = static_cast<double>(n_rows) / std::max(n_pos, 1);
    const double boundary = static_cast<double>(n_rows - n_pos) / n_rows;
    const double raw = std::floor(params.k1 * certainty + params.k2 * boundary + 0.5);
    const double upper = static_cast<double>(n_rows) * 4.0;  // clamp before the int cast
    if (raw >= upper) return n_rows * 4;
    if (raw < 1.0) return 1;
    return static_cast<int>(raw);
}

RelmModel relm_train(const Dataset& train, const RelmConfig& config, std::uint64_t seed,
                     TrainInfo* info) {
    if (train.n_rows() < 1) throw EmptyDataset("training set is empty");
    check_config(config);

    RelmModel model;
    model.fusion_c = config.fusion_c;
    model.encoding.classes = train.class_labels;

    auto t = Clock::now();
    model.features = fit_discretization(train, train.n_classes());
    const DecisionTable table = make_decision_table(model.features, train);
    TrainInfo phases;
    phases.discretize_seconds = seconds_since(t);

    t = Clock::now();
    const ReduceResult reduction = reduce(table);
    model.reduct = reduction.reduct;
    model.reduct_fallback = reduction.fallback;
    phases.reduce_seconds = seconds_since(t);

    t = Clock::now();
    const RoughSplit rows = rough_split(table, model.reduct);
    model.degenerate_lower = rows.degenerate_lower;
    const int L = config.L_override ? *config.L_override
                                    : size_hidden(table.n_rows(), rows.positive_count, config.sizing);
    phases.split_seconds = seconds_since(t);

    t = Clock::now();
    const Eigen::MatrixXd X = numeric_features(model.features, train);
    const Eigen::MatrixXd X_reduct = select_columns(X, model.reduct.members());
    model.scaler = MinMaxScaler::fit(X_reduct);
    const Eigen::MatrixXd inputs = model.scaler.transform(X_reduct);

    const std::uint64_t lower_seed = derive_seed(seed, 0);
    const std::uint64_t upper_seed = config.independent_banks ? derive_seed(seed, 1) : lower_seed;
    model.lower_layer = init_hidden(lower_seed, L, model.reduct.size(), config.activation);
    model.upper_layer = init_hidden(upper_seed, L, model.reduct.size(), config.activation);

    const Eigen::MatrixXd targets = encode_targets(train.label_codes, train.n_classes());
    model.beta_lower = solve_beta(hidden_output(model.lower_layer, select_rows(inputs, rows.lower_rows)),
                                  select_rows(targets, rows.lower_rows), config.ridge);
    model.beta_upper = solve_beta(hidden_output(model.upper_layer, select_rows(inputs, rows.upper_rows)),
                                  select_rows(targets, rows.upper_rows), config.ridge);
    phases.solve_seconds = seconds_since(t);

    phases.hidden_count = L;
    phases.reduct_size = model.reduct.size();
    phases.reduct_fallback = model.reduct_fallback;
    phases.degenerate_lower = model.degenerate_lower;
    if (info) *info = phases;
    return model;
}

Eigen::MatrixXd relm_scores(const RelmModel& model, const Dataset& data) {
    const Eigen::MatrixXd inputs = projected_inputs(model, data);
    const Eigen::MatrixXd h_from_lower = hidden_output(model.lower_layer, inputs);
    const Eigen::MatrixXd h_from_upper = hidden_output(model.upper_layer, inputs);
    // cellwise swap: the smaller response feeds the lower weights, the
    // larger one the upper weights
    const Eigen::MatrixXd h_min = h_from_lower.cwiseMin(h_from_upper);
    const Eigen::MatrixXd h_max = h_from_lower.cwiseMax(h_from_upper);
    assert((h_min.array() <= h_max.array()).all());
    return model.fusion_c * (h_min * model.beta_lower.beta) +
           (1.0 - model.fusion_c) * (h_max * model.beta_upper.beta);
}

std::vector<int> relm_predict(const RelmModel& model, const Dataset& data) {
    return argmax_rows(relm_scores(model, data));
}

PlainElmModel pipeline_elm_train(const Dataset& train, int L, double ridge,
                                 ActivationKind activation, std::uint64_t seed) {
    if (train.n_rows() < 1) throw EmptyDataset("training set is empty");
    PlainElmModel model;
    model.features = fit_discretization(train, train.n_classes());
    const Eigen::MatrixXd X = numeric_features(model.features, train);
    model.scaler = MinMaxScaler::fit(X);
    model.core = elm_train(model.scaler.transform(X), train.label_codes, train.n_classes(), L,
                           ridge, activation, derive_seed(seed, 0), train.class_labels);
    return model;
}

Eigen::MatrixXd pipeline_elm_scores(const PlainElmModel& model, const Dataset& data) {
    const Eigen::MatrixXd X = model.scaler.transform(numeric_features(model.features, data));
    return hidden_output(model.core.layer, X) * model.core.weights.beta;
}

std::vector<int> pipeline_elm_predict(const PlainElmModel& model, const Dataset& data) {
    return argmax_rows(pipeline_elm_scores(model, data));
}

}  // namespace relm
