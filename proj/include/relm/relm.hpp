#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relm/discretize.hpp"
#include "relm/elm.hpp"
#include "relm/rough.hpp"

namespace relm {

/// Training rows split by certainty: lower_rows is the positive region of
/// the decision classes under the reduct, upper_rows the whole training
/// universe. When the positive region is too small to carry every class
/// the lower set falls back to the full universe (degenerate_lower).
struct RoughSplit {
    std::vector<int> lower_rows;
    std::vector<int> upper_rows;
    bool degenerate_lower = false;
    int positive_count = 0;  // |POS_B(D)| before any fallback; input to the sizing rule
};

/// Weights of the positive-region and boundary-region terms in the
/// hidden-layer sizing rule. Must not both be zero.
struct SizingParams {
    double k1 = 10.0;
    double k2 = 1.0;
};

struct RelmConfig {
    SizingParams sizing;
    double fusion_c = 0.5;   // weight of the lower bank in the final blend
    double ridge = 1000.0;
    ActivationKind activation = ActivationKind::Sigmoid;
    std::optional<int> L_override;  // fixed hidden-layer size instead of the sizing rule
    // By default both banks share one random draw of input weights and
    // biases, so the test-time min/max swap reconciles responses of the
    // same feature map. Setting this draws the banks from distinct child
    // seeds instead; that variant is noticeably less stable because the
    // swap then mixes two unrelated feature maps.
    bool independent_banks = false;
};

/// Trained rough model: reduct-projected features feed two random banks
/// whose outputs are blended by `fusion_c`.
struct RelmModel {
    AttrSet reduct;
    bool reduct_fallback = false;
    bool degenerate_lower = false;
    DiscretizationSpec features;  // full-width coding fitted on the training rows
    MinMaxScaler scaler;          // over the reduct columns
    HiddenLayer lower_layer;
    HiddenLayer upper_layer;
    OutputWeights beta_lower;
    OutputWeights beta_upper;
    double fusion_c = 0.5;
    TargetEncoding encoding;

    int hidden_count() const { return lower_layer.hidden_count(); }
};

/// Wall-clock phase breakdown and shape facts of one training call.
struct TrainInfo {
    double discretize_seconds = 0.0;
    double reduce_seconds = 0.0;
    double split_seconds = 0.0;
    double solve_seconds = 0.0;
    int hidden_count = 0;
    int reduct_size = 0;
    bool reduct_fallback = false;
    bool degenerate_lower = false;

    double total_seconds() const {
        return discretize_seconds + reduce_seconds + split_seconds + solve_seconds;
    }
};

RoughSplit rough_split(const DecisionTable& table, const AttrSet& reduct);

/// Hidden-neuron count from the split sizes:
/// round(k1 * n/max(n_pos,1) + k2 * (n-n_pos)/n), clamped to [1, 4n].
/// Larger positive regions ask for fewer neurons.
int size_hidden(int n_rows, int n_pos, const SizingParams& params);

/// Full training pipeline: fit coding, reduce attributes, split rows by
/// certainty, size and draw the two banks, solve both output weights.
RelmModel relm_train(const Dataset& train, const RelmConfig& config, std::uint64_t seed,
                     TrainInfo* info = nullptr);

/// Raw fused network outputs (rows align with `data`): blend of the
/// elementwise-min matrix through the lower weights and the
/// elementwise-max matrix through the upper weights.
Eigen::MatrixXd relm_scores(const RelmModel& model, const Dataset& data);

/// argmax of relm_scores, ties toward the lowest class code.
std::vector<int> relm_predict(const RelmModel& model, const Dataset& data);

/// Single-bank baseline sharing the featurization path (category codes,
/// scaling) but no reduction and no split.
struct PlainElmModel {
    DiscretizationSpec features;
    MinMaxScaler scaler;
    ElmModel core;
};

PlainElmModel pipeline_elm_train(const Dataset& train, int L, double ridge,
                                 ActivationKind activation, std::uint64_t seed);
Eigen::MatrixXd pipeline_elm_scores(const PlainElmModel& model, const Dataset& data);
std::vector<int> pipeline_elm_predict(const PlainElmModel& model, const Dataset& data);

}  // namespace relm
