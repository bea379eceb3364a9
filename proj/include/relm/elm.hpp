#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "relm/activation.hpp"
#include "relm/errors.hpp"

namespace relm {

/// Random input weights and biases of one hidden-neuron bank.
struct HiddenLayer {
    Eigen::MatrixXd input_weights;  // L x m
    Eigen::VectorXd biases;         // L
    ActivationKind activation = ActivationKind::Sigmoid;

    int hidden_count() const { return static_cast<int>(input_weights.rows()); }
    int input_count() const { return static_cast<int>(input_weights.cols()); }
};

/// Analytically determined output weights, L x n_classes.
struct OutputWeights {
    Eigen::MatrixXd beta;
};

/// Class label <-> output column mapping for the +1/-1 one-hot targets.
struct TargetEncoding {
    std::vector<std::string> classes;  // column j answers for classes[j]

    int n_classes() const { return static_cast<int>(classes.size()); }
};

/// Per-attribute min/max statistics mapping training features onto
/// [-1, 1]. A constant attribute maps to 0.
struct MinMaxScaler {
    Eigen::VectorXd min;
    Eigen::VectorXd max;

    static MinMaxScaler fit(const Eigen::MatrixXd& X);
    Eigen::MatrixXd transform(const Eigen::MatrixXd& X) const;
};

/// Weights and biases i.i.d. uniform on [-1, 1] from the seeded stream;
/// the same seed reproduces the layer bit for bit.
HiddenLayer init_hidden(std::uint64_t seed, int L, int m, ActivationKind activation);

/// H[i][j] = g(w_j . x_i + b_j). Throws DimensionMismatch when the feature
/// count of X differs from the layer.
Eigen::MatrixXd hidden_output(const HiddenLayer& layer, const Eigen::MatrixXd& X);

/// Ridge solution in the hidden-feature space: (I/C + H^T H)^{-1} H^T T,
/// an L x L symmetric positive-definite solve.
Eigen::MatrixXd solve_beta_primal(const Eigen::MatrixXd& H, const Eigen::MatrixXd& T, double ridge);

/// Ridge solution through the sample-space kernel: H^T (I/C + H H^T)^{-1} T,
/// an N x N symmetric positive-definite solve.
Eigen::MatrixXd solve_beta_dual(const Eigen::MatrixXd& H, const Eigen::MatrixXd& T, double ridge);

/// Dispatches on the layer/sample shape: the dual form for L <= N, the
/// primal form otherwise. Throws SingularSystem if the regularized solve
/// fails (non-finite inputs).
OutputWeights solve_beta(const Eigen::MatrixXd& H, const Eigen::MatrixXd& T, double ridge);

/// +1/-1 one-hot target rows.
Eigen::MatrixXd encode_targets(const std::vector<int>& labels, int n_classes);

/// Row-wise argmax with ties broken toward the lowest column index.
std::vector<int> argmax_rows(const Eigen::MatrixXd& scores);

struct ElmModel {
    HiddenLayer layer;
    OutputWeights weights;
    TargetEncoding encoding;
};

/// Classical single-bank training: random layer, +-1 targets, ridge solve.
/// `class_names` defaults to "0", "1", ... when empty.
ElmModel elm_train(const Eigen::MatrixXd& X, const std::vector<int>& labels, int n_classes,
                   int L, double ridge, ActivationKind activation, std::uint64_t seed,
                   std::vector<std::string> class_names = {});

std::vector<int> elm_predict(const HiddenLayer& layer, const OutputWeights& weights,
                             const Eigen::MatrixXd& X);

}  // namespace relm
