#include "relm/elm.hpp"

#include <Eigen/Cholesky>

#include "relm/rng.hpp"

namespace relm {

MinMaxScaler MinMaxScaler::fit(const Eigen::MatrixXd& X) {
    MinMaxScaler s;
    s.min = X.colwise().minCoeff();
    s.max = X.colwise().maxCoeff();
    return s;
}

Eigen::MatrixXd MinMaxScaler::transform(const Eigen::MatrixXd& X) const {
    if (X.cols() != min.size())
        throw DimensionMismatch("scaler fitted on " + std::to_string(min.size()) +
                                " attributes, got " + std::to_string(X.cols()));
    Eigen::MatrixXd out(X.rows(), X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double range = max(j) - min(j);
        if (range > 0.0)
            out.col(j) = 2.0 * (X.col(j).array() - min(j)) / range - 1.0;
        else
            out.col(j).setZero();
    }
    return out;
}

HiddenLayer init_hidden(std::uint64_t seed, int L, int m, ActivationKind activation) {
    if (L < 1 || m < 1) throw Error("hidden layer needs L >= 1 and m >= 1");
    HiddenLayer layer;
    layer.activation = activation;
    layer.input_weights.resize(L, m);
    layer.biases.resize(L);
    Rng rng(seed);
    for (int j = 0; j < L; ++j)
        for (int k = 0; k < m; ++k) layer.input_weights(j, k) = rng.uniform(-1.0, 1.0);
    for (int j = 0; j < L; ++j) layer.biases(j) = rng.uniform(-1.0, 1.0);
    return layer;
}

Eigen::MatrixXd hidden_output(const HiddenLayer& layer, const Eigen::MatrixXd& X) {
    if (X.cols() != layer.input_weights.cols())
        throw DimensionMismatch("layer expects " + std::to_string(layer.input_weights.cols()) +
                                " inputs, got " + std::to_string(X.cols()));
    Eigen::MatrixXd H = X * layer.input_weights.transpose();
    H.rowwise() += layer.biases.transpose();
    const ActivationKind kind = layer.activation;
    return H.unaryExpr([kind](double v) { return activate(kind, v); });
}

namespace {

void check_solve_inputs(const Eigen::MatrixXd& H, const Eigen::MatrixXd& T, double ridge) {
    if (H.rows() != T.rows())
        throw DimensionMismatch("H has " + std::to_string(H.rows()) + " rows, T has " +
                                std::to_string(T.rows()));
    if (!(ridge > 0.0)) throw Error("ridge parameter must be positive");
    // NaN would sail through the factorization unnoticed
    if (!H.allFinite() || !T.allFinite())
        throw SingularSystem("non-finite values in the ridge system");
}

Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw SingularSystem("regularized Gram matrix is not positive definite; check for NaN inputs");
    return llt.solve(B);
}

}  // namespace

Eigen::MatrixXd solve_beta_primal(const Eigen::MatrixXd& H, const Eigen::MatrixXd& T, double ridge) {
    check_solve_inputs(H, T, ridge);
    Eigen::MatrixXd A = H.transpose() * H;
    A.diagonal().array() += 1.0 / ridge;
    return spd_solve(A, Eigen::MatrixXd(H.transpose() * T));
}

Eigen::MatrixXd solve_beta_dual(const Eigen::MatrixXd& H, const Eigen::MatrixXd& T, double ridge) {
    check_solve_inputs(H, T, ridge);
    Eigen::MatrixXd A = H * H.transpose();
    A.diagonal().array() += 1.0 / ridge;
    return H.transpose() * spd_solve(A, T);
}

OutputWeights solve_beta(const Eigen::MatrixXd& H, const Eigen::MatrixXd& T, double ridge) {
    check_solve_inputs(H, T, ridge);
    const bool dual = H.cols() <= H.rows();  // L <= N
    return {dual ? solve_beta_dual(H, T, ridge) : solve_beta_primal(H, T, ridge)};
}

Eigen::MatrixXd encode_targets(const std::vector<int>& labels, int n_classes) {
    Eigen::MatrixXd T(static_cast<Eigen::Index>(labels.size()), n_classes);
    T.setConstant(-1.0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= n_classes)
            throw IndexOutOfRange("class code " + std::to_string(labels[i]) + " outside 0.." +
                                  std::to_string(n_classes - 1));
        T(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
    }
    return T;
}

std::vector<int> argmax_rows(const Eigen::MatrixXd& scores) {
    std::vector<int> labels(static_cast<std::size_t>(scores.rows()));
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        int best = 0;
        for (Eigen::Index j = 1; j < scores.cols(); ++j)
            if (scores(i, j) > scores(i, best)) best = static_cast<int>(j);
        labels[static_cast<std::size_t>(i)] = best;
    }
    return labels;
}

ElmModel elm_train(const Eigen::MatrixXd& X, const std::vector<int>& labels, int n_classes,
                   int L, double ridge, ActivationKind activation, std::uint64_t seed,
                   std::vector<std::string> class_names) {
    if (X.rows() < 1) throw EmptyDataset("training set is empty");
    if (static_cast<Eigen::Index>(labels.size()) != X.rows())
        throw DimensionMismatch("label count does not match sample count");
    if (class_names.empty())
        for (int c = 0; c < n_classes; ++c) class_names.push_back(std::to_string(c));

    ElmModel model;
    model.layer = init_hidden(seed, L, static_cast<int>(X.cols()), activation);
    const Eigen::MatrixXd H = hidden_output(model.layer, X);
    const Eigen::MatrixXd T = encode_targets(labels, n_classes);
    model.weights = solve_beta(H, T, ridge);
    model.encoding.classes = std::move(class_names);
    return model;
}

std::vector<int> elm_predict(const HiddenLayer& layer, const OutputWeights& weights,
                             const Eigen::MatrixXd& X) {
    return argmax_rows(hidden_output(layer, X) * weights.beta);
}

}  // namespace relm
