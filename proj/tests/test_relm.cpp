#include <doctest.h>

#include "oracles.hpp"
#include "relm/bench.hpp"
#include "relm/model_io.hpp"
#include "relm/relm.hpp"
#include "relm/rng.hpp"

using namespace relm;

namespace {

/// The deterministic feature path of a trained model, replicated step by
/// step so fusion identities can be checked against hand-built scores.
Eigen::MatrixXd model_inputs(const RelmModel& model, const Dataset& data) {
    const Eigen::MatrixXd X = numeric_features(model.features, data);
    Eigen::MatrixXd Xr(X.rows(), model.reduct.size());
    for (int j = 0; j < model.reduct.size(); ++j)
        Xr.col(j) = X.col(model.reduct.members()[static_cast<std::size_t>(j)]);
    return model.scaler.transform(Xr);
}

Dataset inconsistent_dataset(int n) {
    // one constant categorical feature, alternating labels: quality zero
    Dataset data;
    data.features = {{"k", ColumnRole::Categorical, {}, {}}};
    data.class_labels = {"a", "b"};
    for (int r = 0; r < n; ++r) {
        data.features[0].categories.push_back("same");
        data.label_codes.push_back(r % 2);
    }
    return data;
}

}  // namespace

TEST_CASE("rough_split separates certain rows from the full universe") {
    SUBCASE("worked example") {
        const auto table = oracle::make_table({{0, 0, 1, 1}}, {0, 1, 1, 1});
        const RoughSplit s = rough_split(table, AttrSet({0}));
        CHECK(s.lower_rows == std::vector<int>{2, 3});
        CHECK(s.upper_rows == std::vector<int>{0, 1, 2, 3});
        CHECK(s.positive_count == 2);
        CHECK_FALSE(s.degenerate_lower);
    }
    SUBCASE("consistent table: both sets are the universe") {
        const auto table = oracle::make_table({{0, 0, 1, 1}}, {0, 0, 1, 1});
        const RoughSplit s = rough_split(table, AttrSet({0}));
        CHECK(s.lower_rows == s.upper_rows);
        CHECK(s.positive_count == 4);
        CHECK_FALSE(s.degenerate_lower);
    }
    SUBCASE("fully inconsistent table fires the degenerate fallback") {
        const auto table = oracle::make_table({{0, 0, 1, 1}}, {0, 1, 0, 1});
        const RoughSplit s = rough_split(table, AttrSet({0}));
        CHECK(s.degenerate_lower);
        CHECK(s.lower_rows == s.upper_rows);
        CHECK(s.positive_count == 0);
    }
}

TEST_CASE("fuzz: rough_split containment on random tables") {
    Rng rng(424242);
    for (int trial = 0; trial < 150; ++trial) {
        const DecisionTable table = oracle::random_table(rng);
        const RoughSplit s = rough_split(table, AttrSet::full(table.n_cond()));
        CHECK(s.upper_rows.size() == static_cast<std::size_t>(table.n_rows()));
        CHECK(std::includes(s.upper_rows.begin(), s.upper_rows.end(), s.lower_rows.begin(),
                            s.lower_rows.end()));
        CHECK(s.degenerate_lower == (s.positive_count < table.n_classes()));
        if (s.degenerate_lower) CHECK(s.lower_rows == s.upper_rows);
    }
}

TEST_CASE("hidden-layer sizing rule") {
    CHECK(size_hidden(100, 50, {10.0, 1.0}) == 21);   // 10*2 + 0.5 rounds up
    CHECK(size_hidden(100, 100, {10.0, 1.0}) == 10);  // boundary term vanishes
    CHECK(size_hidden(100, 0, {1.0, 1.0}) == 101);    // empty positive region uses denominator 1

    SUBCASE("clamped to [1, 4n]") {
        CHECK(size_hidden(10, 1, {1000.0, 0.0}) == 40);
        CHECK(size_hidden(10, 10, {0.0, 0.5}) == 1);
    }
    SUBCASE("non-increasing in the positive-region size") {
        const SizingParams params{7.5, 2.0};
        int previous = size_hidden(200, 0, params);
        for (int pos = 1; pos <= 200; ++pos) {
            const int L = size_hidden(200, pos, params);
            CHECK(L <= previous);
            previous = L;
        }
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(size_hidden(0, 0, {1.0, 1.0}), Error);
        CHECK_THROWS_AS(size_hidden(5, 6, {1.0, 1.0}), Error);
    }
}

TEST_CASE("relm training on a stagger concept finds the two decisive attributes") {
    const Dataset data = gen_stagger(300, 1, 11);
    const auto [train, test] = split(data, SplitSpec{0.7, 1, false});

    RelmConfig config;
    config.activation = ActivationKind::Hardlim;
    config.ridge = 1000.0;
    config.fusion_c = 0.5;
    config.L_override = 100;

    TrainInfo info;
    const RelmModel model = relm_train(train, config, 2024, &info);
    CHECK(info.reduct_size == 2);
    CHECK_FALSE(info.reduct_fallback);
    CHECK_FALSE(info.degenerate_lower);
    CHECK(info.hidden_count == 100);

    std::vector<std::string> names;
    for (int a : model.reduct.members())
        names.push_back(model.features.attributes[static_cast<std::size_t>(a)].name);
    CHECK(names == std::vector<std::string>{"color", "size"});

    // both banks come from one shared draw by default
    CHECK(model.lower_layer.hidden_count() == model.upper_layer.hidden_count());
    CHECK(model.lower_layer.input_count() == 2);
    CHECK(model.lower_layer.input_weights == model.upper_layer.input_weights);

    const double acc = accuracy_of(relm_predict(model, test), test.label_codes);
    CHECK(acc >= 0.95);
}

TEST_CASE("fusion respects the cellwise min/max swap") {
    const Dataset data = gen_stagger(120, 2, 3);
    RelmConfig config;
    config.L_override = 20;
    config.activation = ActivationKind::Sigmoid;
    config.independent_banks = true;  // distinct feature maps make the swap non-trivial
    const RelmModel model = relm_train(data, config, 7);
    CHECK(model.lower_layer.input_weights != model.upper_layer.input_weights);

    const Eigen::MatrixXd inputs = model_inputs(model, data);
    const Eigen::MatrixXd h_lower_bank = hidden_output(model.lower_layer, inputs);
    const Eigen::MatrixXd h_upper_bank = hidden_output(model.upper_layer, inputs);
    const Eigen::MatrixXd h_min = h_lower_bank.cwiseMin(h_upper_bank);
    const Eigen::MatrixXd h_max = h_lower_bank.cwiseMax(h_upper_bank);
    CHECK((h_min.array() <= h_max.array()).all());

    const Eigen::MatrixXd expected =
        model.fusion_c * (h_min * model.beta_lower.beta) +
        (1.0 - model.fusion_c) * (h_max * model.beta_upper.beta);
    CHECK(relm_scores(model, data) == expected);
}

TEST_CASE("fusion weight 1 collapses to the lower bank exactly") {
    const Dataset data = gen_stagger(80, 1, 21);
    RelmConfig config;
    config.fusion_c = 1.0;
    config.L_override = 12;
    config.independent_banks = true;
    const RelmModel model = relm_train(data, config, 31);

    const Eigen::MatrixXd inputs = model_inputs(model, data);
    const Eigen::MatrixXd h_min = hidden_output(model.lower_layer, inputs)
                                      .cwiseMin(hidden_output(model.upper_layer, inputs));
    const Eigen::MatrixXd lower_only = h_min * model.beta_lower.beta;
    CHECK(relm_scores(model, data) == lower_only);
    CHECK(relm_predict(model, data) == argmax_rows(lower_only));
}

TEST_CASE("fusion weight 0 collapses to the upper bank exactly") {
    const Dataset data = gen_stagger(80, 3, 22);
    RelmConfig config;
    config.fusion_c = 0.0;
    config.L_override = 12;
    config.independent_banks = true;
    const RelmModel model = relm_train(data, config, 32);

    const Eigen::MatrixXd inputs = model_inputs(model, data);
    const Eigen::MatrixXd h_max = hidden_output(model.lower_layer, inputs)
                                      .cwiseMax(hidden_output(model.upper_layer, inputs));
    const Eigen::MatrixXd upper_only = h_max * model.beta_upper.beta;
    CHECK(relm_scores(model, data) == upper_only);
}

TEST_CASE("hand-checked two-sample fusion with c = 1") {
    // two samples, one attribute, consistent labels; banks forced identical
    Dataset data;
    data.features = {{"x", ColumnRole::Numeric, {0.0, 1.0}, {}}};
    data.class_labels = {"lo", "hi"};
    data.label_codes = {0, 1};

    RelmConfig config;
    config.fusion_c = 1.0;
    config.L_override = 2;
    const RelmModel model = relm_train(data, config, 5);

    // default shared draw: identical banks, so the min matrix is the plain H
    const Eigen::MatrixXd inputs = model_inputs(model, data);
    const Eigen::MatrixXd H = hidden_output(model.lower_layer, inputs);
    CHECK(relm_scores(model, data) == H * model.beta_lower.beta);
}

TEST_CASE("shared banks reduce fusion to a weighted blend of one feature map") {
    const Dataset data = gen_stagger(150, 1, 77);
    RelmConfig config;
    config.L_override = 25;
    config.fusion_c = 0.5;
    const RelmModel model = relm_train(data, config, 13);

    CHECK(model.lower_layer.input_weights == model.upper_layer.input_weights);
    CHECK(model.beta_lower.beta == model.beta_upper.beta);  // consistent data: same rows solved

    const Eigen::MatrixXd inputs = model_inputs(model, data);
    const Eigen::MatrixXd H = hidden_output(model.lower_layer, inputs);
    const Eigen::MatrixXd blend = H * (model.fusion_c * model.beta_lower.beta +
                                       (1.0 - model.fusion_c) * model.beta_upper.beta);
    CHECK((relm_scores(model, data) - blend).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("independent banks differ only by their random draw") {
    const Dataset data = gen_stagger(100, 1, 44);
    RelmConfig config;
    config.L_override = 15;
    config.independent_banks = true;
    const RelmModel model = relm_train(data, config, 6);
    CHECK(model.lower_layer.hidden_count() == model.upper_layer.hidden_count());
    CHECK(model.lower_layer.input_count() == model.upper_layer.input_count());
    CHECK(model.lower_layer.activation == model.upper_layer.activation);
    CHECK(model.lower_layer.input_weights != model.upper_layer.input_weights);
    CHECK(model.lower_layer.biases != model.upper_layer.biases);
    // stagger is consistent, so the two banks solve the same rows: the only
    // difference upstream of the betas is the random draw itself
}

TEST_CASE("a zero-significance column changes neither reduct nor predictions") {
    const Dataset base = gen_stagger(200, 1, 55);
    Dataset padded = base;
    FeatureColumn constant{"pad", ColumnRole::Categorical, {}, {}};
    constant.categories.assign(static_cast<std::size_t>(base.n_rows()), "same");
    padded.features.push_back(constant);

    RelmConfig config;
    config.L_override = 30;
    config.activation = ActivationKind::Hardlim;
    const RelmModel model_base = relm_train(base, config, 99);
    const RelmModel model_padded = relm_train(padded, config, 99);

    CHECK(model_base.reduct == model_padded.reduct);  // pad sits at the highest index
    CHECK(model_base.scaler.min == model_padded.scaler.min);
    CHECK(relm_predict(model_base, base) == relm_predict(model_padded, padded));
}

TEST_CASE("end-to-end determinism of training and prediction") {
    const Dataset data = gen_hyperplane(120, 6, 0.1, 41);
    RelmConfig config;
    config.sizing = {5.0, 2.0};
    const RelmModel a = relm_train(data, config, 17);
    const RelmModel b = relm_train(data, config, 17);
    CHECK(model_to_json_text(a) == model_to_json_text(b));
    CHECK(relm_predict(a, data) == relm_predict(b, data));
}

TEST_CASE("degenerate split collapses to plain elm") {
    const Dataset data = inconsistent_dataset(40);

    RelmConfig config;
    config.L_override = 8;
    config.ridge = 100.0;
    config.fusion_c = 0.5;

    TrainInfo info;
    const RelmModel rough_model = relm_train(data, config, 23, &info);
    CHECK(info.reduct_fallback);   // quality zero keeps the full attribute set
    CHECK(info.degenerate_lower);  // and trains both banks on every row

    const PlainElmModel plain = pipeline_elm_train(data, 8, 100.0, ActivationKind::Sigmoid, 23);
    CHECK(relm_predict(rough_model, data) == pipeline_elm_predict(plain, data));
    CHECK(accuracy_of(relm_predict(rough_model, data), data.label_codes) ==
          accuracy_of(pipeline_elm_predict(plain, data), data.label_codes));
}

TEST_CASE("sizing rule drives the layer when no override is given") {
    const Dataset data = gen_stagger(100, 1, 5);
    RelmConfig config;
    config.sizing = {10.0, 1.0};
    TrainInfo info;
    relm_train(data, config, 3, &info);
    // stagger is consistent: positive region is everything, L = k1 = 10
    CHECK(info.hidden_count == 10);
}

TEST_CASE("prediction rejects schema drift") {
    const Dataset data = gen_stagger(60, 1, 8);
    RelmConfig config;
    config.L_override = 10;
    const RelmModel model = relm_train(data, config, 2);

    Dataset narrowed = data;
    narrowed.features.pop_back();
    CHECK_THROWS_AS(relm_predict(model, narrowed), SchemaMismatch);
}

TEST_CASE("config validation") {
    const Dataset data = gen_stagger(30, 1, 2);
    RelmConfig bad_c;
    bad_c.fusion_c = 1.5;
    CHECK_THROWS_AS(relm_train(data, bad_c, 1), Error);

    RelmConfig zero_sizing;
    zero_sizing.sizing = {0.0, 0.0};
    CHECK_THROWS_AS(relm_train(data, zero_sizing, 1), Error);
    zero_sizing.L_override = 5;  // explicit size, the sizing rule is unused
    CHECK_NOTHROW(relm_train(data, zero_sizing, 1));
}
