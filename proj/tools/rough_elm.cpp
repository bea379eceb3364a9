#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "relm/bench.hpp"
#include "relm/log.hpp"
#include "relm/model_io.hpp"

namespace {

using relm::ExperimentConfig;

// exit codes: 0 success, 1 runtime/data failure, 2 usage or schema error
struct UsageError : relm::Error {
    using relm::Error::Error;
};

struct CommonFlags {
    CLI::App* cmd = nullptr;
    std::string config_path;
    std::string data_path, schema_path, schema_cols;
    std::string generator_kind;
    int gen_n = 500;
    int gen_concept = 1;
    int gen_dims = 10;
    double gen_noise = 0.1;
    std::uint64_t gen_seed = 1;
    std::string algorithm = "relm";
    int L = 0;
    double k1 = 10.0, k2 = 1.0;
    double ridge = 1000.0;
    double fusion_c = 0.5;
    std::string activation = "sigmoid";
    bool independent_banks = false;
    int reps = 10;
    double train_fraction = 0.7;
    bool stratified = false;
    std::uint64_t seed = 1;
    std::string out_path;
};

void add_dataset_flags(CommonFlags& f) {
    f.cmd->add_option("--config", f.config_path, "JSON experiment config; flags override its fields");
    f.cmd->add_option("--data", f.data_path, "dataset CSV path");
    f.cmd->add_option("--schema", f.schema_path, "sidecar JSON schema for --data");
    f.cmd->add_option("--schema-cols", f.schema_cols,
                      "inline schema, e.g. x:numeric,color:categorical,y:label");
    f.cmd->add_option("--generator", f.generator_kind, "synthetic source: stagger|hyperplane")
        ->check(CLI::IsMember({"stagger", "hyperplane"}));
    f.cmd->add_option("--n", f.gen_n, "generated sample count");
    f.cmd->add_option("--concept", f.gen_concept, "stagger concept (1|2|3)");
    f.cmd->add_option("--dims", f.gen_dims, "hyperplane dimension count");
    f.cmd->add_option("--noise", f.gen_noise, "hyperplane label-flip probability");
    f.cmd->add_option("--gen-seed", f.gen_seed, "generator seed");
}

void add_model_flags(CommonFlags& f) {
    f.cmd->add_option("--algorithm", f.algorithm, "elm|relm")->check(CLI::IsMember({"elm", "relm"}));
    f.cmd->add_option("--L", f.L, "fixed hidden-layer size (otherwise the sizing rule decides)");
    f.cmd->add_option("--k1", f.k1, "sizing weight of the positive-region term");
    f.cmd->add_option("--k2", f.k2, "sizing weight of the boundary-region term");
    f.cmd->add_option("--ridge", f.ridge, "ridge parameter C");
    f.cmd->add_option("--activation", f.activation, "sigmoid|radbas|tribas|sine|hardlim")
        ->check(CLI::IsMember({"sigmoid", "radbas", "tribas", "sine", "hardlim"}));
    f.cmd->add_option("--fusion-c", f.fusion_c, "weight of the lower bank in [0,1]");
    f.cmd->add_flag("--independent-banks", f.independent_banks,
                    "draw the two banks from distinct seeds instead of one shared draw");
    f.cmd->add_option("--seed", f.seed, "master seed");
}

bool given(const CommonFlags& f, const std::string& name) {
    const CLI::Option* opt = f.cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

ExperimentConfig build_config(const CommonFlags& f) {
    ExperimentConfig cfg;
    if (!f.config_path.empty()) cfg = ExperimentConfig::from_json_file(f.config_path);

    if (given(f, "--data")) cfg.data_path = f.data_path;
    if (given(f, "--schema")) cfg.schema_path = f.schema_path;
    if (given(f, "--schema-cols")) cfg.schema_cols = f.schema_cols;
    if (given(f, "--generator")) {
        relm::GeneratorSpec gen;
        gen.kind = f.generator_kind;
        if (cfg.generator && cfg.generator->kind == gen.kind) gen = *cfg.generator;
        cfg.generator = gen;
    }
    if (cfg.generator) {
        if (given(f, "--n")) cfg.generator->n = f.gen_n;
        if (given(f, "--concept")) cfg.generator->concept_id = f.gen_concept;
        if (given(f, "--dims")) cfg.generator->dims = f.gen_dims;
        if (given(f, "--noise")) cfg.generator->noise = f.gen_noise;
        if (given(f, "--gen-seed")) cfg.generator->seed = f.gen_seed;
    }
    if (given(f, "--algorithm")) cfg.algorithm = relm::algorithm_from_name(f.algorithm);
    if (given(f, "--L")) cfg.L = f.L;
    if (given(f, "--k1")) cfg.sizing.k1 = f.k1;
    if (given(f, "--k2")) cfg.sizing.k2 = f.k2;
    if (given(f, "--ridge")) cfg.ridge = f.ridge;
    if (given(f, "--activation")) cfg.activation = relm::activation_from_name(f.activation);
    if (given(f, "--fusion-c")) cfg.fusion_c = f.fusion_c;
    if (given(f, "--independent-banks")) cfg.independent_banks = f.independent_banks;
    if (given(f, "--reps")) cfg.repetitions = f.reps;
    if (given(f, "--train-fraction")) cfg.train_fraction = f.train_fraction;
    if (given(f, "--stratified")) cfg.stratified = f.stratified;
    if (given(f, "--seed")) cfg.seed = f.seed;
    if (given(f, "--out")) cfg.out_path = f.out_path;
    return cfg;
}

relm::RelmConfig relm_config_of(const ExperimentConfig& cfg) {
    relm::RelmConfig rc;
    rc.sizing = cfg.sizing;
    rc.fusion_c = cfg.fusion_c;
    rc.ridge = cfg.ridge;
    rc.activation = cfg.activation;
    rc.L_override = cfg.L;
    rc.independent_banks = cfg.independent_banks;
    return rc;
}

int cmd_generate(const CommonFlags& f) {
    ExperimentConfig cfg = build_config(f);
    if (!cfg.generator) throw UsageError("generate needs --generator stagger|hyperplane");
    if (cfg.out_path.empty()) throw UsageError("generate needs --out for the CSV path");

    const relm::Dataset data = relm::resolve_dataset(cfg);
    relm::write_text_atomic(cfg.out_path, relm::to_csv(data));
    relm::write_text_atomic(cfg.out_path + ".schema.json", data.schema().to_json_text());
    std::printf("wrote %d rows to %s\n", data.n_rows(), cfg.out_path.c_str());
    std::printf("checksum: %016llx\n",
                static_cast<unsigned long long>(relm::dataset_checksum(data)));
    return 0;
}

int cmd_reduce(const CommonFlags& f) {
    ExperimentConfig cfg = build_config(f);
    const relm::Dataset data = relm::resolve_dataset(cfg);
    const relm::ReductionReport report = relm::run_reduce(data);
    std::fputs(report.to_text().c_str(), stdout);
    if (!cfg.out_path.empty()) relm::write_text_atomic(cfg.out_path, report.to_json().dump(2) + "\n");
    return 0;
}

int cmd_benchmark(const CommonFlags& f) {
    ExperimentConfig cfg = build_config(f);
    cfg.validate();
    const relm::Dataset data = relm::resolve_dataset(cfg);
    const relm::ExperimentReport report = relm::run_benchmark(cfg, data);

    const nlohmann::json doc = report.to_json();
    std::string why;
    if (!relm::validate_report_json(doc, &why))
        throw relm::Error("internal: emitted report violates its schema: " + why);
    std::fputs(report.to_text().c_str(), stdout);
    if (!cfg.out_path.empty()) relm::write_text_atomic(cfg.out_path, doc.dump(2) + "\n");
    return 0;
}

int cmd_train(const CommonFlags& f) {
    ExperimentConfig cfg = build_config(f);
    if (cfg.out_path.empty()) throw UsageError("train needs --out for the model path");
    const relm::Dataset data = relm::resolve_dataset(cfg);

    if (cfg.algorithm == relm::Algorithm::Relm) {
        relm::TrainInfo info;
        const relm::RelmModel model = relm::relm_train(data, relm_config_of(cfg), cfg.seed, &info);
        relm::save_model(model, cfg.out_path);
        const auto train_preds = relm::relm_predict(model, data);
        std::printf("trained relm: L=%d, reduct=%d/%d%s, training accuracy %.4f\n",
                    info.hidden_count, info.reduct_size, data.n_features(),
                    info.reduct_fallback ? " (fallback)" : "",
                    relm::accuracy_of(train_preds, data.label_codes));
    } else {
        if (!cfg.L) throw relm::Error("the elm algorithm needs an explicit hidden-layer size (--L)");
        const relm::PlainElmModel model =
            relm::pipeline_elm_train(data, *cfg.L, cfg.ridge, cfg.activation, cfg.seed);
        relm::save_model(model, cfg.out_path);
        const auto train_preds = relm::pipeline_elm_predict(model, data);
        std::printf("trained elm: L=%d, training accuracy %.4f\n", *cfg.L,
                    relm::accuracy_of(train_preds, data.label_codes));
    }
    std::printf("model written to %s\n", cfg.out_path.c_str());
    return 0;
}

int cmd_predict(const CommonFlags& f, const std::string& model_path) {
    ExperimentConfig cfg = build_config(f);
    if (cfg.data_path.empty() || (cfg.schema_path.empty() && cfg.schema_cols.empty()))
        throw UsageError("predict needs --data and a schema (--schema or --schema-cols)");
    const relm::DatasetSchema schema =
        cfg.schema_cols.empty() ? relm::DatasetSchema::from_json_file(cfg.schema_path)
                                : relm::DatasetSchema::from_spec_string(cfg.schema_cols);
    const relm::Dataset data = relm::load_csv(cfg.data_path, schema);

    const relm::AnyModel model = relm::load_model(model_path);
    Eigen::MatrixXd scores;
    std::vector<int> predicted;
    const std::vector<std::string>* classes = nullptr;
    if (const auto* rm = std::get_if<relm::RelmModel>(&model)) {
        scores = relm::relm_scores(*rm, data);
        classes = &rm->encoding.classes;
    } else {
        const auto& em = std::get<relm::PlainElmModel>(model);
        scores = relm::pipeline_elm_scores(em, data);
        classes = &em.core.encoding.classes;
    }
    predicted = relm::argmax_rows(scores);

    std::string out = "prediction";
    for (const auto& name : *classes) out += ",score_" + name;
    out += '\n';
    char cell[64];
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        out += (*classes)[static_cast<std::size_t>(predicted[static_cast<std::size_t>(i)])];
        for (Eigen::Index j = 0; j < scores.cols(); ++j) {
            std::snprintf(cell, sizeof cell, ",%.17g", scores(i, j));
            out += cell;
        }
        out += '\n';
    }
    if (!cfg.out_path.empty())
        relm::write_text_atomic(cfg.out_path, out);
    else
        std::fputs(out.c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rough-elm: rough-set guided extreme learning machine classifier"};
    app.require_subcommand(1);

    CommonFlags generate, reduce, benchmark, train, predict;
    std::string model_path;

    generate.cmd = app.add_subcommand("generate", "write a synthetic dataset as CSV + schema");
    add_dataset_flags(generate);
    generate.cmd->add_option("--out", generate.out_path, "output CSV path");

    reduce.cmd = app.add_subcommand("reduce", "attribute reduction report for a dataset");
    add_dataset_flags(reduce);
    reduce.cmd->add_option("--out", reduce.out_path, "write the JSON report here");

    benchmark.cmd = app.add_subcommand("benchmark", "repeated seeded split/train/test runs");
    add_dataset_flags(benchmark);
    add_model_flags(benchmark);
    benchmark.cmd->add_option("--reps", benchmark.reps, "repetition count");
    benchmark.cmd->add_option("--train-fraction", benchmark.train_fraction, "train split fraction");
    benchmark.cmd->add_flag("--stratified", benchmark.stratified, "stratify the split by class");
    benchmark.cmd->add_option("--out", benchmark.out_path, "write the JSON report here");

    train.cmd = app.add_subcommand("train", "train on the full dataset and save the model");
    add_dataset_flags(train);
    add_model_flags(train);
    train.cmd->add_option("--out", train.out_path, "model output path");

    predict.cmd = app.add_subcommand("predict", "label a feature CSV with a saved model");
    predict.cmd->add_option("--model", model_path, "model JSON path")->required();
    predict.cmd->add_option("--data", predict.data_path, "feature CSV path");
    predict.cmd->add_option("--schema", predict.schema_path, "sidecar JSON schema");
    predict.cmd->add_option("--schema-cols", predict.schema_cols,
                            "inline schema, e.g. x:numeric,color:categorical");
    predict.cmd->add_option("--out", predict.out_path, "prediction CSV path (stdout otherwise)");

    try {
        app.parse(argc, argv);
        if (generate.cmd->parsed()) return cmd_generate(generate);
        if (reduce.cmd->parsed()) return cmd_reduce(reduce);
        if (benchmark.cmd->parsed()) return cmd_benchmark(benchmark);
        if (train.cmd->parsed()) return cmd_train(train);
        if (predict.cmd->parsed()) return cmd_predict(predict, model_path);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit clean, usage errors exit 2
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const relm::SchemaMismatch& e) {
        std::fprintf(stderr, "schema error: %s\n", e.what());
        return 2;
    } catch (const relm::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
