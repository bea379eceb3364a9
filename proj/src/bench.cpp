#include "relm/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "relm/log.hpp"
#include "relm/model_io.hpp"

namespace relm {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

bool require(bool ok, const char* message, std::string* why) {
    if (!ok && why) *why = message;
    return ok;
}

}  // namespace

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "elm") return Algorithm::Elm;
    if (name == "relm") return Algorithm::Relm;
    throw Error("unknown algorithm '" + name + "' (expected elm|relm)");
}

const char* algorithm_name(Algorithm a) { return a == Algorithm::Elm ? "elm" : "relm"; }

json GeneratorSpec::to_json() const {
    json doc{{"kind", kind}, {"n", n}, {"seed", seed}};
    if (kind == "stagger") doc["concept"] = concept_id;
    if (kind == "hyperplane") {
        doc["dims"] = dims;
        doc["noise"] = noise;
    }
    return doc;
}

GeneratorSpec GeneratorSpec::from_json(const json& doc) {
    GeneratorSpec spec;
    spec.kind = doc.at("kind").get<std::string>();
    if (spec.kind != "stagger" && spec.kind != "hyperplane")
        throw Error("unknown generator '" + spec.kind + "' (expected stagger|hyperplane)");
    spec.n = doc.value("n", spec.n);
    spec.concept_id = doc.value("concept", spec.concept_id);
    spec.dims = doc.value("dims", spec.dims);
    spec.noise = doc.value("noise", spec.noise);
    spec.seed = doc.value("seed", spec.seed);
    return spec;
}

json ExperimentConfig::to_json() const {
    json doc{{"algorithm", algorithm_name(algorithm)},
             {"k1", sizing.k1},
             {"k2", sizing.k2},
             {"ridge", ridge},
             {"fusion_c", fusion_c},
             {"activation", activation_name(activation)},
             {"independent_banks", independent_banks},
             {"repetitions", repetitions},
             {"split", json{{"train_fraction", train_fraction}, {"stratified", stratified}}},
             {"seed", seed}};
    if (L) doc["L"] = *L;
    if (generator) doc["generator"] = generator->to_json();
    if (!data_path.empty()) {
        doc["data"] = data_path;
        if (!schema_path.empty()) doc["schema"] = schema_path;
        if (!schema_cols.empty()) doc["schema_cols"] = schema_cols;
    }
    // the output path is a runtime destination, not an experiment parameter;
    // identical experiments echo identical configs
    return doc;
}

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
    ExperimentConfig cfg;
    if (doc.contains("algorithm")) cfg.algorithm = algorithm_from_name(doc.at("algorithm").get<std::string>());
    if (doc.contains("L")) cfg.L = doc.at("L").get<int>();
    cfg.sizing.k1 = doc.value("k1", cfg.sizing.k1);
    cfg.sizing.k2 = doc.value("k2", cfg.sizing.k2);
    cfg.ridge = doc.value("ridge", cfg.ridge);
    cfg.fusion_c = doc.value("fusion_c", cfg.fusion_c);
    if (doc.contains("activation"))
        cfg.activation = activation_from_name(doc.at("activation").get<std::string>());
    cfg.independent_banks = doc.value("independent_banks", cfg.independent_banks);
    cfg.repetitions = doc.value("repetitions", cfg.repetitions);
    if (doc.contains("split")) {
        const json& split = doc.at("split");
        cfg.train_fraction = split.value("train_fraction", cfg.train_fraction);
        cfg.stratified = split.value("stratified", cfg.stratified);
    }
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.data_path = doc.value("data", cfg.data_path);
    cfg.schema_path = doc.value("schema", cfg.schema_path);
    cfg.schema_cols = doc.value("schema_cols", cfg.schema_cols);
    cfg.out_path = doc.value("out", cfg.out_path);
    if (doc.contains("generator")) cfg.generator = GeneratorSpec::from_json(doc.at("generator"));
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    try {
        return from_json(json::parse(read_text(path)));
    } catch (const json::exception& e) {
        throw ParseError("config file " + path + ": " + e.what());
    }
}

void ExperimentConfig::validate() const {
    if (repetitions < 1) throw Error("repetitions must be >= 1");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw Error("train fraction must lie strictly between 0 and 1");
    if (!(ridge > 0.0)) throw Error("ridge parameter must be positive");
    if (!(fusion_c >= 0.0 && fusion_c <= 1.0)) throw Error("fusion weight c must lie in [0, 1]");
    if (algorithm == Algorithm::Elm && !L)
        throw Error("the elm algorithm needs an explicit hidden-layer size (--L)");
    if (!generator && data_path.empty())
        throw Error("no dataset: give --data/--schema or a generator");
}

json ExperimentReport::to_json() const {
    json runs_doc = json::array();
    for (const auto& run : runs)
        runs_doc.push_back(json{{"seed", run.seed},
                                {"accuracy", run.accuracy},
                                {"train_seconds", run.train_seconds},
                                {"predict_seconds", run.predict_seconds},
                                {"L_used", run.L_used},
                                {"reduct_size", run.reduct_size},
                                {"reduct_fallback", run.reduct_fallback},
                                {"degenerate_lower", run.degenerate_lower}});
    return json{{"schema_version", kReportSchemaVersion},
                {"kind", "benchmark"},
                {"std_formula", "population"},
                {"config", config_echo},
                {"runs", runs_doc},
                {"aggregate", json{{"mean_accuracy", mean_accuracy},
                                   {"std_accuracy", std_accuracy},
                                   {"mean_train_seconds", mean_train_seconds},
                                   {"mean_predict_seconds", mean_predict_seconds}}}};
}

std::string ExperimentReport::to_text() const {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%4s %12s %10s %10s %10s %6s %8s\n", "run", "seed",
                  "accuracy", "train_s", "predict_s", "L", "reduct");
    out += line;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& r = runs[i];
        std::snprintf(line, sizeof line, "%4zu %12llu %10.4f %10.4f %10.4f %6d %8d%s%s\n", i,
                      static_cast<unsigned long long>(r.seed), r.accuracy, r.train_seconds,
                      r.predict_seconds, r.L_used, r.reduct_size,
                      r.reduct_fallback ? " [reduct-fallback]" : "",
                      r.degenerate_lower ? " [degenerate-lower]" : "");
        out += line;
    }
    out += "accuracy: " + fixed4(mean_accuracy) + "+-" + fixed4(std_accuracy) +
           " (population std over " + std::to_string(runs.size()) + " runs)\n";
    out += "mean train s: " + fixed4(mean_train_seconds) +
           ", mean predict s: " + fixed4(mean_predict_seconds) + "\n";
    return out;
}

json ReductionReport::to_json() const {
    return json{{"schema_version", kReportSchemaVersion},
                {"kind", "reduction"},
                {"before", before},
                {"after", after},
                {"reduced", reduced},
                {"ratio", ratio},
                {"members", members},
                {"fallback", fallback}};
}

std::string ReductionReport::to_text() const {
    std::string out = "attributes before: " + std::to_string(before) +
                      "\nattributes after:  " + std::to_string(after) +
                      "\nreduced:           " + std::to_string(reduced) +
                      "\nreduction ratio:   " + fixed4(ratio) + "\nreduct members:   ";
    for (const auto& name : members) out += " " + name;
    if (fallback) out += "\n(fallback: no informative subset, full attribute set kept)";
    out += "\n";
    return out;
}

Dataset resolve_dataset(const ExperimentConfig& config) {
    if (config.generator) {
        const auto& g = *config.generator;
        if (g.kind == "stagger") return gen_stagger(g.n, g.concept_id, g.seed);
        return gen_hyperplane(g.n, g.dims, g.noise, g.seed);
    }
    if (config.data_path.empty()) throw Error("no dataset: give --data/--schema or a generator");
    if (config.schema_path.empty() && config.schema_cols.empty())
        throw Error("a CSV dataset needs a schema (--schema FILE or --schema-cols name:type,...)");
    const DatasetSchema schema = config.schema_cols.empty()
                                     ? DatasetSchema::from_json_file(config.schema_path)
                                     : DatasetSchema::from_spec_string(config.schema_cols);
    Dataset data = load_csv(config.data_path, schema);
    if (!data.has_labels())
        throw Error("dataset schema declares no label column; training and reduction need one");
    return data;
}

double accuracy_of(const std::vector<int>& predicted, const std::vector<int>& actual) {
    if (predicted.size() != actual.size() || actual.empty())
        throw DimensionMismatch("prediction/label count mismatch");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) hits += predicted[i] == actual[i];
    return static_cast<double>(hits) / static_cast<double>(actual.size());
}

ExperimentReport run_benchmark(const ExperimentConfig& config, const Dataset& data) {
    config.validate();
    ExperimentReport report;
    report.config_echo = config.to_json();

    for (int rep = 0; rep < config.repetitions; ++rep) {
        const std::uint64_t run_seed = config.seed + static_cast<std::uint64_t>(rep);
        const auto [train, test] =
            split(data, SplitSpec{config.train_fraction, run_seed, config.stratified});

        RunResult result;
        result.seed = run_seed;
        std::vector<int> predicted;
        if (config.algorithm == Algorithm::Relm) {
            RelmConfig rc;
            rc.sizing = config.sizing;
            rc.fusion_c = config.fusion_c;
            rc.ridge = config.ridge;
            rc.activation = config.activation;
            rc.L_override = config.L;
            rc.independent_banks = config.independent_banks;

            TrainInfo info;
            auto t = Clock::now();
            const RelmModel model = relm_train(train, rc, run_seed, &info);
            result.train_seconds = seconds_since(t);
            t = Clock::now();
            predicted = relm_predict(model, test);
            result.predict_seconds = seconds_since(t);
            result.L_used = info.hidden_count;
            result.reduct_size = info.reduct_size;
            result.reduct_fallback = info.reduct_fallback;
            result.degenerate_lower = info.degenerate_lower;
        } else {
            auto t = Clock::now();
            const PlainElmModel model =
                pipeline_elm_train(train, *config.L, config.ridge, config.activation, run_seed);
            result.train_seconds = seconds_since(t);
            t = Clock::now();
            predicted = pipeline_elm_predict(model, test);
            result.predict_seconds = seconds_since(t);
            result.L_used = *config.L;
            result.reduct_size = train.n_features();
        }
        result.accuracy = accuracy_of(predicted, test.label_codes);
        log_debug("rep %d: accuracy %.4f (train %.3fs)", rep, result.accuracy, result.train_seconds);
        report.runs.push_back(result);
    }

    const double n = static_cast<double>(report.runs.size());
    double sum = 0.0, sum_sq = 0.0, train_sum = 0.0, predict_sum = 0.0;
    for (const auto& run : report.runs) {
        sum += run.accuracy;
        sum_sq += run.accuracy * run.accuracy;
        train_sum += run.train_seconds;
        predict_sum += run.predict_seconds;
    }
    report.mean_accuracy = sum / n;
    report.std_accuracy = std::sqrt(std::max(0.0, sum_sq / n - report.mean_accuracy * report.mean_accuracy));
    report.mean_train_seconds = train_sum / n;
    report.mean_predict_seconds = predict_sum / n;
    return report;
}

ReductionReport run_reduce(const Dataset& data) {
    const DiscretizationSpec spec = fit_discretization(data, data.n_classes());
    const DecisionTable table = make_decision_table(spec, data);
    const ReduceResult result = reduce(table);

    ReductionReport report;
    report.before = table.n_cond();
    report.after = result.reduct.size();
    report.reduced = report.before - report.after;
    report.ratio = static_cast<double>(report.reduced) / report.before;
    report.fallback = result.fallback;
    for (int a : result.reduct.members())
        report.members.push_back(table.attribute_names()[static_cast<std::size_t>(a)]);
    return report;
}

bool validate_report_json(const json& doc, std::string* why) {
    if (!require(doc.is_object(), "report must be a JSON object", why)) return false;
    if (!require(doc.value("schema_version", -1) == kReportSchemaVersion,
                 "schema_version missing or unsupported", why))
        return false;
    if (!require(doc.value("kind", "") == "benchmark", "kind must be \"benchmark\"", why)) return false;
    if (!require(doc.contains("std_formula") && doc["std_formula"].is_string(),
                 "std_formula missing", why))
        return false;
    if (!require(doc.contains("config") && doc["config"].is_object(), "config missing", why)) return false;
    if (!require(doc.contains("runs") && doc["runs"].is_array() && !doc["runs"].empty(),
                 "runs must be a non-empty array", why))
        return false;
    for (const auto& run : doc["runs"]) {
        if (!require(run.is_object(), "run entries must be objects", why)) return false;
        for (const char* key : {"seed", "accuracy", "train_seconds", "predict_seconds", "L_used",
                                "reduct_size"})
            if (!require(run.contains(key) && run[key].is_number(), "run entry missing numeric field",
                         why))
                return false;
        for (const char* key : {"reduct_fallback", "degenerate_lower"})
            if (!require(run.contains(key) && run[key].is_boolean(), "run entry missing boolean field",
                         why))
                return false;
    }
    if (!require(doc.contains("aggregate") && doc["aggregate"].is_object(), "aggregate missing", why))
        return false;
    for (const char* key :
         {"mean_accuracy", "std_accuracy", "mean_train_seconds", "mean_predict_seconds"})
        if (!require(doc["aggregate"].contains(key) && doc["aggregate"][key].is_number(),
                     "aggregate missing numeric field", why))
            return false;
    return true;
}

}  // namespace relm
