#include "relm/model_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace relm {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows) {
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    if (n == 0) return Eigen::MatrixXd(0, 0);
    const Eigen::Index m = static_cast<Eigen::Index>(rows.at(0).size());
    Eigen::MatrixXd out(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < m; ++j) out(i, j) = rows.at(i).at(j).get<double>();
    return out;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Eigen::VectorXd vector_from_json(const json& arr) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(arr.size()));
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = arr.at(i).get<double>();
    return out;
}

json layer_to_json(const HiddenLayer& layer, const Eigen::MatrixXd& beta) {
    return json{{"weights", matrix_to_json(layer.input_weights)},
                {"biases", vector_to_json(layer.biases)},
                {"beta", matrix_to_json(beta)}};
}

void layer_from_json(const json& doc, ActivationKind activation, HiddenLayer& layer,
                     Eigen::MatrixXd& beta) {
    layer.activation = activation;
    layer.input_weights = matrix_from_json(doc.at("weights"));
    layer.biases = vector_from_json(doc.at("biases"));
    beta = matrix_from_json(doc.at("beta"));
}

json scaler_to_json(const MinMaxScaler& scaler) {
    return json{{"min", vector_to_json(scaler.min)}, {"max", vector_to_json(scaler.max)}};
}

MinMaxScaler scaler_from_json(const json& doc) {
    MinMaxScaler s;
    s.min = vector_from_json(doc.at("min"));
    s.max = vector_from_json(doc.at("max"));
    return s;
}

json common_header(const char* kind, const DiscretizationSpec& features,
                   const MinMaxScaler& scaler, ActivationKind activation,
                   const TargetEncoding& encoding) {
    return json{{"format_version", kModelFormatVersion},
                {"kind", kind},
                {"activation", activation_name(activation)},
                {"classes", encoding.classes},
                {"features", json::parse(features.to_json_text())},
                {"scaler", scaler_to_json(scaler)}};
}

void check_version(const json& doc) {
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion)
        throw VersionError("model format version " + std::to_string(version) +
                           " is not supported (expected " + std::to_string(kModelFormatVersion) + ")");
}

}  // namespace

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write file: " + tmp.string());
        out << content;
        if (!out.flush()) throw Error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string model_to_json_text(const RelmModel& model) {
    json doc = common_header("relm", model.features, model.scaler,
                             model.lower_layer.activation, model.encoding);
    doc["relm"] = json{{"reduct", model.reduct.members()},
                       {"reduct_fallback", model.reduct_fallback},
                       {"degenerate_lower", model.degenerate_lower},
                       {"fusion_c", model.fusion_c},
                       {"lower", layer_to_json(model.lower_layer, model.beta_lower.beta)},
                       {"upper", layer_to_json(model.upper_layer, model.beta_upper.beta)}};
    return doc.dump(2);
}

std::string model_to_json_text(const PlainElmModel& model) {
    json doc = common_header("elm", model.features, model.scaler,
                             model.core.layer.activation, model.core.encoding);
    doc["elm"] = layer_to_json(model.core.layer, model.core.weights.beta);
    return doc.dump(2);
}

AnyModel model_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed model document: ") + e.what());
    }
    try {
        check_version(doc);
        const std::string kind = doc.at("kind").get<std::string>();
        const ActivationKind activation = activation_from_name(doc.at("activation").get<std::string>());
        const auto features = DiscretizationSpec::from_json_text(doc.at("features").dump());
        const auto scaler = scaler_from_json(doc.at("scaler"));
        TargetEncoding encoding{doc.at("classes").get<std::vector<std::string>>()};

        if (kind == "relm") {
            const json& body = doc.at("relm");
            RelmModel model;
            model.features = features;
            model.scaler = scaler;
            model.encoding = std::move(encoding);
            model.reduct = AttrSet(body.at("reduct").get<std::vector<int>>());
            model.reduct_fallback = body.at("reduct_fallback").get<bool>();
            model.degenerate_lower = body.at("degenerate_lower").get<bool>();
            model.fusion_c = body.at("fusion_c").get<double>();
            layer_from_json(body.at("lower"), activation, model.lower_layer, model.beta_lower.beta);
            layer_from_json(body.at("upper"), activation, model.upper_layer, model.beta_upper.beta);
            return model;
        }
        if (kind == "elm") {
            PlainElmModel model;
            model.features = features;
            model.scaler = scaler;
            model.core.encoding = std::move(encoding);
            layer_from_json(doc.at("elm"), activation, model.core.layer, model.core.weights.beta);
            return model;
        }
        throw ParseError("unknown model kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("model document missing fields: ") + e.what());
    }
}

void save_model(const RelmModel& model, const std::string& path) {
    write_text_atomic(path, model_to_json_text(model));
}

void save_model(const PlainElmModel& model, const std::string& path) {
    write_text_atomic(path, model_to_json_text(model));
}

AnyModel load_model(const std::string& path) { return model_from_json_text(read_text(path)); }

}  // namespace relm
