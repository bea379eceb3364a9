#include <doctest.h>

#include <json.hpp>

#include "relm/model_io.hpp"

using namespace relm;

TEST_CASE("relm model json round trip reproduces predictions exactly") {
    const Dataset data = gen_stagger(150, 1, 12);
    RelmConfig config;
    config.L_override = 40;
    config.activation = ActivationKind::Hardlim;
    const RelmModel model = relm_train(data, config, 9);

    const AnyModel loaded = model_from_json_text(model_to_json_text(model));
    const auto& back = std::get<RelmModel>(loaded);

    const Dataset probe = gen_stagger(60, 1, 13);
    CHECK(relm_scores(back, probe) == relm_scores(model, probe));
    CHECK(relm_predict(back, probe) == relm_predict(model, probe));
    CHECK(back.reduct == model.reduct);
    CHECK(back.fusion_c == model.fusion_c);
    CHECK(back.encoding.classes == model.encoding.classes);
}

TEST_CASE("plain elm model json round trip reproduces predictions exactly") {
    const Dataset data = gen_hyperplane(80, 4, 0.1, 3);
    const PlainElmModel model = pipeline_elm_train(data, 16, 500.0, ActivationKind::Tribas, 21);

    const AnyModel loaded = model_from_json_text(model_to_json_text(model));
    const auto& back = std::get<PlainElmModel>(loaded);
    CHECK(pipeline_elm_predict(back, data) == pipeline_elm_predict(model, data));
}

TEST_CASE("version mismatch is an explicit error") {
    const Dataset data = gen_stagger(40, 2, 1);
    RelmConfig config;
    config.L_override = 5;
    const RelmModel model = relm_train(data, config, 4);

    nlohmann::json doc = nlohmann::json::parse(model_to_json_text(model));
    doc["format_version"] = 999;
    CHECK_THROWS_AS(model_from_json_text(doc.dump()), VersionError);
}

TEST_CASE("malformed model documents raise parse errors") {
    CHECK_THROWS_AS(model_from_json_text("not json"), ParseError);
    CHECK_THROWS_AS(model_from_json_text("{\"format_version\": 1, \"kind\": \"mystery\"}"), ParseError);
}

TEST_CASE("save and load through a file") {
    const Dataset data = gen_stagger(50, 3, 6);
    RelmConfig config;
    config.L_override = 8;
    const RelmModel model = relm_train(data, config, 77);

    const std::string path =
        (std::filesystem::temp_directory_path() / "relm-model-io-test.json").string();
    save_model(model, path);
    const AnyModel loaded = load_model(path);
    CHECK(relm_predict(std::get<RelmModel>(loaded), data) == relm_predict(model, data));
    std::filesystem::remove(path);
}
