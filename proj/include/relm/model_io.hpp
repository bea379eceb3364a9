#pragma once

#include <string>
#include <variant>

#include "relm/relm.hpp"

namespace relm {

inline constexpr int kModelFormatVersion = 1;

/// Writes content to a temporary sibling file and renames it into place.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

/// JSON model documents. Doubles are written with shortest round-trip
/// formatting, so save/load/predict reproduces in-memory predictions
/// exactly.
std::string model_to_json_text(const RelmModel& model);
std::string model_to_json_text(const PlainElmModel& model);

using AnyModel = std::variant<RelmModel, PlainElmModel>;

/// Throws VersionError on a format_version other than kModelFormatVersion,
/// ParseError on malformed documents.
AnyModel model_from_json_text(const std::string& text);

void save_model(const RelmModel& model, const std::string& path);
void save_model(const PlainElmModel& model, const std::string& path);
AnyModel load_model(const std::string& path);

}  // namespace relm
