#pragma once

#include "nsinf/construction.hpp"
#include "nsinf/norms.hpp"
#include "nsinf/trig_field.hpp"

#include <json.hpp>

#include <string>

namespace nsinf {

// JSON reproducibility formats: wavevectors as integer triples, unit
// vectors and amplitudes as full-precision decimal strings, profiles as
// [coeff, rate, power] triples.

nlohmann::json to_json(const TrigField& f);
TrigField trig_field_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FrequencyFamily& fam);
FrequencyFamily family_from_json(const nlohmann::json& j);

nlohmann::json to_json(const InitialData& data);
InitialData initial_data_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NormReport& rep);

std::string format_full(double v); // shortest exact decimal (%.17g)
double parse_double(const nlohmann::json& j);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

} // namespace nsinf
