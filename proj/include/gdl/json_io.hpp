// JSON (de)serialization and plain-text rendering for the CLI surfaces.
// All documents use stable key order.
#pragma once

#include <string>

#include "gdl/core.hpp"
#include "gdl/survey.hpp"
#include "json.hpp"

namespace gdl {

using ordered_json = nlohmann::ordered_json;

// {"circuits": [k_1, ..., k_m], "labels": [n integers]}
ordered_json labeling_to_json(const Labeling& labeling);
Labeling labeling_from_json(const ordered_json& j);  // throws invalid_argument

ordered_json report_to_json(const VerificationReport& report);
ordered_json certificate_to_json(const Certificate& cert,
                                 const CircuitFamily& family);
ordered_json survey_to_json(const SurveyReport& report);

std::string report_to_text(const VerificationReport& report);
std::string certificate_to_text(const Certificate& cert,
                                const CircuitFamily& family);
std::string survey_to_text(const SurveyReport& report);

}  // namespace gdl
