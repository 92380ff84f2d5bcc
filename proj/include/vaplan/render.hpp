#pragma once

#include "vaplan/diagnosis.hpp"
#include "vaplan/planner.hpp"

#include <string>

#include "json.hpp"

namespace vaplan {

enum class OutputFormat { text, json };

std::string render_plan_text(const Plan &plan);
nlohmann::json plan_to_json(const Plan &plan);
Plan plan_from_json(const nlohmann::json &j);

/// One-sentence-per-finding English, or the lossless JSON form.
std::string render_explanation(const Explanation &e, OutputFormat format);
nlohmann::json explanation_to_json(const Explanation &e);
Explanation explanation_from_json(const nlohmann::json &j);

std::string render_outcome(const Outcome &o, OutputFormat format);
nlohmann::json outcome_to_json(const Outcome &o);

} // namespace vaplan
