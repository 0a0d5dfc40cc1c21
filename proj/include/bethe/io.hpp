#pragma once

// JSON ingestion and reporting.  All exact values travel as text rationals
// ("p/q" or "p/q+r/si"); no floats appear anywhere in problem or report
// files.  Timings are integer microseconds.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bethe/config.hpp"
#include "bethe/rational.hpp"

namespace bethe {

using Json = nlohmann::json;

// Parse helpers with field-position context in error messages.
Json load_json_file(const std::string& path);
GaussianRational rat_field(const Json& j, const std::string& field);
GaussianRational rat_value(const Json& v, const std::string& where);
std::vector<GaussianRational> rat_array(const Json& j, const std::string& field);

// Configuration <-> JSON.  Schema:
//   { "c": "1", "uC": [..], "uB": [..], "vC": [..], "vB": [..],
//     "varkappa": "1", "kappa": ["1","1","1"],
//     "r1_free": [{"point": "..", "value": "..", "deriv": ".."?}, ..],
//     "r3_free": [..] }
// varkappa, kappa and the tables are optional.
BetheConfig<GaussianRational> config_from_json(const Json& j);
Json config_to_json(const BetheConfig<GaussianRational>& cfg);

struct CheckResult {
    std::string name;
    std::string status = "pass"; // pass | fail | error | skipped-budget
    Json values = Json::object();
    Json witness; // null unless status is fail or error
    std::uint64_t micros = 0;

    bool ok() const { return status == "pass" || status == "skipped-budget"; }
};

struct Report {
    std::string command;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::vector<CheckResult> checks;

    bool pass() const;
    Json to_json() const;
};

// Serializes and writes the report (stdout when path is empty).
void emit_report(const Report& rep, const std::string& path);

} // namespace bethe
