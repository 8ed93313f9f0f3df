#include "ctxprob/scenario_io.hpp"

#include <json.hpp>

#include "ctxprob/error.hpp"
#include "text_util.hpp"

namespace ctxprob {

namespace {

using nlohmann::json;

std::array<double, 2> pair_of_numbers(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(where + ": expected an array of two numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::array<std::string, 2> pair_of_labels(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    throw ParseError(where + ": expected an array of two labels");
  }
  std::array<std::string, 2> out{j[0].get<std::string>(), j[1].get<std::string>()};
  if (out[0].empty() || out[1].empty()) throw ParseError(where + ": empty label");
  return out;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid scenario JSON at byte ") + std::to_string(e.byte) + ": " +
                     e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario must be a JSON object");

  Scenario s;
  const json* lambda = nullptr;
  if (doc.contains("case_c_probability")) lambda = &doc["case_c_probability"];
  else if (doc.contains("lambda")) lambda = &doc["lambda"];

  if (lambda != nullptr) {
    if (doc.contains("joint")) throw ParseError("scenario gives both joints and a case-C probability");
    if (!lambda->is_number()) throw ParseError("case-C probability must be a number");
    s.case_c_probability = lambda->get<double>();
    s.table = pet_food_table({*s.case_c_probability});
    return s;
  }

  if (!doc.contains("joint")) throw ParseError("scenario needs \"joint\" or \"case_c_probability\"");
  const json& joint = doc["joint"];
  if (!joint.is_array() || joint.size() != 2) throw ParseError("joint: expected a 2x2 array");
  s.table.joint[0] = pair_of_numbers(joint[0], "joint[0]");
  s.table.joint[1] = pair_of_numbers(joint[1], "joint[1]");
  if (doc.contains("rows")) s.table.row_contexts = pair_of_labels(doc["rows"], "rows");
  if (doc.contains("cols")) s.table.col_contexts = pair_of_labels(doc["cols"], "cols");
  if (doc.contains("singles") && !doc["singles"].is_null()) {
    const json& singles = doc["singles"];
    if (!singles.is_object() || !singles.contains("rows") || !singles.contains("cols")) {
      throw ParseError("singles: expected {\"rows\": [..], \"cols\": [..]}");
    }
    s.table.singles = Singles{pair_of_numbers(singles["rows"], "singles.rows"),
                              pair_of_numbers(singles["cols"], "singles.cols")};
  }
  try {
    s.table.validate();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  try {
    return parse_scenario(detail::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace ctxprob
