#pragma once

// Scenario files: a JSON object giving either four joint expectations
//
//   {"rows": ["e", "g"], "cols": ["f", "g"],
//    "joint": [[-1, 1], [1, 1]],
//    "singles": {"rows": [1, 1], "cols": [1, 1]}}
//
// or the pet/food mixing parameter
//
//   {"case_c_probability": 0.25}
//
// "rows", "cols" and "singles" are optional. "lambda" is accepted as an alias
// for "case_c_probability".

#include <optional>
#include <string>
#include <string_view>

#include "ctxprob/bell.hpp"

namespace ctxprob {

struct Scenario {
  CorrelationTable table;
  /// Set when the file gave a case-C probability instead of joints.
  std::optional<double> case_c_probability;
};

Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::string& path);

}  // namespace ctxprob
