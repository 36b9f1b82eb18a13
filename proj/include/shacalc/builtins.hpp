#pragma once

// Built-in scenarios: the worked examples with their expected results embedded
// as assertions. `run all` over this registry is the regression suite.

#include <string>
#include <vector>

#include "json.hpp"

namespace shacalc {

struct BuiltinInfo {
  std::string name;
  std::string description;
};

std::vector<BuiltinInfo> list_builtins();
bool is_builtin(const std::string& name);
// ParseError for an unknown name.
nlohmann::json builtin_scenario(const std::string& name);

}  // namespace shacalc
