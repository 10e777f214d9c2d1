#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace cqd::physics {

// Name-based dispatch onto the native physics functions, for foreign
// bindings. Arguments are an object keyed by parameter name or an array in
// parameter order; units are the native ones (GHz, fF, nA, nH, ohm).
// Throws Error(invalid_argument) on an unknown name or an arity mismatch;
// errors raised by the function itself propagate unchanged.
nlohmann::json call(std::string_view name, const nlohmann::json& args);

struct Signature {
  std::string name;
  std::vector<std::string> params;
};

// Every callable name with its parameter list, sorted by name.
std::vector<Signature> exported_functions();

}  // namespace cqd::physics
