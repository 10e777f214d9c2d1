#include "cqd/physics_registry.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "cqd/circuit.hpp"
#include "cqd/error.hpp"
#include "cqd/extraction.hpp"
#include "cqd/jc_oracle.hpp"
#include "cqd/shifts.hpp"
#include "cqd/transmon.hpp"

namespace cqd::physics {

using nlohmann::json;

namespace {

using Args = std::vector<json>;

struct Entry {
  std::vector<std::string> params;
  std::size_t required;  // leading params that must be present
  std::function<json(const Args&)> fn;
};

double num(const json& v, const std::string& name) {
  if (!v.is_number()) throw Error(ErrorCode::invalid_argument, "argument '" + name + "' must be a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& name) {
  if (!v.is_number_integer()) throw Error(ErrorCode::invalid_argument, "argument '" + name + "' must be an integer");
  return v.get<int>();
}

ResonatorType res_type(const json& v) {
  if (!v.is_string()) throw Error(ErrorCode::invalid_argument, "argument 'res_type' must be a string");
  try {
    return parse_resonator_type(v.get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorCode::invalid_argument, e.what());
  }
}

json shifts(const DispersiveShifts& s) { return json{{"chi_L", s.chi_L}, {"chi", s.chi}}; }

const std::map<std::string, Entry, std::less<>>& table() {
  static const std::map<std::string, Entry, std::less<>> t = [] {
    std::map<std::string, Entry, std::less<>> m;
    auto add = [&m](std::string name, std::vector<std::string> params, std::function<json(const Args&)> fn,
                    std::size_t required = std::string::npos) {
      const std::size_t req = required == std::string::npos ? params.size() : required;
      m.emplace(std::move(name), Entry{std::move(params), req, std::move(fn)});
    };
    add("charging_energy", {"C"}, [](const Args& a) { return json(charging_energy(num(a[0], "C"))); });
    add("capacitance_of", {"E_C"}, [](const Args& a) { return json(capacitance_of(num(a[0], "E_C"))); });
    add("ej_from_ic", {"I_0"}, [](const Args& a) { return json(ej_from_ic(num(a[0], "I_0"))); });
    add("inductive_energy", {"L"}, [](const Args& a) { return json(inductive_energy(num(a[0], "L"))); });
    add("resonator_effective_capacitance", {"f_r", "Z_c", "res_type"}, [](const Args& a) {
      return json(resonator_effective_capacitance(num(a[0], "f_r"), num(a[1], "Z_c"), res_type(a[2])));
    });
    add("coupling_g_capacitive", {"C_c", "C_q", "C_r", "f_r", "E_J", "E_C"}, [](const Args& a) {
      return json(coupling_g_capacitive(num(a[0], "C_c"), num(a[1], "C_q"), num(a[2], "C_r"), num(a[3], "f_r"),
                                        num(a[4], "E_J"), num(a[5], "E_C")));
    });
    add("outside_weak_coupling", {"C_c", "C_q", "C_r"}, [](const Args& a) {
      return json(outside_weak_coupling(num(a[0], "C_c"), num(a[1], "C_q"), num(a[2], "C_r")));
    });
    add("coupled_res_freq_and_kappa", {"f_prime", "C_r", "C_rf", "C_cg", "Z_0"}, [](const Args& a) {
      const auto r = coupled_res_freq_and_kappa(num(a[0], "f_prime"), num(a[1], "C_r"), num(a[2], "C_rf"),
                                                num(a[3], "C_cg"), num(a[4], "Z_0"));
      return json{{"f_r", r.f_r}, {"kappa", r.kappa}};
    });
    add("transmon_fq_alpha", {"E_J", "E_C"}, [](const Args& a) {
      const auto s = transmon_fq_alpha(num(a[0], "E_J"), num(a[1], "E_C"));
      return json{{"f_q", s.f_q}, {"alpha", s.alpha}};
    });
    add("transmon_fq_alpha_approx", {"E_J", "E_C"}, [](const Args& a) {
      const auto s = transmon_fq_alpha_approx(num(a[0], "E_J"), num(a[1], "E_C"));
      return json{{"f_q", s.f_q}, {"alpha", s.alpha}};
    });
    add("transmon_levels", {"E_J", "E_C", "n_g", "n_cut", "k"}, [](const Args& a) {
      return json(transmon_levels(num(a[0], "E_J"), num(a[1], "E_C"), num(a[2], "n_g"), integer(a[3], "n_cut"),
                                  integer(a[4], "k")));
    });
    add("find_ej_ec", {"f_q", "alpha"}, [](const Args& a) {
      const auto r = find_ej_ec(num(a[0], "f_q"), num(a[1], "alpha"));
      return json{{"E_J", r.E_J}, {"E_C", r.E_C}, {"iterations", r.iterations}};
    });
    add("perturbative_shifts", {"g", "f_q", "f_r", "alpha"}, [](const Args& a) {
      return shifts(perturbative_shifts(num(a[0], "g"), num(a[1], "f_q"), num(a[2], "f_r"), num(a[3], "alpha")));
    });
    add("rwa_shifts", {"g", "f_q", "f_r", "alpha"}, [](const Args& a) {
      return shifts(rwa_shifts(num(a[0], "g"), num(a[1], "f_q"), num(a[2], "f_r"), num(a[3], "alpha")));
    });
    add("g_from_lamb", {"chi_L", "f_q", "f_r"}, [](const Args& a) {
      return json(g_from_lamb(num(a[0], "chi_L"), num(a[1], "f_q"), num(a[2], "f_r")));
    });
    add("g_rwa_from_lamb", {"chi_L", "f_q", "f_r"}, [](const Args& a) {
      return json(g_rwa_from_lamb(num(a[0], "chi_L"), num(a[1], "f_q"), num(a[2], "f_r")));
    });
    add("flux_tuned_fq", {"phi", "f_max", "d"}, [](const Args& a) {
      return json(flux_tuned_fq(num(a[0], "phi"), num(a[1], "f_max"), num(a[2], "d")));
    });
    add("avoided_crossing_branches", {"f_qubit", "f_r", "g"}, [](const Args& a) {
      const auto b = avoided_crossing_branches(num(a[0], "f_qubit"), num(a[1], "f_r"), num(a[2], "g"));
      return json{{"upper", b.upper}, {"lower", b.lower}};
    });
    add("alpha_from_spectroscopy", {"f_01", "f_two_photon"}, [](const Args& a) {
      return json(alpha_from_spectroscopy(num(a[0], "f_01"), num(a[1], "f_two_photon")));
    });
    add(
        "numerical_shifts", {"f_r", "f_q", "alpha", "g", "n_r", "n_q", "rwa"},
        [](const Args& a) {
          oracle::JCSpec spec{num(a[0], "f_r"), num(a[1], "f_q"), num(a[2], "alpha"), num(a[3], "g")};
          if (!a[4].is_null()) spec.n_r = integer(a[4], "n_r");
          if (!a[5].is_null()) spec.n_q = integer(a[5], "n_q");
          bool rwa = false;
          if (!a[6].is_null()) {
            if (!a[6].is_boolean()) throw Error(ErrorCode::invalid_argument, "argument 'rwa' must be a boolean");
            rwa = a[6].get<bool>();
          }
          const auto s = oracle::numerical_shifts(spec, rwa ? oracle::CouplingForm::rwa : oracle::CouplingForm::full);
          return json{{"chi_L", s.chi_L}, {"chi", s.chi}, {"n_r", s.n_r}, {"n_q", s.n_q}};
        },
        4);
    add("second_order_E2", {"m", "n", "g", "f_q", "f_r", "alpha"}, [](const Args& a) {
      return json(oracle::second_order_E2(integer(a[0], "m"), integer(a[1], "n"), num(a[2], "g"), num(a[3], "f_q"),
                                          num(a[4], "f_r"), num(a[5], "alpha")));
    });
    return m;
  }();
  return t;
}

}  // namespace

json call(std::string_view name, const json& args) {
  const auto& t = table();
  const auto it = t.find(name);
  if (it == t.end()) throw Error(ErrorCode::invalid_argument, "unknown function '" + std::string(name) + "'");
  const Entry& e = it->second;
  Args a(e.params.size());

  if (args.is_array()) {
    if (args.size() < e.required || args.size() > e.params.size()) {
      throw Error(ErrorCode::invalid_argument, std::string(name) + " takes " + std::to_string(e.required) +
                                                   (e.required == e.params.size() ? "" : "+") + " arguments, got " +
                                                   std::to_string(args.size()));
    }
    for (std::size_t i = 0; i < args.size(); ++i) a[i] = args[i];
  } else if (args.is_object()) {
    for (const auto& [key, val] : args.items()) {
      const auto p = std::find(e.params.begin(), e.params.end(), key);
      if (p == e.params.end()) {
        throw Error(ErrorCode::invalid_argument, std::string(name) + " has no parameter '" + key + "'");
      }
      a[static_cast<std::size_t>(p - e.params.begin())] = val;
    }
    for (std::size_t i = 0; i < e.required; ++i) {
      if (a[i].is_null()) {
        throw Error(ErrorCode::invalid_argument, std::string(name) + " is missing argument '" + e.params[i] + "'");
      }
    }
  } else {
    throw Error(ErrorCode::invalid_argument, "arguments must be an array or an object");
  }
  return e.fn(a);
}

std::vector<Signature> exported_functions() {
  std::vector<Signature> out;
  for (const auto& [name, e] : table()) out.push_back({name, e.params});
  return out;
}

}  // namespace cqd::physics
