#pragma once

#include <set>
#include <string>
#include <vector>

#include "coxdom/datum.hpp"
#include "coxdom/roots.hpp"

namespace testing {

inline coxdom::CoxeterDatum load(const std::string& name, const coxdom::DatumOptions& opts = {}) {
  return coxdom::CoxeterDatum::load(std::string(COXDOM_DATA_DIR) + "/" + name + ".json", opts);
}

inline coxdom::Root R(const coxdom::CoxeterDatum& d, const std::string& text) { return coxdom::parse_root(d, text); }

inline std::set<coxdom::RootKey> keys(const coxdom::CoxeterDatum& d, const std::vector<coxdom::Root>& roots) {
  std::set<coxdom::RootKey> out;
  for (const auto& r : roots) out.insert(coxdom::root_key(d, r));
  return out;
}

inline std::set<coxdom::RootKey> keys(const coxdom::CoxeterDatum& d, const std::vector<std::string>& texts) {
  std::set<coxdom::RootKey> out;
  for (const auto& t : texts) out.insert(coxdom::root_key(d, R(d, t)));
  return out;
}

// The four infinite systems the law checks are run against.
inline const std::vector<std::string>& infinite_systems() {
  static const std::vector<std::string> names{"tilde_a1", "tilde_a2", "universal3", "hyperbolic_q32"};
  return names;
}

}  // namespace testing
