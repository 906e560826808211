#include "coxdom/datum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "coxdom/errors.hpp"

namespace coxdom {

namespace {

using json = nlohmann::json;

Scalar finite_bond_entry(int m, Backend backend) {
  if (m == 2) return Scalar(0);
  if (m == 3 && backend == Backend::exact) return Scalar::ratio(-1, 2);
  return Scalar::approx(-std::cos(std::numbers::pi / m));
}

std::string weight_text(const json& w) {
  if (w.is_string()) return w.get<std::string>();
  if (w.is_number()) return w.dump();
  throw ParseError("bond weight must be a string or a number");
}

}  // namespace

CoxeterDatum CoxeterDatum::parse(std::string_view json_text, const DatumOptions& opts) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("datum is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("datum must be a JSON object");
  if (!doc.contains("labels") || !doc["labels"].is_array()) throw ParseError("datum needs a \"labels\" array");

  std::vector<std::string> labels;
  for (const auto& l : doc["labels"]) {
    if (!l.is_string()) throw ParseError("labels must be strings");
    labels.push_back(l.get<std::string>());
  }

  std::vector<BondSpec> bonds;
  if (doc.contains("bonds")) {
    if (!doc["bonds"].is_array()) throw ParseError("\"bonds\" must be an array");
    for (const auto& b : doc["bonds"]) {
      if (!b.is_object()) throw ParseError("each bond must be an object");
      if (!b.contains("i") || !b["i"].is_string() || !b.contains("j") || !b["j"].is_string())
        throw ParseError("bond endpoints \"i\" and \"j\" must be label strings");
      if (!b.contains("m")) throw ParseError("bond is missing \"m\"");
      BondSpec spec;
      spec.i = b["i"].get<std::string>();
      spec.j = b["j"].get<std::string>();
      const json& m = b["m"];
      if (m.is_number_integer()) {
        spec.m = m.get<int>();
      } else if (m.is_string()) {
        auto s = m.get<std::string>();
        if (s == "inf" || s == "infinity" || s == "∞") {
          spec.m = kInfiniteBond;
        } else {
          throw ParseError("bond order \"" + s + "\" is not an integer or \"inf\"");
        }
      } else {
        throw ParseError("bond order must be an integer or \"inf\"");
      }
      if (b.contains("weight")) spec.weight = weight_text(b["weight"]);
      bonds.push_back(std::move(spec));
    }
  }
  return build(std::move(labels), bonds, opts);
}

CoxeterDatum CoxeterDatum::load(const std::filesystem::path& path, const DatumOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open datum file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), opts);
}

CoxeterDatum CoxeterDatum::build(std::vector<std::string> labels, const std::vector<BondSpec>& bonds,
                                 const DatumOptions& opts) {
  if (labels.empty()) throw ValidationError("datum needs at least one generator");
  if (labels.size() > opts.max_rank)
    throw ValidationError("rank " + std::to_string(labels.size()) + " exceeds the cap of " +
                          std::to_string(opts.max_rank));
  if (!(opts.tolerance >= 0.0)) throw ValidationError("tolerance must be non-negative");

  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k].empty()) throw ValidationError("generator labels must be non-empty");
    if (!index.emplace(labels[k], k).second) throw ValidationError("duplicate generator label '" + labels[k] + "'");
  }

  const std::size_t r = labels.size();
  std::vector<int> m(r * r, 2);
  std::vector<std::optional<mpq_class>> weights(r * r);
  std::vector<bool> declared(r * r, false);
  for (std::size_t k = 0; k < r; ++k) m[k * r + k] = 1;

  for (const auto& b : bonds) {
    auto ii = index.find(b.i);
    auto jj = index.find(b.j);
    if (ii == index.end()) throw ValidationError("bond refers to unknown label '" + b.i + "'");
    if (jj == index.end()) throw ValidationError("bond refers to unknown label '" + b.j + "'");
    std::size_t i = ii->second, j = jj->second;
    if (i == j) throw ValidationError("bond from '" + b.i + "' to itself");
    if (b.m != kInfiniteBond && b.m < 2)
      throw ValidationError("bond order m = " + std::to_string(b.m) + " between '" + b.i + "' and '" + b.j +
                            "' must be at least 2");

    std::optional<mpq_class> w;
    if (b.weight) {
      if (b.m != kInfiniteBond)
        throw ValidationError("weight given for finite bond between '" + b.i + "' and '" + b.j + "'");
      w = parse_scalar(*b.weight).rational();
      if (*w > -1) throw ValidationError("infinite bond weight " + *b.weight + " violates (a,b) <= -1");
    } else if (b.m == kInfiniteBond) {
      w = mpq_class(-1);
    }

    if (declared[i * r + j]) {
      bool same = m[i * r + j] == b.m && weights[i * r + j] == w;
      if (!same) throw ValidationError("conflicting declarations for bond '" + b.i + "'-'" + b.j + "'");
      continue;
    }
    declared[i * r + j] = declared[j * r + i] = true;
    m[i * r + j] = m[j * r + i] = b.m;
    weights[i * r + j] = weights[j * r + i] = w;
  }

  bool rational = std::all_of(m.begin(), m.end(), [](int v) { return v == 1 || v == 2 || v == 3 || v == kInfiniteBond; });
  Backend backend = opts.backend.value_or(rational ? Backend::exact : Backend::approx);
  if (backend == Backend::exact && !rational)
    throw ValidationError("exact mode requires every bond order in {2, 3, inf}");

  CoxeterDatum d;
  d.labels_ = std::move(labels);
  d.bonds_ = std::move(m);
  d.backend_ = backend;
  d.tolerance_ = opts.tolerance;
  d.gram_.resize(r * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      int mij = d.bonds_[i * r + j];
      Scalar entry;
      if (i == j)
        entry = Scalar(1);
      else if (mij == kInfiniteBond)
        entry = Scalar::exact(*weights[i * r + j]);
      else
        entry = finite_bond_entry(mij, backend);
      d.gram_[i * r + j] = entry.as(backend);
    }
  }
  return d;
}

const std::string& CoxeterDatum::label(std::size_t i) const {
  check_index(i);
  return labels_[i];
}

std::size_t CoxeterDatum::index_of(std::string_view label) const {
  for (std::size_t k = 0; k < labels_.size(); ++k)
    if (labels_[k] == label) return k;
  throw IndexError("unknown generator label '" + std::string(label) + "'");
}

int CoxeterDatum::bond(std::size_t i, std::size_t j) const {
  check_index(i);
  check_index(j);
  return bonds_[i * rank() + j];
}

const Scalar& CoxeterDatum::gram(std::size_t i, std::size_t j) const {
  check_index(i);
  check_index(j);
  return gram_[i * rank() + j];
}

int CoxeterDatum::key_digits() const {
  if (tolerance_ <= 0.0) return 15;
  int digits = static_cast<int>(std::ceil(-std::log10(tolerance_))) - 2;
  return std::clamp(digits, 1, 15);
}

std::string CoxeterDatum::to_json() const {
  json doc;
  doc["labels"] = labels_;
  json bonds = json::array();
  const std::size_t r = rank();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      int mij = bonds_[i * r + j];
      if (mij == 2) continue;
      json b;
      b["i"] = labels_[i];
      b["j"] = labels_[j];
      if (mij == kInfiniteBond) {
        b["m"] = "inf";
        b["weight"] = gram_[i * r + j].str();
      } else {
        b["m"] = mij;
      }
      bonds.push_back(std::move(b));
    }
  }
  doc["bonds"] = std::move(bonds);
  return doc.dump();
}

bool operator==(const CoxeterDatum& a, const CoxeterDatum& b) {
  return a.labels_ == b.labels_ && a.bonds_ == b.bonds_ && a.gram_ == b.gram_ && a.backend_ == b.backend_ &&
         a.tolerance_ == b.tolerance_;
}

void CoxeterDatum::check_index(std::size_t i) const {
  if (i >= labels_.size())
    throw IndexError("generator index " + std::to_string(i) + " out of range for rank " + std::to_string(rank()));
}

Scalar gram_entry(const CoxeterDatum& d, std::size_t i, std::size_t j) { return d.gram(i, j); }

bool gram_positive_definite(const CoxeterDatum& d) {
  const std::size_t r = d.rank();
  std::vector<Scalar> a(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a[i * r + j] = d.gram(i, j);
  // Symmetric Gaussian elimination: positive definite iff every pivot is > 0.
  for (std::size_t k = 0; k < r; ++k) {
    const Scalar pivot = a[k * r + k];
    if (sign(pivot, d.eps()) <= 0) return false;
    for (std::size_t i = k + 1; i < r; ++i) {
      if (a[i * r + k].is_zero()) continue;
      Scalar factor = a[i * r + k] / pivot;
      for (std::size_t j = k; j < r; ++j) a[i * r + j] -= factor * a[k * r + j];
    }
  }
  return true;
}

}  // namespace coxdom
