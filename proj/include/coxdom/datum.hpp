#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coxdom/scalar.hpp"

namespace coxdom {

// Bond order used for m_ab = infinity.
inline constexpr int kInfiniteBond = 0;

struct DatumOptions {
  // nullopt selects exact mode whenever every Gram entry is rational.
  std::optional<Backend> backend;
  double tolerance = 1e-9;
  std::size_t max_rank = 10;
};

// One declared bond between two generators. m == kInfiniteBond marks an
// infinite bond; weight is then the Gram entry (defaults to -1).
struct BondSpec {
  std::string i;
  std::string j;
  int m = 2;
  std::optional<std::string> weight;
};

// A root basis realized on E: generators are linearly independent basis
// vectors e_a with Gram matrix B_ab = (e_a, e_b).
class CoxeterDatum {
 public:
  static CoxeterDatum parse(std::string_view json_text, const DatumOptions& opts = {});
  static CoxeterDatum load(const std::filesystem::path& path, const DatumOptions& opts = {});
  static CoxeterDatum build(std::vector<std::string> labels, const std::vector<BondSpec>& bonds,
                            const DatumOptions& opts = {});

  std::size_t rank() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const;
  std::size_t index_of(std::string_view label) const;

  // m_ij; kInfiniteBond for infinity, 1 on the diagonal.
  int bond(std::size_t i, std::size_t j) const;
  const Scalar& gram(std::size_t i, std::size_t j) const;

  Backend backend() const { return backend_; }
  bool is_exact() const { return backend_ == Backend::exact; }
  // Classification tolerance: 0 in exact mode.
  double eps() const { return backend_ == Backend::exact ? 0.0 : tolerance_; }
  double tolerance() const { return tolerance_; }
  // Decimal places used by canonical keys in approximate mode.
  int key_digits() const;

  // Datum file text; bonds with m = 2 are omitted.
  std::string to_json() const;

  friend bool operator==(const CoxeterDatum& a, const CoxeterDatum& b);

 private:
  CoxeterDatum() = default;
  void check_index(std::size_t i) const;

  std::vector<std::string> labels_;
  std::vector<int> bonds_;
  std::vector<Scalar> gram_;
  Backend backend_ = Backend::exact;
  double tolerance_ = 1e-9;
};

// B_ij with bounds checking (IndexError).
Scalar gram_entry(const CoxeterDatum& d, std::size_t i, std::size_t j);

// True when the Gram matrix is positive definite, i.e. W is finite.
bool gram_positive_definite(const CoxeterDatum& d);

}  // namespace coxdom
