#pragma once

#include <optional>
#include <unordered_map>
#include <string>
#include <vector>

#include <json.hpp>

#include "coxdom/datum.hpp"
#include "coxdom/dominance.hpp"
#include "coxdom/laws.hpp"

namespace coxdom {

inline constexpr const char* kVersion = "0.1.0";

enum class OutputFormat { json, csv, table };

OutputFormat parse_format(const std::string& text);

// Coefficient text: exact rationals verbatim; approximate values either in
// shortest round-trip form or with `precision` significant digits.
std::string scalar_text(const Scalar& s, std::optional<int> precision = std::nullopt);
nlohmann::json root_json(const Root& x, std::optional<int> precision = std::nullopt);

// Rows of the root table shared by every root-listing command, sorted by
// depth then coefficients. Dominated roots are referenced by row index; any
// not yet listed are added. row_of, when given, receives each root's row.
nlohmann::json root_table(const CoxeterDatum& d, std::vector<DominanceRecord> records,
                          std::optional<int> precision = std::nullopt,
                          std::unordered_map<RootKey, std::size_t>* row_of = nullptr);

nlohmann::json law_json(const LawOutcome& law);

// "YYYY-MM-DDTHH:MM:SSZ" from SOURCE_DATE_EPOCH when set, else the clock.
std::string report_timestamp();

// Top-level document: command, datum echo, results, version, timestamp.
nlohmann::json make_report(const std::string& command, const CoxeterDatum* d, nlohmann::json results);

std::string render(const nlohmann::json& report, OutputFormat format);

}  // namespace coxdom
