#include "coxdom/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "coxdom/errors.hpp"

namespace coxdom {

using json = nlohmann::json;

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  if (text == "table") return OutputFormat::table;
  throw DomainError("unknown output format '" + text + "'");
}

std::string scalar_text(const Scalar& s, std::optional<int> precision) {
  if (s.is_exact() || !precision) return s.str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", *precision, s.to_double());
  return buf;
}

json root_json(const Root& x, std::optional<int> precision) {
  json a = json::array();
  for (const auto& c : x.coeffs()) a.push_back(scalar_text(c, precision));
  return a;
}

json root_table(const CoxeterDatum& d, std::vector<DominanceRecord> records, std::optional<int> precision,
                std::unordered_map<RootKey, std::size_t>* row_of_out) {
  std::unordered_set<RootKey> listed;
  for (const auto& rec : records) listed.insert(root_key(d, rec.root));
  // D(y) is a subset of D(x) for y in D(x), so appending closes after one pass.
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t k = 0; k < records[i].dominated.size(); ++k) {
      Root y = records[i].dominated[k];
      if (listed.insert(root_key(d, y)).second) records.push_back(dominated_set(d, y));
    }
  }
  for (auto& rec : records)
    if (!rec.root.cached_depth()) rec.root.set_depth(depth(d, rec.root));
  std::sort(records.begin(), records.end(),
            [](const DominanceRecord& a, const DominanceRecord& b) { return root_less(a.root, b.root); });
  std::unordered_map<RootKey, std::size_t> row_of;
  for (std::size_t i = 0; i < records.size(); ++i) row_of.emplace(root_key(d, records[i].root), i);

  json rows = json::array();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    json row;
    row["index"] = i;
    row["depth"] = *rec.root.cached_depth();
    row["n"] = rec.n();
    row["coefficients"] = root_json(rec.root, precision);
    std::vector<std::size_t> dom;
    for (const auto& y : rec.dominated) dom.push_back(row_of.at(root_key(d, y)));
    std::sort(dom.begin(), dom.end());
    row["dominated"] = dom;
    rows.push_back(std::move(row));
  }
  if (row_of_out) *row_of_out = std::move(row_of);
  return rows;
}

json law_json(const LawOutcome& law) {
  json j;
  j["name"] = law.name;
  j["statement"] = law.statement;
  j["passed"] = law.passed;
  j["checked"] = law.checked;
  if (!law.witness.empty()) j["witness"] = law.witness;
  if (!law.detail.empty()) j["detail"] = law.detail;
  return j;
}

std::string report_timestamp() {
  std::time_t t;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env && *env) {
    t = static_cast<std::time_t>(std::strtoll(env, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json make_report(const std::string& command, const CoxeterDatum* d, json results) {
  json doc;
  doc["command"] = command;
  if (d) {
    json echo = json::parse(d->to_json());
    echo["backend"] = std::string(to_string(d->backend()));
    echo["tolerance"] = d->tolerance();
    doc["datum"] = std::move(echo);
  }
  doc["results"] = std::move(results);
  doc["version"] = kVersion;
  doc["timestamp"] = report_timestamp();
  return doc;
}

namespace {

std::string plain(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string coefficients_text(const json& coeffs) {
  std::string s = "(";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) s += ',';
    s += coeffs[i].get<std::string>();
  }
  return s + ")";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> labels_of(const json& report) {
  if (report.contains("datum")) return report["datum"]["labels"].get<std::vector<std::string>>();
  return {};
}

std::string render_csv(const json& report) {
  std::ostringstream os;
  const json& res = report["results"];
  if (res.contains("roots")) {
    os << "depth,n";
    for (const auto& l : labels_of(report)) os << ",c_" << l;
    os << ",dominated_count,dominated_indices\n";
    for (const auto& row : res["roots"]) {
      os << row["depth"].get<std::size_t>() << ',' << row["n"].get<std::size_t>();
      for (const auto& c : row["coefficients"]) os << ',' << csv_field(c.get<std::string>());
      os << ',' << row["dominated"].size() << ',';
      bool first = true;
      for (const auto& i : row["dominated"]) {
        if (!first) os << ';';
        os << i.get<std::size_t>();
        first = false;
      }
      os << '\n';
    }
    return os.str();
  }
  if (res.contains("laws")) {
    os << "name,passed,checked,witness\n";
    for (const auto& l : res["laws"])
      os << l["name"].get<std::string>() << ',' << (l["passed"].get<bool>() ? "true" : "false") << ','
         << l["checked"].get<std::size_t>() << ',' << csv_field(l.value("witness", "")) << '\n';
    return os.str();
  }
  os << "key,value\n";
  for (const auto& [k, v] : res.items()) os << csv_field(k) << ',' << csv_field(plain(v)) << '\n';
  return os.str();
}

std::string render_table(const json& report) {
  std::ostringstream os;
  os << "command: " << report["command"].get<std::string>() << '\n';
  if (report.contains("datum")) {
    const auto& dj = report["datum"];
    os << "datum: rank " << dj["labels"].size() << ", " << dj["backend"].get<std::string>() << " backend\n";
  }
  const json& res = report["results"];
  for (const auto& [k, v] : res.items()) {
    if (k == "roots" || k == "laws" || k == "levels") continue;
    os << k << ": " << plain(v) << '\n';
  }
  if (res.contains("levels")) {
    for (const auto& lvl : res["levels"]) {
      os << "D_" << lvl["n"].get<std::size_t>() << " (" << lvl["rows"].size() << "):";
      for (const auto& i : lvl["rows"]) os << ' ' << coefficients_text(res["roots"][i.get<std::size_t>()]["coefficients"]);
      os << '\n';
    }
  }
  if (res.contains("roots")) {
    os << "\n  row  depth  n  root  dominated\n";
    for (const auto& row : res["roots"]) {
      os << "  " << row["index"].get<std::size_t>() << "  " << row["depth"].get<std::size_t>() << "  "
         << row["n"].get<std::size_t>() << "  " << coefficients_text(row["coefficients"]) << "  ";
      bool first = true;
      for (const auto& i : row["dominated"]) {
        os << (first ? "" : ",") << i.get<std::size_t>();
        first = false;
      }
      os << '\n';
    }
  }
  if (res.contains("laws")) {
    os << '\n';
    for (const auto& l : res["laws"]) {
      os << (l["passed"].get<bool>() ? "PASS " : "FAIL ") << l["name"].get<std::string>() << " ("
         << l["checked"].get<std::size_t>() << " checks)";
      if (l.contains("witness")) os << ": " << l["witness"].get<std::string>();
      if (l.contains("detail")) os << " [" << l["detail"].get<std::string>() << "]";
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace

std::string render(const json& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::json:
      return report.dump(2) + "\n";
    case OutputFormat::csv:
      return render_csv(report);
    case OutputFormat::table:
      return render_table(report);
  }
  return {};
}

}  // namespace coxdom
