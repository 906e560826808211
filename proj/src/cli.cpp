#include "coxdom/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "coxdom/dihedral.hpp"
#include "coxdom/dominance.hpp"
#include "coxdom/errors.hpp"
#include "coxdom/laws.hpp"
#include "coxdom/oracle.hpp"
#include "coxdom/parallel.hpp"

namespace coxdom {

using json = nlohmann::json;

namespace {

// Parses a root given on the command line and makes sure it lies in Phi.
Root read_root(const CoxeterDatum& d, const std::string& text, const char* flag) {
  if (text.empty()) throw DomainError(std::string("missing ") + flag);
  Root x = parse_root(d, text);
  Root pos = sign_of(d, x) == Sign::negative ? -x : x;
  if (!has_unit_norm(d, pos)) throw NotARootError(std::string(flag) + " " + root_string(x) + " is not a unit vector");
  minimal_word(d, pos);
  return x;
}

Root read_positive_root(const CoxeterDatum& d, const std::string& text, const char* flag) {
  Root x = read_root(d, text, flag);
  if (sign_of(d, x) != Sign::positive) throw DomainError(std::string(flag) + " must be a positive root");
  return x;
}

std::vector<DominanceRecord> records_for(const CoxeterDatum& d, const std::vector<Root>& roots) {
  std::vector<DominanceRecord> recs(roots.size());
  parallel_for(roots.size(), [&](std::size_t i) { recs[i] = dominated_set(d, roots[i]); });
  return recs;
}

json position_json(const ChainPosition& p) {
  return json{{"index", p.index}, {"family", std::string(to_string(p.family))}};
}

struct CommandResult {
  json results;
  bool laws_passed = true;
};

CommandResult cmd_validate(const CoxeterDatum& d, const RunConfig& cfg) {
  json gram = json::array();
  for (std::size_t i = 0; i < d.rank(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < d.rank(); ++j) row.push_back(scalar_text(d.gram(i, j), cfg.precision));
    gram.push_back(std::move(row));
  }
  return {json{{"rank", d.rank()},
               {"labels", d.labels()},
               {"gram", std::move(gram)},
               {"positive_definite", gram_positive_definite(d)}}};
}

CommandResult cmd_roots(const CoxeterDatum& d, const RunConfig& cfg) {
  RootLayers layers = enumerate(d, cfg.max_depth, cfg.size_cap);
  auto roots = layers.flatten();
  return {json{{"max_depth", cfg.max_depth},
               {"exhausted", layers.exhausted},
               {"count", roots.size()},
               {"roots", root_table(d, records_for(d, roots), cfg.precision)}}};
}

CommandResult cmd_elementary(const CoxeterDatum& d, const RunConfig& cfg) {
  auto roots = elementary_roots(d, cfg.size_cap);
  return {json{{"count", roots.size()}, {"roots", root_table(d, records_for(d, roots), cfg.precision)}}};
}

json hierarchy_json(const CoxeterDatum& d, const Hierarchy& h, const RunConfig& cfg) {
  std::vector<DominanceRecord> all;
  for (const auto& lvl : h.levels) all.insert(all.end(), lvl.roots.begin(), lvl.roots.end());
  std::unordered_map<RootKey, std::size_t> row_of;
  json table = root_table(d, std::move(all), cfg.precision, &row_of);
  json levels = json::array();
  json sizes = json::array();
  for (const auto& lvl : h.levels) {
    std::vector<std::size_t> rows;
    for (const auto& rec : lvl.roots) rows.push_back(row_of.at(root_key(d, rec.root)));
    std::sort(rows.begin(), rows.end());
    sizes.push_back(lvl.roots.size());
    levels.push_back(json{{"n", lvl.n}, {"rows", std::move(rows)}});
  }
  return json{{"finite", h.finite}, {"levels", std::move(levels)}, {"sizes", std::move(sizes)}, {"roots", std::move(table)}};
}

HierarchyOptions hierarchy_options(const RunConfig& cfg) {
  return HierarchyOptions{cfg.size_cap, cfg.finite_depth_cap};
}

CommandResult cmd_hierarchy(const CoxeterDatum& d, const RunConfig& cfg) {
  return {hierarchy_json(d, hierarchy(d, cfg.levels, hierarchy_options(cfg)), cfg)};
}

CommandResult cmd_classify(const CoxeterDatum& d, const RunConfig& cfg) {
  Root x = read_positive_root(d, cfg.x, "--x");
  DominanceRecord rec = dominated_set(d, x);
  json results{{"root", root_json(x, cfg.precision)},
               {"depth", *rec.root.cached_depth()},
               {"n", rec.n()},
               {"roots", root_table(d, {rec}, cfg.precision)}};
  return {std::move(results)};
}

CommandResult cmd_dominates(const CoxeterDatum& d, const RunConfig& cfg) {
  Root x = read_root(d, cfg.x, "--x");
  Root y = read_root(d, cfg.y, "--y");
  bool fast = dominates(d, x, y);
  CommandResult out;
  out.results = json{{"x", root_json(x, cfg.precision)}, {"y", root_json(y, cfg.precision)}, {"dominates", fast}};
  if (cfg.ball_radius > 0) {
    BallOracle oracle(d, cfg.ball_radius, cfg.ball_cap);
    Verdict v = oracle.dominance(x, y);
    json o{{"radius", cfg.ball_radius}, {"ball_size", oracle.ball().elements.size()}, {"refuted", v.refuted}};
    if (v.witness) {
      o["witness"] = word_string(d, v.witness->witness);
      o["witness_length"] = v.witness->length;
    }
    // A fast "false" without a witness in the ball is inconclusive, not a failure.
    o["agrees"] = fast != v.refuted;
    out.laws_passed = !(fast && v.refuted);
    out.results["oracle"] = std::move(o);
  }
  return out;
}

CommandResult cmd_dihedral(const CoxeterDatum& d, const RunConfig& cfg) {
  Root x = read_positive_root(d, cfg.x, "--x");
  Root y = read_positive_root(d, cfg.y, "--y");
  DominancePairReport r = verify_dominance_pair(d, x, y);
  CommandResult out;
  out.results = json{{"frame",
                      json{{"alpha", root_json(r.frame.alpha, cfg.precision)},
                           {"beta", root_json(r.frame.beta, cfg.precision)},
                           {"q", scalar_text(r.frame.q, cfg.precision)}}},
                     {"x_position", position_json(r.x_position)},
                     {"y_position", position_json(r.y_position)},
                     {"inner_xy", scalar_text(r.inner_xy, cfg.precision)},
                     {"inner_matches", r.inner_matches},
                     {"consecutive", r.consecutive},
                     {"passed", r.passed()}};
  out.laws_passed = r.passed();
  return out;
}

CommandResult cmd_check(const CoxeterDatum& d, const RunConfig& cfg) {
  Hierarchy h = hierarchy(d, cfg.levels, hierarchy_options(cfg));
  LawOptions lopts;
  lopts.depth_cap = cfg.max_depth;
  lopts.layer_cap = cfg.size_cap;
  LawReport report = check_laws(d, h, lopts);
  if (cfg.ball_radius > 0) {
    BallOracle oracle(d, cfg.ball_radius, cfg.ball_cap);
    std::vector<Root> d0;
    for (const auto& rec : h.levels.front().roots) d0.push_back(rec.root);
    OracleCheckOptions oopts;
    oopts.pair_depth = cfg.pair_depth;
    oopts.nset_length = std::min<std::size_t>(8, cfg.ball_radius);
    for (auto& l : check_oracle_agreement(d, oracle, d0, oopts)) report.laws.push_back(std::move(l));
  }
  json laws = json::array();
  for (const auto& l : report.laws) laws.push_back(law_json(l));
  json sizes = json::array();
  for (const auto& lvl : h.levels) sizes.push_back(lvl.roots.size());
  CommandResult out;
  out.results = json{{"finite", h.finite},
                     {"sizes", std::move(sizes)},
                     {"laws", std::move(laws)},
                     {"passed", report.all_passed()}};
  out.laws_passed = report.all_passed();
  return out;
}

void apply_threads(const RunConfig& cfg) {
  if (cfg.threads) {
    set_thread_count(*cfg.threads);
    return;
  }
  if (const char* env = std::getenv("COXDOM_THREADS"); env && *env) {
    char* end = nullptr;
    unsigned long n = std::strtoul(env, &end, 10);
    if (*end != '\0' || n == 0) throw DomainError(std::string("COXDOM_THREADS must be a positive integer, got '") + env + "'");
    set_thread_count(n);
  }
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult result;
  try {
    apply_threads(cfg);
    if (cfg.max_depth == 0 || cfg.size_cap == 0 || cfg.ball_cap == 0 || cfg.finite_depth_cap == 0)
      throw DomainError("caps must be positive");
    if (!(cfg.tolerance > 0)) throw DomainError("tolerance must be positive");

    DatumOptions dopts;
    dopts.backend = cfg.backend;
    dopts.tolerance = cfg.tolerance;
    dopts.max_rank = cfg.max_rank;
    std::optional<CoxeterDatum> datum;
    try {
      datum = CoxeterDatum::load(cfg.datum_path, dopts);
    } catch (const ParseError& e) {
      result.exit_code = kExitInvalidDatum;
      result.diagnostic = e.what();
      return result;
    } catch (const ValidationError& e) {
      result.exit_code = kExitInvalidDatum;
      result.diagnostic = e.what();
      return result;
    }
    const CoxeterDatum& d = *datum;

    CommandResult out;
    if (cfg.command == "validate") out = cmd_validate(d, cfg);
    else if (cfg.command == "roots") out = cmd_roots(d, cfg);
    else if (cfg.command == "elementary") out = cmd_elementary(d, cfg);
    else if (cfg.command == "hierarchy") out = cmd_hierarchy(d, cfg);
    else if (cfg.command == "classify") out = cmd_classify(d, cfg);
    else if (cfg.command == "dominates") out = cmd_dominates(d, cfg);
    else if (cfg.command == "dihedral") out = cmd_dihedral(d, cfg);
    else if (cfg.command == "check") out = cmd_check(d, cfg);
    else throw DomainError("unknown command '" + cfg.command + "'");

    result.report = make_report(cfg.command, &d, std::move(out.results));
    if (!out.laws_passed) {
      result.exit_code = kExitLawFailure;
      result.diagnostic = "law check failed";
    }
  } catch (const LimitError& e) {
    result.exit_code = kExitLimit;
    result.diagnostic = e.what();
  } catch (const InvariantError& e) {
    result.exit_code = kExitLawFailure;
    result.diagnostic = e.what();
  } catch (const std::exception& e) {
    result.exit_code = kExitUsage;
    result.diagnostic = e.what();
  }
  return result;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Root systems and the dominance hierarchy of Coxeter groups"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string backend, format = "json", output;
  std::size_t threads = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("datum", cfg.datum_path, "Datum file (JSON)")->required();
    sub->add_option("--backend", backend, "Force exact or approx arithmetic")->check(CLI::IsMember({"exact", "approx"}));
    sub->add_option("--tolerance", cfg.tolerance, "Classification tolerance in approx mode");
    sub->add_option("--precision", cfg.precision, "Significant digits for approximate coefficients");
    sub->add_option("--max-rank", cfg.max_rank, "Largest accepted rank");
    sub->add_option("--size-cap", cfg.size_cap, "Cap on layer, level and closure sizes");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("-o,--output", output, "Write the report to this file");
    sub->add_option("--threads", threads, "Worker threads (default: COXDOM_THREADS or 1)");
  };
  auto add_roots = [&](CLI::App* sub, bool need_y) {
    sub->add_option("--x", cfg.x, "Root as comma-separated coefficients, e.g. 3/2,1")->required();
    if (need_y) sub->add_option("--y", cfg.y, "Second root")->required();
  };

  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"validate", "Parse a datum and print its Gram matrix"},
      {"roots", "Enumerate positive roots by depth"},
      {"elementary", "Compute the elementary roots D_0"},
      {"hierarchy", "Compute the levels D_0 .. D_n"},
      {"classify", "Dominated set D(x) of a positive root"},
      {"dominates", "Test whether x dominates y"},
      {"dihedral", "Check the dihedral structure of a dominance pair"},
      {"check", "Evaluate the structural laws, optionally against the oracle"},
  };
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    std::string name = s.name;
    if (name == "roots" || name == "check")
      sub->add_option("--max-depth", cfg.max_depth, "Largest root depth enumerated or sampled");
    if (name == "hierarchy" || name == "check") sub->add_option("--levels", cfg.levels, "Highest level n");
    if (name == "hierarchy" || name == "check" || name == "elementary")
      sub->add_option("--finite-depth", cfg.finite_depth_cap, "Depth bound for recognizing finite W");
    if (name == "classify") add_roots(sub, false);
    if (name == "dominates" || name == "dihedral") add_roots(sub, true);
    if (name == "dominates" || name == "check") {
      sub->add_option("--oracle", cfg.ball_radius, "Cayley ball radius for brute-force verification");
      sub->add_option("--ball-cap", cfg.ball_cap, "Cap on Cayley ball size");
    }
    if (name == "check") sub->add_option("--pair-depth", cfg.pair_depth, "Root depth bound for oracle comparison");
    sub->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!backend.empty()) cfg.backend = backend == "exact" ? Backend::exact : Backend::approx;
  cfg.format = parse_format(format);
  if (!output.empty()) cfg.output_path = output;
  if (threads > 0) cfg.threads = threads;

  RunResult r = run(cfg);
  if (!r.diagnostic.empty()) std::cerr << "coxdom: " << r.diagnostic << '\n';
  if (r.report.is_null()) return r.exit_code;
  std::string text = render(r.report, cfg.format);
  if (cfg.output_path) {
    std::ofstream f(*cfg.output_path, std::ios::binary);
    if (!f) {
      std::cerr << "coxdom: cannot write " << *cfg.output_path << '\n';
      return kExitUsage;
    }
    f << text;
  } else {
    std::cout << text;
  }
  return r.exit_code;
}

}  // namespace coxdom
