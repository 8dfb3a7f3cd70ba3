#pragma once

// The cliffcode command line. run_cli is the whole program; tools/cliffcode.cpp
// only forwards argv and the standard streams.
//
// Exit codes: 0 success, 1 usage or input error, 2 computation failure,
// 3 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "cliffcode/clifford_code.hpp"
#include "cliffcode/errors.hpp"
#include "cliffcode/group_io.hpp"
#include "cliffcode/isotypic.hpp"
#include "cliffcode/labels.hpp"
#include "cliffcode/representation.hpp"
#include "cliffcode/search.hpp"
#include "cliffcode/verify.hpp"

namespace cliffcode {

enum ExitCode { exit_ok = 0, exit_usage = 1, exit_computation = 2, exit_verification = 3 };

struct RunConfig {
  std::string command;
  std::string group_spec;
  std::string format = "table";
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::size_t jobs = 1;
  std::optional<std::size_t> closure_cap;
  std::optional<std::size_t> normal_cap;
  std::optional<std::size_t> normal_count_cap;
  std::optional<long long> conductor_cap;
  std::optional<std::size_t> oracle_cap;
  std::string subgroup;
  std::string subgroup_file;
  std::optional<std::size_t> component;
  bool detection = false;
  std::string sigma;
  std::optional<std::size_t> min_dim;
  std::optional<int> min_distance;
  bool only_nonabelian = false;
};

namespace cli_detail {

using ojson = nlohmann::ordered_json;

inline std::optional<long long> env_number(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const long long x = std::strtoll(v, &end, 10);
  if (*end != '\0' || x <= 0) throw InvalidArgument(std::string("environment variable ") + name + " must be a positive integer");
  return x;
}

/// Flags win over environment variables, which win over defaults.
template <class T>
T cap_value(const std::optional<T>& flag, const char* env, T fallback) {
  if (flag) return *flag;
  if (auto v = env_number(env)) return static_cast<T>(*v);
  return fallback;
}

struct Context {
  RunConfig cfg;
  UnitaryRep rep;
  DecompositionOptions decomposition;
  NormalSubgroupOptions enumeration;
  CodeCheckOptions checks;
};

inline Context make_context(const RunConfig& cfg) {
  if (cfg.format != "table" && cfg.format != "json" && cfg.format != "csv") {
    throw InvalidArgument("unknown format '" + cfg.format + "' (expected table, json or csv)");
  }
  set_conductor_cap(cap_value<long long>(cfg.conductor_cap, "CLIFFCODE_CONDUCTOR_CAP", 1LL << 20));
  Context ctx{cfg, load_group(cfg.group_spec, cap_value<std::size_t>(cfg.closure_cap, "CLIFFCODE_CLOSURE_CAP", 100000)),
              {}, {}, {}};
  ctx.decomposition.seed = cfg.seed;
  ctx.decomposition.tolerance = cfg.tol;
  ctx.enumeration.order_cap = cap_value<std::size_t>(cfg.normal_cap, "CLIFFCODE_NORMAL_CAP", 4096);
  ctx.enumeration.count_cap = cap_value<std::size_t>(cfg.normal_count_cap, "CLIFFCODE_NORMAL_COUNT_CAP", 100000);
  ctx.checks.oracle_order_cap = cap_value<std::size_t>(cfg.oracle_cap, "CLIFFCODE_ORACLE_CAP", 1024);
  return ctx;
}

/// Elements named in a subgroup file: {"elements": [labels]} or, with exact
/// matrices, {"conductor": c, "generators": [matrices]}.
inline std::vector<Element> subgroup_file_elements(const UnitaryRep& rep, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open subgroup file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& ex) {
    throw InvalidArgument("subgroup file '" + path + "' is not valid JSON: " + ex.what());
  }
  std::vector<Element> out;
  if (doc.contains("elements")) {
    for (const auto& e : doc["elements"]) {
      if (!e.is_string()) throw InvalidArgument("subgroup file: elements must be strings");
      out.push_back(parse_element(rep, e.get<std::string>()));
    }
  }
  if (doc.contains("generators")) {
    if (!doc.contains("conductor") || !doc["conductor"].is_number_integer()) {
      throw InvalidArgument("subgroup file: matrix generators need an integer \"conductor\"");
    }
    const int conductor = doc["conductor"].get<int>();
    std::size_t k = 0;
    for (const auto& m : doc["generators"]) {
      const auto mat = matrix_from_json(m, rep.degree(), conductor, "subgroup generator " + std::to_string(k));
      auto g = rep.find(mat);
      if (!g) throw InvalidArgument("subgroup generator " + std::to_string(k) + " is not an element of " + rep.name());
      out.push_back(*g);
      ++k;
    }
  }
  if (out.empty()) throw InvalidArgument("subgroup file '" + path + "' names no elements");
  return out;
}

inline std::optional<Subgroup> requested_subgroup(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  if (cfg.subgroup.empty() && cfg.subgroup_file.empty()) return std::nullopt;
  std::vector<Element> gens = parse_element_list(ctx.rep, cfg.subgroup);
  if (!cfg.subgroup_file.empty()) {
    auto more = subgroup_file_elements(ctx.rep, cfg.subgroup_file);
    gens.insert(gens.end(), more.begin(), more.end());
  }
  auto n = generate_subgroup(ctx.rep.group(), gens);
  if (!is_normal(ctx.rep.group(), n)) {
    throw InvalidArgument("the subgroup generated by the given elements (order " + std::to_string(n.order()) +
                          ") is not normal in " + ctx.rep.name());
  }
  return n;
}

inline Subgroup required_subgroup(const Context& ctx) {
  auto n = requested_subgroup(ctx);
  if (!n) throw InvalidArgument(ctx.cfg.command + " needs --subgroup or --subgroup-file");
  return *n;
}

inline std::string labels_text(const FiniteGroup& g, const Subgroup& n) {
  return "<" + join_labels(generator_labels(g, n), ", ") + ">";
}

inline ojson terms_json(const CycNum& v, int conductor) { return ojson::parse(cycnum_to_json(v, conductor).dump()); }

inline ojson matrix_json(const CycMatrix& m, int conductor) { return ojson::parse(matrix_to_json(m, conductor).dump()); }

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char ch : c) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      c = q + "\"";
    }
    out << (i ? "," : "") << c;
  }
  out << '\n';
}

inline int cmd_info(const Context& ctx, std::ostream& out) {
  const auto& rep = ctx.rep;
  const auto r = verify_error_group(rep);
  const auto classes = rep.group().conjugacy_classes().size();
  if (ctx.cfg.format == "json") {
    ojson j;
    j["group"] = rep.name();
    j["order"] = r.order;
    j["degree"] = r.degree;
    j["conductor"] = rep.conductor();
    j["center_order"] = r.center_order;
    j["commutator_order"] = r.commutator_order;
    j["classes"] = classes;
    j["abelian_index"] = r.abelian_index;
    j["degree_law"] = r.degree_law;
    j["faithful"] = r.faithful;
    j["unitary"] = r.unitary;
    j["irreducible"] = r.irreducible;
    j["character_norm"] = r.character_norm.to_string();
    j["tensor_factors"] = rep.tensor_factors() ? ojson(*rep.tensor_factors()) : ojson(nullptr);
    j["error_group"] = r.ok();
    j["violations"] = r.violations;
    out << j.dump(2) << '\n';
  } else if (ctx.cfg.format == "csv") {
    write_csv_row(out, {"group", "order", "degree", "conductor", "center_order", "commutator_order", "classes",
                        "abelian_index", "degree_law", "error_group"});
    write_csv_row(out, {rep.name(), std::to_string(r.order), std::to_string(r.degree), std::to_string(rep.conductor()),
                        std::to_string(r.center_order), std::to_string(r.commutator_order), std::to_string(classes),
                        r.abelian_index ? "true" : "false", r.degree_law ? "true" : "false", r.ok() ? "true" : "false"});
  } else {
    out << "group            " << rep.name() << '\n'
        << "order            " << r.order << '\n'
        << "degree           " << r.degree << '\n'
        << "conductor        " << rep.conductor() << '\n'
        << "center order     " << r.center_order << '\n'
        << "commutator order " << r.commutator_order << '\n'
        << "classes          " << classes << '\n'
        << "abelian index    " << (r.abelian_index ? "yes" : "no") << '\n'
        << "degree law       " << r.degree << "^2 = " << r.degree * r.degree << ", (E:Z) = " << r.index << " -> "
        << (r.degree_law ? "holds" : "fails") << '\n'
        << "<phi,phi>        " << r.character_norm << '\n'
        << "error group      " << (r.ok() ? "yes" : "no") << '\n';
    for (const auto& v : r.violations) out << "  violation: " << v << '\n';
  }
  return exit_ok;
}

inline int cmd_normal_subgroups(const Context& ctx, std::ostream& out) {
  const auto& g = ctx.rep.group();
  const auto list = normal_subgroups(g, ctx.enumeration);
  if (ctx.cfg.format == "json") {
    ojson j;
    j["group"] = ctx.rep.name();
    j["count"] = list.size();
    auto arr = ojson::array();
    for (std::size_t i = 0; i < list.size(); ++i) {
      arr.push_back({{"index", i},
                     {"order", list[i].order()},
                     {"abelian", is_abelian(g, list[i])},
                     {"generators", generator_labels(g, list[i])}});
    }
    j["subgroups"] = arr;
    out << j.dump(2) << '\n';
  } else if (ctx.cfg.format == "csv") {
    write_csv_row(out, {"index", "order", "abelian", "generators"});
    for (std::size_t i = 0; i < list.size(); ++i) {
      write_csv_row(out, {std::to_string(i), std::to_string(list[i].order()), is_abelian(g, list[i]) ? "true" : "false",
                          join_labels(generator_labels(g, list[i]), " ")});
    }
  } else {
    out << list.size() << " normal subgroups of " << ctx.rep.name() << '\n';
    for (std::size_t i = 0; i < list.size(); ++i) {
      out << "  " << i << "  order " << list[i].order() << (is_abelian(g, list[i]) ? "  abelian     " : "  nonabelian  ")
          << labels_text(g, list[i]) << '\n';
    }
  }
  return exit_ok;
}

inline ojson character_json(const UnitaryRep& rep, const Character& chi, int conductor) {
  ojson vals = ojson::object();
  for (auto x : chi.domain().elements()) vals[rep.label(x)] = terms_json(chi(x), conductor);
  return vals;
}

inline int cmd_decompose(const Context& ctx, std::ostream& out) {
  const auto& rep = ctx.rep;
  const auto n = required_subgroup(ctx);
  const auto dec = isotypic_decomposition(rep, n, ctx.decomposition);
  const int conductor = document_conductor(rep);
  if (ctx.cfg.format == "json") {
    ojson j;
    j["group"] = rep.name();
    j["conductor"] = conductor;
    j["N_order"] = n.order();
    j["N_gens"] = generator_labels(rep.group(), n);
    j["seed_used"] = dec.seed_used;
    auto comps = ojson::array();
    for (std::size_t k = 0; k < dec.components.size(); ++k) {
      const auto& c = dec.components[k];
      comps.push_back({{"component", k},
                       {"chi_deg", c.chi_degree()},
                       {"mult", c.multiplicity},
                       {"dim", c.dimension()},
                       {"chi", character_json(rep, c.chi, conductor)},
                       {"projector", matrix_json(c.projector, conductor)}});
    }
    j["components"] = comps;
    out << j.dump(2) << '\n';
  } else if (ctx.cfg.format == "csv") {
    write_csv_row(out, {"component", "chi_deg", "mult", "dim", "chi"});
    for (std::size_t k = 0; k < dec.components.size(); ++k) {
      const auto& c = dec.components[k];
      std::string chi;
      for (auto x : n.elements()) chi += (chi.empty() ? "" : " ") + rep.label(x) + "=" + c.chi(x).to_string();
      write_csv_row(out, {std::to_string(k), std::to_string(c.chi_degree()), std::to_string(c.multiplicity),
                          std::to_string(c.dimension()), chi});
    }
  } else {
    out << rep.name() << ", N = " << labels_text(rep.group(), n) << " of order " << n.order() << ": "
        << dec.components.size() << " components\n";
    for (std::size_t k = 0; k < dec.components.size(); ++k) {
      const auto& c = dec.components[k];
      out << "  component " << k << ": chi(1) = " << c.chi_degree() << ", m = " << c.multiplicity
          << ", dim = " << c.dimension() << '\n';
      out << "    chi:";
      for (auto x : greedy_generators(rep.group(), n)) out << "  " << rep.label(x) << " -> " << c.chi(x);
      out << '\n';
    }
  }
  return exit_ok;
}

/// "weight:k" or a comma-separated label list.
inline std::vector<Element> parse_sigma(const UnitaryRep& rep, const std::string& text) {
  if (text.rfind("weight:", 0) == 0) {
    const auto k = detail::parse_int(std::string_view(text).substr(7));
    if (!k || *k < 0) throw InvalidArgument("malformed --sigma '" + text + "' (expected weight:k)");
    return elements_of_weight_at_most(rep, *k);
  }
  return parse_element_list(rep, text);
}

inline int cmd_code(const Context& ctx, std::ostream& out) {
  const auto& rep = ctx.rep;
  const auto& g = rep.group();
  const auto n = required_subgroup(ctx);
  const auto dec = isotypic_decomposition(rep, n, ctx.decomposition);
  const std::size_t which = ctx.cfg.component.value_or(0);
  const auto code = make_clifford_code(rep, dec, which);
  const auto sf = stabilizer_reduction(code);
  const auto checks = verify_code(code, sf, ctx.checks);
  const int conductor = document_conductor(rep);
  std::optional<CorrectabilityResult> corr;
  if (!ctx.cfg.sigma.empty()) corr = correctable(code, parse_sigma(rep, ctx.cfg.sigma));
  const std::string dist = code.distance().distance ? std::to_string(*code.distance().distance) : "none";

  if (ctx.cfg.format == "json") {
    ojson j;
    j["group"] = rep.name();
    j["conductor"] = conductor;
    j["N_order"] = n.order();
    j["N_gens"] = generator_labels(g, n);
    j["component"] = which;
    j["chi_deg"] = code.chi_degree();
    j["mult"] = code.multiplicity();
    j["dim"] = code.dimension();
    j["distance"] = code.distance().distance ? ojson(*code.distance().distance) : ojson(nullptr);
    j["distance_status"] = to_string(code.distance().status);
    j["T_order"] = code.inertia_group().order();
    j["Ztheta_order"] = code.ztheta().order();
    j["abelian_N"] = is_abelian(g, n);
    j["stab_equal"] = to_string(sf.status);
    j["checks_passed"] = checks.ok();
    auto failed = ojson::array();
    for (const auto& l : checks.lines) {
      if (!l.pass) failed.push_back({{"check", l.name}, {"detail", l.detail}});
    }
    j["failed_checks"] = failed;
    j["chi"] = character_json(rep, code.chi(), conductor);
    j["projector"] = matrix_json(code.projector(), conductor);
    if (ctx.cfg.detection) {
      auto table = ojson::array();
      for (Element w = 0; w < g.order(); ++w) {
        const auto m = detects_by_matrix(code, w);
        table.push_back({{"error", rep.label(w)},
                         {"weight", rep.weight(w) ? ojson(*rep.weight(w)) : ojson(nullptr)},
                         {"detectable", detects(code, w)},
                         {"lambda", m.scalar ? terms_json(m.lambda, conductor) : ojson(nullptr)}});
      }
      j["detection"] = table;
    }
    if (corr) {
      j["correctable"] = corr->correctable;
      j["witness"] = corr->witness ? ojson({rep.label(corr->witness->first), rep.label(corr->witness->second)})
                                   : ojson(nullptr);
    }
    out << j.dump(2) << '\n';
  } else if (ctx.cfg.format == "csv") {
    write_csv_row(out, {"group", "N_order", "N_gens", "chi_deg", "mult", "dim", "distance", "abelian_N", "stab_equal",
                        "checks_passed"});
    write_csv_row(out, {rep.name(), std::to_string(n.order()), join_labels(generator_labels(g, n), " "),
                        std::to_string(code.chi_degree()), std::to_string(code.multiplicity()),
                        std::to_string(code.dimension()), dist, is_abelian(g, n) ? "true" : "false",
                        to_string(sf.status), checks.ok() ? "true" : "false"});
  } else {
    out << "code in " << rep.name() << " from N = " << labels_text(g, n) << " (order " << n.order() << "), component "
        << which << '\n'
        << "  chi(1) " << code.chi_degree() << ", m " << code.multiplicity() << ", dim " << code.dimension() << '\n'
        << "  |T| " << code.inertia_group().order() << ", |Z(theta)| " << code.ztheta().order() << '\n'
        << "  distance " << dist << " (" << to_string(code.distance().status) << ")\n"
        << "  stabilizer reduction " << to_string(sf.status) << (sf.detail.empty() ? "" : ": " + sf.detail) << '\n'
        << "  checks " << (checks.ok() ? "pass" : "FAIL") << " (" << checks.lines.size() - checks.failures() << "/"
        << checks.lines.size() << ")\n";
    for (const auto& l : checks.lines) {
      if (!l.pass) out << "    fail: " << l.name << (l.detail.empty() ? "" : " (" + l.detail + ")") << '\n';
    }
    out << "  projector:\n";
    for (std::size_t i = 0; i < code.projector().size(); ++i) {
      out << "   ";
      for (std::size_t k = 0; k < code.projector().size(); ++k) out << ' ' << code.projector().at(i, k);
      out << '\n';
    }
    if (ctx.cfg.detection) {
      out << "  detection:\n";
      for (Element w = 0; w < g.order(); ++w) {
        const auto m = detects_by_matrix(code, w);
        out << "    " << rep.label(w) << "  " << (detects(code, w) ? "detectable" : "undetectable");
        if (m.scalar) out << "  lambda " << m.lambda;
        out << '\n';
      }
    }
    if (corr) {
      out << "  correctable " << (corr->correctable ? "yes" : "no");
      if (corr->witness) out << " (" << rep.label(corr->witness->first) << ", " << rep.label(corr->witness->second) << ")";
      out << '\n';
    }
  }
  return checks.ok() ? exit_ok : exit_verification;
}

inline int cmd_verify(const Context& ctx, std::ostream& out) {
  const auto& rep = ctx.rep;
  const auto& g = rep.group();
  SweepOptions opts;
  opts.decomposition = ctx.decomposition;
  opts.checks = ctx.checks;
  opts.enumeration = ctx.enumeration;
  opts.jobs = ctx.cfg.jobs;
  std::optional<std::vector<Subgroup>> only;
  if (auto n = requested_subgroup(ctx)) only = std::vector<Subgroup>{*n};
  const auto res = verify_sweep(rep, opts, only);
  const std::size_t lines = res.subgroups.size();
  std::size_t failed_lines = 0;
  for (const auto& s : res.subgroups) failed_lines += (s.report.ok() && s.error.empty()) ? 0 : 1;
  const std::string summary = res.ok() ? "all lemma/theorem checks passed, " + std::to_string(lines) + "-line sweep"
                                       : std::to_string(failed_lines + (res.group.ok() ? 0 : 1)) +
                                             " failing lines in " + std::to_string(lines) + "-line sweep";
  if (ctx.cfg.format == "json") {
    ojson j;
    j["group"] = rep.name();
    j["error_group"] = res.group.ok();
    j["violations"] = res.group.violations;
    auto arr = ojson::array();
    for (const auto& s : res.subgroups) {
      auto failures = ojson::array();
      for (const auto& l : s.report.lines) {
        if (!l.pass) failures.push_back({{"check", l.name}, {"detail", l.detail}});
      }
      arr.push_back({{"status", s.report.ok() && s.error.empty() ? "pass" : "fail"},
                     {"N_order", s.subgroup.order()},
                     {"N_gens", generator_labels(g, s.subgroup)},
                     {"components", s.components},
                     {"checks", s.report.lines.size()},
                     {"error", s.error},
                     {"failures", failures}});
    }
    j["sweep"] = arr;
    j["ok"] = res.ok();
    j["summary"] = summary;
    out << j.dump(2) << '\n';
  } else if (ctx.cfg.format == "csv") {
    write_csv_row(out, {"status", "N_order", "N_gens", "components", "checks", "failures"});
    for (const auto& s : res.subgroups) {
      write_csv_row(out, {s.report.ok() && s.error.empty() ? "pass" : "fail", std::to_string(s.subgroup.order()),
                          join_labels(generator_labels(g, s.subgroup), " "), std::to_string(s.components),
                          std::to_string(s.report.lines.size()),
                          std::to_string(s.report.failures() + (s.error.empty() ? 0 : 1))});
    }
  } else {
    out << (res.group.ok() ? "pass" : "fail") << "  " << rep.name() << " is an error group of order " << res.group.order
        << ", degree " << res.group.degree << '\n';
    for (const auto& v : res.group.violations) out << "        " << v << '\n';
    for (const auto& s : res.subgroups) {
      const bool ok = s.report.ok() && s.error.empty();
      out << (ok ? "pass" : "fail") << "  |N| " << s.subgroup.order() << "  " << labels_text(g, s.subgroup) << "  "
          << s.components << " components, " << s.report.lines.size() << " checks";
      if (!s.error.empty()) out << "; error: " << s.error;
      if (const auto* f = s.report.first_failure()) {
        out << "; " << s.report.failures() << " failed, first: " << f->name;
        if (!f->detail.empty()) out << " (" << f->detail << ")";
      }
      out << '\n';
    }
    out << summary << '\n';
  }
  return res.ok() ? exit_ok : exit_verification;
}

inline int cmd_search(const Context& ctx, std::ostream& out) {
  SearchFilters filters;
  filters.min_dim = ctx.cfg.min_dim;
  filters.min_distance = ctx.cfg.min_distance;
  filters.only_nonabelian_n = ctx.cfg.only_nonabelian;
  SearchOptions opts;
  opts.decomposition = ctx.decomposition;
  opts.checks = ctx.checks;
  opts.enumeration = ctx.enumeration;
  opts.jobs = ctx.cfg.jobs;
  std::optional<std::vector<Subgroup>> only;
  if (auto n = requested_subgroup(ctx)) only = std::vector<Subgroup>{*n};
  const auto report = best_codes_report(enumerate_codes(ctx.rep, filters, opts, only), ctx.rep.name());
  if (ctx.cfg.format == "json") {
    out << render_json(report);
  } else if (ctx.cfg.format == "csv") {
    out << render_csv(report);
  } else {
    out << render_table(report);
  }
  for (const auto& r : report.records) {
    if (!r.checks_passed()) return exit_verification;
  }
  return exit_ok;
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact construction and verification of Clifford codes over finite error groups", "cliffcode"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  RunConfig cfg;
  auto common = [&](CLI::App* sub, bool needs_subgroup) {
    sub->add_option("-g,--group", cfg.group_spec, "pauli:n, weyl:d:n or file:PATH")->required();
    sub->add_option("-f,--format", cfg.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
    sub->add_option("--seed", cfg.seed, "seed for the numerical split");
    sub->add_option("--tol", cfg.tol, "eigenvalue clustering tolerance")->check(CLI::PositiveNumber);
    sub->add_option("-j,--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--closure-cap", cfg.closure_cap, "maximum group order when closing generators");
    sub->add_option("--normal-cap", cfg.normal_cap, "maximum group order for normal-subgroup enumeration");
    sub->add_option("--normal-count-cap", cfg.normal_count_cap, "maximum number of normal subgroups");
    sub->add_option("--conductor-cap", cfg.conductor_cap, "maximum cyclotomic conductor");
    sub->add_option("--oracle-cap", cfg.oracle_cap, "maximum group order for the full detection-oracle scan");
    sub->add_option("-s,--subgroup", cfg.subgroup,
                    needs_subgroup ? "comma-separated generators of N (or --subgroup-file)"
                                   : "comma-separated generators of N (default: every normal subgroup)");
    sub->add_option("--subgroup-file", cfg.subgroup_file, "JSON file naming generators of N");
  };

  auto* info = app.add_subcommand("info", "Group facts and error-group checks");
  common(info, false);
  auto* normal = app.add_subcommand("normal-subgroups", "List every normal subgroup");
  common(normal, false);
  auto* decompose = app.add_subcommand("decompose", "Isotypic decomposition for a normal subgroup N");
  common(decompose, true);
  auto* code = app.add_subcommand("code", "Build one Clifford code");
  common(code, true);
  code->add_option("-c,--component", cfg.component, "component index (default 0)");
  code->add_flag("--detection", cfg.detection, "print the detection table");
  code->add_option("--sigma", cfg.sigma, "error set to test for correctability: weight:k or labels");
  auto* verify = app.add_subcommand("verify", "Run every check over every normal subgroup");
  common(verify, false);
  auto* search = app.add_subcommand("search", "Enumerate and rank all Clifford codes");
  common(search, false);
  search->add_option("--min-dim", cfg.min_dim, "drop codes of smaller dimension");
  search->add_option("--min-distance", cfg.min_distance, "drop codes of smaller distance");
  search->add_flag("--only-nonabelian-N", cfg.only_nonabelian, "only nonabelian N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code_ = app.exit(e, out, err);
    return code_ == 0 ? exit_ok : exit_usage;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

  try {
    const auto ctx = cli_detail::make_context(cfg);
    if (cfg.command == "info") return cli_detail::cmd_info(ctx, out);
    if (cfg.command == "normal-subgroups") return cli_detail::cmd_normal_subgroups(ctx, out);
    if (cfg.command == "decompose") return cli_detail::cmd_decompose(ctx, out);
    if (cfg.command == "code") return cli_detail::cmd_code(ctx, out);
    if (cfg.command == "verify") return cli_detail::cmd_verify(ctx, out);
    if (cfg.command == "search") return cli_detail::cmd_search(ctx, out);
  } catch (const InvalidArgument& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_usage;
  } catch (const ComputationError& ex) {
    err << "computation failed: " << ex.what() << '\n';
    return exit_computation;
  } catch (const std::bad_alloc&) {
    err << "computation failed: out of memory\n";
    return exit_computation;
  }
  err << "error: unknown command\n";
  return exit_usage;
}

}  // namespace cliffcode
