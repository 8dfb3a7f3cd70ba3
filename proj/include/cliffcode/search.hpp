#pragma once

// Enumeration of all Clifford codes of an error group and ranked reports.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cliffcode/clifford_code.hpp"
#include "cliffcode/group.hpp"
#include "cliffcode/isotypic.hpp"
#include "cliffcode/parallel.hpp"
#include "cliffcode/representation.hpp"
#include "cliffcode/verify.hpp"

namespace cliffcode {

struct CodeSource {
  std::size_t n_order = 0;
  std::vector<std::string> n_generators;
  std::size_t component = 0;
};

struct CodeRecord {
  std::string group;
  std::size_t n_order = 0;
  std::vector<std::string> n_generators;
  std::size_t component = 0;
  std::size_t chi_degree = 0;
  std::size_t multiplicity = 0;
  std::size_t dim = 0;
  std::optional<int> distance;
  DistanceStatus distance_status = DistanceStatus::none;
  bool abelian_n = false;
  ReductionStatus stabilizer = ReductionStatus::inapplicable;
  std::size_t checks_total = 0;
  std::size_t checks_failed = 0;
  std::vector<std::string> failed_checks;
  std::vector<CodeSource> duplicates;  // other (N, component) pairs giving the same projector

  bool checks_passed() const { return checks_failed == 0; }
  const char* stab_equal() const {
    switch (stabilizer) {
      case ReductionStatus::ok: return "yes";
      case ReductionStatus::violated: return "no";
      case ReductionStatus::inapplicable: return "n/a";
    }
    return "?";
  }
};

struct SearchFilters {
  std::optional<std::size_t> min_dim;
  std::optional<int> min_distance;
  bool only_nonabelian_n = false;
};

struct SearchOptions {
  DecompositionOptions decomposition;
  CodeCheckOptions checks;
  NormalSubgroupOptions enumeration;
  std::size_t jobs = 1;
};

/// A conductor holding every matrix entry and character value of E.
inline int document_conductor(const UnitaryRep& rep) {
  const auto& g = rep.group();
  return detail::normalized_conductor(lcm_conductor(rep.conductor(), static_cast<int>(exponent(g, whole_group(g)))));
}

inline std::vector<std::string> generator_labels(const FiniteGroup& g, const Subgroup& n) {
  std::vector<std::string> out;
  for (auto x : greedy_generators(g, n)) out.push_back(g.label(x));
  return out;
}

namespace detail {

struct Candidate {
  CodeRecord record;
  std::string key;
};

inline std::vector<Candidate> codes_for_subgroup(const UnitaryRep& rep, const Subgroup& n, const SearchOptions& opts) {
  const auto& g = rep.group();
  const auto dec = isotypic_decomposition(rep, n, opts.decomposition);
  const auto gens = generator_labels(g, n);
  const bool abelian = is_abelian(g, n);
  const auto shared = verify_lemma_suite(rep, dec);
  const int key_conductor = document_conductor(rep);
  std::vector<Candidate> out;
  for (std::size_t k = 0; k < dec.components.size(); ++k) {
    const auto code = make_clifford_code(rep, dec, k);
    const auto sf = stabilizer_reduction(code);
    CheckReport checks = shared;
    checks.append(verify_code(code, sf, opts.checks));
    Candidate c;
    auto& r = c.record;
    r.group = rep.name();
    r.n_order = n.order();
    r.n_generators = gens;
    r.component = k;
    r.chi_degree = code.chi_degree();
    r.multiplicity = code.multiplicity();
    r.dim = code.dimension();
    r.distance = code.distance().distance;
    r.distance_status = code.distance().status;
    r.abelian_n = abelian;
    r.stabilizer = sf.status;
    r.checks_total = checks.lines.size();
    r.checks_failed = checks.failures();
    for (const auto& l : checks.lines) {
      if (!l.pass) r.failed_checks.push_back(l.name);
    }
    c.key = code.projector().key(key_conductor);
    out.push_back(std::move(c));
  }
  return out;
}

inline bool record_before(const CodeRecord& a, const CodeRecord& b) {
  if (a.dim != b.dim) return a.dim > b.dim;
  const int da = a.distance.value_or(0);
  const int db = b.distance.value_or(0);
  if (da != db) return da > db;
  return a.n_order < b.n_order;
}

}  // namespace detail

/// One record per distinct code space, ranked by dim desc, distance desc,
/// |N| asc. With `subgroups` unset every normal subgroup is tried.
inline std::vector<CodeRecord> enumerate_codes(const UnitaryRep& rep, const SearchFilters& filters = {},
                                               const SearchOptions& opts = {},
                                               std::optional<std::vector<Subgroup>> subgroups = std::nullopt) {
  const auto list = subgroups ? std::move(*subgroups) : normal_subgroups(rep.group(), opts.enumeration);
  for (const auto& n : list) {
    if (!is_normal(rep.group(), n)) throw InvalidArgument("enumerate_codes: supplied subgroup is not normal");
  }
  const auto per_subgroup = parallel_map(list.size(), opts.jobs, [&](std::size_t i) {
    if (filters.only_nonabelian_n && is_abelian(rep.group(), list[i])) return std::vector<detail::Candidate>{};
    return detail::codes_for_subgroup(rep, list[i], opts);
  });

  std::vector<CodeRecord> out;
  std::map<std::string, std::size_t> seen;
  for (const auto& batch : per_subgroup) {
    for (const auto& c : batch) {
      const auto& r = c.record;
      if (filters.min_dim && r.dim < *filters.min_dim) continue;
      if (filters.min_distance && (!r.distance || *r.distance < *filters.min_distance)) continue;
      auto [it, fresh] = seen.emplace(c.key, out.size());
      if (fresh) {
        out.push_back(r);
        continue;
      }
      auto& first = out[it->second];
      first.duplicates.push_back({r.n_order, r.n_generators, r.component});
      first.checks_total += r.checks_total;
      first.checks_failed += r.checks_failed;
      first.failed_checks.insert(first.failed_checks.end(), r.failed_checks.begin(), r.failed_checks.end());
      if (r.stabilizer == ReductionStatus::violated) first.stabilizer = ReductionStatus::violated;
    }
  }
  std::stable_sort(out.begin(), out.end(), detail::record_before);
  return out;
}

struct BestCodesReport {
  std::string group;
  std::vector<CodeRecord> records;
  std::vector<std::size_t> front;  // indices into records, one per Pareto-optimal (dim, distance)
  std::string status;
};

/// Keeps the (K, d) pairs not dominated by another record. A missing
/// distance ranks below every number.
inline BestCodesReport best_codes_report(std::vector<CodeRecord> records, std::string group = {}) {
  BestCodesReport rep;
  rep.group = std::move(group);
  rep.records = std::move(records);
  if (rep.records.empty()) {
    rep.status = "no codes";
    return rep;
  }
  if (rep.group.empty()) rep.group = rep.records.front().group;
  rep.status = "ok";
  auto dval = [](const CodeRecord& r) { return r.distance.value_or(0); };
  std::map<std::pair<std::size_t, int>, std::size_t> first_of_pair;
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    first_of_pair.emplace(std::make_pair(rep.records[i].dim, dval(rep.records[i])), i);
  }
  for (const auto& [pair, idx] : first_of_pair) {
    bool dominated = false;
    for (const auto& [other, unused] : first_of_pair) {
      if (other != pair && other.first >= pair.first && other.second >= pair.second) dominated = true;
    }
    if (!dominated) rep.front.push_back(idx);
  }
  std::sort(rep.front.begin(), rep.front.end());
  return rep;
}

inline std::string distance_text(const CodeRecord& r) { return r.distance ? std::to_string(*r.distance) : "none"; }

inline std::string join_labels(const std::vector<std::string>& labels, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? sep : "") + labels[i];
  return out;
}

inline std::string render_csv(const BestCodesReport& rep) {
  std::ostringstream os;
  os << "group,N_order,N_gens,chi_deg,mult,dim,distance,abelian_N,stab_equal,checks_passed\n";
  for (const auto& r : rep.records) {
    os << r.group << ',' << r.n_order << ",\"" << join_labels(r.n_generators, " ") << "\"," << r.chi_degree << ','
       << r.multiplicity << ',' << r.dim << ',' << distance_text(r) << ',' << (r.abelian_n ? "true" : "false") << ','
       << r.stab_equal() << ',' << (r.checks_passed() ? "true" : "false") << '\n';
  }
  return os.str();
}

inline nlohmann::ordered_json record_json(const CodeRecord& r) {
  nlohmann::ordered_json j;
  j["group"] = r.group;
  j["N_order"] = r.n_order;
  j["N_gens"] = r.n_generators;
  j["component"] = r.component;
  j["chi_deg"] = r.chi_degree;
  j["mult"] = r.multiplicity;
  j["dim"] = r.dim;
  j["distance"] = r.distance ? nlohmann::ordered_json(*r.distance) : nlohmann::ordered_json(nullptr);
  j["distance_status"] = to_string(r.distance_status);
  j["abelian_N"] = r.abelian_n;
  j["stab_equal"] = r.stab_equal();
  j["checks_passed"] = r.checks_passed();
  j["checks_total"] = r.checks_total;
  j["failed_checks"] = r.failed_checks;
  auto dup = nlohmann::ordered_json::array();
  for (const auto& d : r.duplicates) {
    dup.push_back({{"N_order", d.n_order}, {"N_gens", d.n_generators}, {"component", d.component}});
  }
  j["duplicates"] = dup;
  return j;
}

inline std::string render_json(const BestCodesReport& rep) {
  nlohmann::ordered_json j;
  j["group"] = rep.group;
  j["status"] = rep.status;
  auto front = nlohmann::ordered_json::array();
  for (auto i : rep.front) {
    const auto& r = rep.records[i];
    front.push_back({{"dim", r.dim},
                     {"distance", r.distance ? nlohmann::ordered_json(*r.distance) : nlohmann::ordered_json(nullptr)},
                     {"record", i}});
  }
  j["pareto_front"] = front;
  auto recs = nlohmann::ordered_json::array();
  for (const auto& r : rep.records) recs.push_back(record_json(r));
  j["records"] = recs;
  return j.dump(2) + "\n";
}

inline std::string render_table(const BestCodesReport& rep) {
  std::ostringstream os;
  os << "group " << rep.group << ": " << rep.records.size() << " distinct codes (" << rep.status << ")\n";
  if (rep.records.empty()) return os.str();
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"#", "K", "d", "|N|", "chi(1)", "m", "abelian N", "stabilizer", "checks", "pareto", "N generators"});
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    const auto& r = rep.records[i];
    const bool pareto = std::find(rep.front.begin(), rep.front.end(), i) != rep.front.end();
    rows.push_back({std::to_string(i), std::to_string(r.dim), distance_text(r), std::to_string(r.n_order),
                    std::to_string(r.chi_degree), std::to_string(r.multiplicity), r.abelian_n ? "yes" : "no",
                    r.stab_equal(),
                    r.checks_passed() ? "pass" : "FAIL " + std::to_string(r.checks_failed),
                    pareto ? "*" : "", "<" + join_labels(r.n_generators, ", ") + ">"});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    os << line << '\n';
  }
  os << "pareto front (K, d):";
  for (auto i : rep.front) os << " (" << rep.records[i].dim << ", " << distance_text(rep.records[i]) << ")";
  os << '\n';
  return os.str();
}

}  // namespace cliffcode
