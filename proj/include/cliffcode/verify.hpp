#pragma once

// Exact consistency checks for decompositions and codes, and the sweep over
// every normal subgroup used by `cliffcode verify`.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cliffcode/character.hpp"
#include "cliffcode/clifford_code.hpp"
#include "cliffcode/group.hpp"
#include "cliffcode/isotypic.hpp"
#include "cliffcode/parallel.hpp"
#include "cliffcode/representation.hpp"

namespace cliffcode {

struct CheckLine {
  std::string name;
  bool pass = true;
  std::string detail;  // witness on failure
};

struct CheckReport {
  std::vector<CheckLine> lines;

  void add(std::string name, bool pass, std::string detail = {}) {
    lines.push_back({std::move(name), pass, std::move(detail)});
  }
  void append(const CheckReport& other, const std::string& prefix = {}) {
    for (const auto& l : other.lines) lines.push_back({prefix + l.name, l.pass, l.detail});
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& l : lines) n += l.pass ? 0 : 1;
    return n;
  }
  bool ok() const { return failures() == 0; }
  const CheckLine* first_failure() const {
    for (const auto& l : lines) {
      if (!l.pass) return &l;
    }
    return nullptr;
  }
};

struct CodeCheckOptions {
  bool detection_oracle = true;  // compare matrix oracle and group predicate for every w in E
  std::size_t oracle_order_cap = 1024;  // skip the oracle scan above this |E|
  bool coset_orthogonality = true;
};

/// trace(e_chi) = m chi(1) = |Y| phi(1) chi(1)^2 / |N| with Y = Z(E) cap N,
/// and trace(e_phi e_chi) = trace(e_chi). Needs an abelian index group.
inline CheckReport verify_dimension_identities(const CliffordCode& code, const StabilizerForm& sf) {
  CheckReport r;
  if (sf.status == ReductionStatus::inapplicable) {
    r.add("dimension identity", true, "inapplicable: " + sf.detail);
    return r;
  }
  const auto& rep = code.rep();
  const auto y = intersection(rep.center(), code.subgroup());
  const CycNum trace = code.projector().trace();
  const CycNum m_chi(static_cast<long long>(code.dimension()));
  const auto chi1 = static_cast<long long>(code.chi_degree());
  const CycNum formula = CycNum::rational(static_cast<long long>(y.order() * rep.degree()) * chi1 * chi1,
                                          static_cast<long long>(code.subgroup().order()));
  r.add("trace(e_chi) = m chi(1)", trace == m_chi, "trace " + trace.to_string() + ", m chi(1) " + m_chi.to_string());
  r.add("m chi(1) = |Y| phi(1) chi(1)^2 / |N|", m_chi == formula, "formula gives " + formula.to_string());
  if (sf.status == ReductionStatus::ok) {
    const CycNum t = sf.e_phi.trace_of_product(code.projector());
    r.add("trace(e_phi e_chi) = trace(e_chi)", t == trace, "got " + t.to_string());
  } else {
    r.add("trace(e_phi e_chi) = trace(e_chi)", false, "stabilizer reduction failed: " + sf.detail);
  }
  return r;
}

/// Lemmas on the constituents of the restriction to N:
///  L1  chi(z n) = omega chi(n), omega != 1, for z in Z(E) cap N, z != 1
///  L2  chi is faithful on Z(E) cap N
///  L3  supp(chi) = Z(N) when the index group is abelian
inline CheckReport verify_lemma_suite(const UnitaryRep& rep, const Decomposition& dec) {
  const auto& g = rep.group();
  const Subgroup& n = dec.subgroup;
  const auto y = intersection(rep.center(), n);
  const auto zn = center_of(g, n);
  const bool faithful = faithful_on_center(rep);
  CheckReport r;
  for (std::size_t k = 0; k < dec.components.size(); ++k) {
    const auto& chi = dec.components[k].chi;
    const std::string tag = "component " + std::to_string(k) + ": ";
    std::string witness;
    for (auto z : y.elements()) {
      if (z == 0) continue;
      auto omega = rep.matrix(z).as_scalar();
      if (!omega || *omega == CycNum(1)) {
        witness = "rho(" + g.label(z) + ") is not a nontrivial scalar";
        break;
      }
      for (auto x : n.elements()) {
        if (chi(g.mul(z, x)) != *omega * chi(x)) {
          witness = "chi(" + g.label(z) + " " + g.label(x) + ") != omega chi(" + g.label(x) + ")";
          break;
        }
      }
      if (!witness.empty()) break;
    }
    r.add(tag + "L1 central elements scale chi", !faithful || witness.empty(),
          faithful ? witness : "skipped: not faithful on Z(E)");
    const auto pred = char_predicates(chi, y);
    r.add(tag + "L2 chi faithful on Z(E) cap N", !faithful || pred.faithful_on);
    if (rep.abelian_index()) {
      const Subgroup support(g.order(), pred.support);
      std::string diff;
      for (Element x = 0; x < g.order(); ++x) {
        if (support.contains(x) != zn.contains(x)) {
          diff = g.label(x);
          break;
        }
      }
      r.add(tag + "L3 supp(chi) = Z(N)", diff.empty(), diff.empty() ? "" : "differs at " + diff);
    }
  }
  return r;
}

/// Resolution of identity, orthogonality, and conjugation action on the
/// constituents.
inline CheckReport verify_decomposition(const UnitaryRep& rep, const Decomposition& dec) {
  const auto& g = rep.group();
  CheckReport r;
  CycMatrix total(rep.degree());
  bool orthogonal = true;
  std::size_t dims = 0;
  for (std::size_t i = 0; i < dec.components.size(); ++i) {
    const auto& p = dec.components[i].projector;
    total += p;
    dims += dec.components[i].dimension();
    for (std::size_t j = 0; j < i; ++j) {
      if (!(p * dec.components[j].projector).is_zero()) orthogonal = false;
    }
  }
  r.add("projectors sum to identity", total == CycMatrix::identity(rep.degree()));
  r.add("projectors pairwise orthogonal", orthogonal);
  r.add("dimensions sum to degree", dims == rep.degree());

  std::string bad;
  for (std::size_t i = 0; i < dec.components.size() && bad.empty(); ++i) {
    for (auto gen : rep.generators()) {
      const auto moved = conjugate_character(g, dec.components[i].chi, gen);
      std::optional<std::size_t> hit;
      for (std::size_t j = 0; j < dec.components.size(); ++j) {
        if (dec.components[j].chi == moved) hit = j;
      }
      if (!hit || dec.components[*hit].multiplicity != dec.components[i].multiplicity) {
        bad = "conjugating component " + std::to_string(i) + " by " + g.label(gen) +
              (hit ? " changes the multiplicity" : " leaves the constituent set");
        break;
      }
    }
  }
  r.add("conjugation permutes constituents", bad.empty(), bad);
  return r;
}

inline CheckReport verify_code(const CliffordCode& code, const StabilizerForm& sf, const CodeCheckOptions& opts = {}) {
  const auto& rep = code.rep();
  const auto& g = rep.group();
  const CycMatrix& e = code.projector();
  CheckReport r;
  r.add("e_chi idempotent", e * e == e);
  r.add("e_chi hermitian", e.is_hermitian());
  r.add("trace(e_chi) = dim", e.trace() == CycNum(static_cast<long long>(code.dimension())));
  r.add("N in T", code.subgroup().is_subset_of(code.inertia_group()));
  r.add("Z(E) Z(N) in Z(theta)",
        join(g, rep.center(), center_of(g, code.subgroup())).is_subset_of(code.ztheta()));
  r.add("Z(theta) in T", code.ztheta().is_subset_of(code.inertia_group()));
  r.add("theta(1) = dim", code.theta().degree() == CycNum(static_cast<long long>(code.dimension())));
  r.add("<theta,theta>_T = 1", code.theta_irreducible(), "got " + code.theta_norm().to_string());

  if (rep.abelian_index() && faithful_on_center(rep)) {
    const auto& in = code.inertia();
    r.add("T(chi) = C_E(Z(N))", in.agree, in.witness ? "differs at " + g.label(*in.witness) : "");
  }

  if (opts.detection_oracle && g.order() > opts.oracle_order_cap) {
    r.add("matrix oracle agrees with w notin T - Z(theta)", true,
          "skipped: |E| = " + std::to_string(g.order()) + " above oracle cap");
  } else if (opts.detection_oracle) {
    std::string witness;
    for (Element w = 0; w < g.order(); ++w) {
      if (detects_by_matrix(code, w).scalar != detects(code, w)) {
        witness = g.label(w);
        break;
      }
    }
    r.add("matrix oracle agrees with w notin T - Z(theta)", witness.empty(),
          witness.empty() ? "" : "disagree at " + witness);
  }

  if (opts.coset_orthogonality) {
    const auto cs = cosets(g, code.inertia_group());
    std::vector<CycMatrix> moved;
    for (auto t : cs.transversal) moved.push_back(rep.matrix(t) * e * rep.matrix(g.inv(t)));
    bool ok = true;
    for (std::size_t i = 0; i < moved.size() && ok; ++i) {
      for (std::size_t j = 0; j < i && ok; ++j) ok = (moved[i] * moved[j]).is_zero();
    }
    r.add("translates over cosets of T orthogonal", ok);
  }

  if (sf.status == ReductionStatus::inapplicable) {
    r.add("stabilizer reduction", true, "inapplicable: " + sf.detail);
  } else {
    r.add("stabilizer reduction e_phi = e_chi", sf.status == ReductionStatus::ok, sf.detail);
  }
  r.append(verify_dimension_identities(code, sf));
  return r;
}

struct SubgroupSweepResult {
  Subgroup subgroup;
  std::size_t components = 0;
  CheckReport report;
  std::string error;  // computation failure, if any
};

struct SweepOptions {
  DecompositionOptions decomposition;
  CodeCheckOptions checks;
  NormalSubgroupOptions enumeration;
  std::size_t jobs = 1;
};

inline SubgroupSweepResult sweep_subgroup(const UnitaryRep& rep, const Subgroup& n, const SweepOptions& opts) {
  SubgroupSweepResult out;
  out.subgroup = n;
  try {
    const auto dec = isotypic_decomposition(rep, n, opts.decomposition);
    out.components = dec.components.size();
    out.report.append(verify_decomposition(rep, dec));
    out.report.append(verify_lemma_suite(rep, dec));
    for (std::size_t k = 0; k < dec.components.size(); ++k) {
      const auto code = make_clifford_code(rep, dec, k);
      const auto sf = stabilizer_reduction(code);
      out.report.append(verify_code(code, sf, opts.checks), "component " + std::to_string(k) + ": ");
    }
  } catch (const ComputationError& ex) {
    out.error = ex.what();
  }
  return out;
}

struct SweepResult {
  ErrorGroupReport group;
  std::vector<SubgroupSweepResult> subgroups;

  std::size_t failures() const {
    std::size_t n = group.ok() ? 0 : 1;
    for (const auto& s : subgroups) n += s.report.failures() + (s.error.empty() ? 0 : 1);
    return n;
  }
  bool ok() const { return failures() == 0; }
};

/// Runs every check over every normal subgroup (or the given list).
inline SweepResult verify_sweep(const UnitaryRep& rep, const SweepOptions& opts = {},
                                std::optional<std::vector<Subgroup>> subgroups = std::nullopt) {
  SweepResult out;
  out.group = verify_error_group(rep);
  const auto list = subgroups ? std::move(*subgroups) : normal_subgroups(rep.group(), opts.enumeration);
  out.subgroups = parallel_map(list.size(), opts.jobs,
                               [&](std::size_t i) { return sweep_subgroup(rep, list[i], opts); });
  return out;
}

}  // namespace cliffcode
