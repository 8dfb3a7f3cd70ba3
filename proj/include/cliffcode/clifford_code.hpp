#pragma once

// Clifford codes: the image of the central idempotent e_chi of a constituent
// chi of the representation restricted to a normal subgroup N.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cliffcode/character.hpp"
#include "cliffcode/cyclotomic.hpp"
#include "cliffcode/errors.hpp"
#include "cliffcode/group.hpp"
#include "cliffcode/isotypic.hpp"
#include "cliffcode/matrix.hpp"
#include "cliffcode/representation.hpp"

namespace cliffcode {

enum class DistanceStatus {
  ok,           // minimum weight over T - Z(theta)
  pure,         // T - Z(theta) empty; minimum weight over Z(theta) - Z(E)
  none,         // both sets empty
  no_metadata,  // group has no tensor factorization
};

inline const char* to_string(DistanceStatus s) {
  switch (s) {
    case DistanceStatus::ok: return "ok";
    case DistanceStatus::pure: return "pure";
    case DistanceStatus::none: return "none";
    case DistanceStatus::no_metadata: return "no-metadata";
  }
  return "?";
}

struct DistanceResult {
  std::optional<int> distance;
  DistanceStatus status = DistanceStatus::none;
  std::optional<Element> witness;  // an element attaining the minimum
};

struct InertiaGroups {
  Subgroup definitional;  // {g : chi(g x g^-1) = chi(x) for all x in N}
  Subgroup tacheles;      // C_E(Z(N))
  bool agree = false;
  std::optional<Element> witness;  // in one but not the other
};

struct ThetaData {
  Character theta;  // character of the code space as a T-module
  Subgroup ztheta;  // elements of T acting as scalars on the code
  CycNum norm;      // <theta, theta>_T
};

/// Immutable; keeps a pointer to the representation, which must outlive it.
class CliffordCode {
 public:
  const UnitaryRep& rep() const { return *rep_; }
  const Subgroup& subgroup() const { return n_; }
  const Character& chi() const { return chi_; }
  std::size_t component_index() const { return index_; }
  std::size_t multiplicity() const { return m_; }
  std::size_t chi_degree() const { return static_cast<std::size_t>(chi_.degree().as_rational().first); }
  std::size_t dimension() const { return m_ * chi_degree(); }
  const CycMatrix& projector() const { return e_; }
  const InertiaGroups& inertia() const { return inertia_; }
  const Subgroup& inertia_group() const { return inertia_.definitional; }
  const Character& theta() const { return theta_.theta; }
  const Subgroup& ztheta() const { return theta_.ztheta; }
  const CycNum& theta_norm() const { return theta_.norm; }
  bool theta_irreducible() const { return theta_.norm == CycNum(1); }
  const DistanceResult& distance() const { return distance_; }

 private:
  friend CliffordCode make_clifford_code(const UnitaryRep&, const Decomposition&, std::size_t);

  const UnitaryRep* rep_ = nullptr;
  Subgroup n_;
  Character chi_;
  std::size_t index_ = 0;
  std::size_t m_ = 0;
  CycMatrix e_;
  InertiaGroups inertia_;
  ThetaData theta_;
  DistanceResult distance_;
};

inline InertiaGroups inertia_group(const UnitaryRep& rep, const Subgroup& n, const Character& chi) {
  const auto& g = rep.group();
  if (chi.domain() != n) throw InvalidArgument("inertia_group: character is not defined on N");
  if (inner_product(g, rep_character(rep, n), chi).is_zero()) {
    throw InvalidArgument("inertia_group: character is not a constituent of the restriction to N");
  }
  std::vector<Element> fixed;
  for (Element x = 0; x < g.order(); ++x) {
    bool keeps = true;
    for (auto y : n.elements()) {
      if (chi(g.conjugate(x, y)) != chi(y)) {
        keeps = false;
        break;
      }
    }
    if (keeps) fixed.push_back(x);
  }
  InertiaGroups out;
  out.definitional = make_subgroup(g, std::move(fixed));
  out.tacheles = centralizer(g, center_of(g, n));
  out.agree = out.definitional == out.tacheles;
  if (!out.agree) {
    for (Element x = 0; x < g.order(); ++x) {
      if (out.definitional.contains(x) != out.tacheles.contains(x)) {
        out.witness = x;
        break;
      }
    }
  }
  return out;
}

/// theta(t) = tr(e rho(t)) on T; Z(theta) = {t : theta(t) conj(theta(t)) = theta(1)^2}.
inline ThetaData theta_and_zw(const UnitaryRep& rep, const CycMatrix& e, const Subgroup& t) {
  const auto& g = rep.group();
  std::vector<CycNum> vals(g.order());
  for (auto x : t.elements()) vals[x] = e.trace_of_product(rep.matrix(x));
  const CycNum top = vals[0] * vals[0];
  std::vector<Element> scalar;
  for (auto x : t.elements()) {
    if (vals[x] * vals[x].conj() == top) scalar.push_back(x);
  }
  ThetaData out;
  out.theta = Character(t, std::move(vals));
  out.ztheta = make_subgroup(g, std::move(scalar));
  out.norm = inner_product(g, out.theta, out.theta);
  return out;
}

namespace detail {

inline DistanceResult min_weight(const UnitaryRep& rep, const Subgroup& t, const Subgroup& zt) {
  DistanceResult r;
  if (!rep.tensor_factors()) {
    r.status = DistanceStatus::no_metadata;
    return r;
  }
  auto scan = [&](auto&& member) {
    std::optional<int> best;
    std::optional<Element> where;
    for (Element x = 0; x < rep.order(); ++x) {
      if (!member(x)) continue;
      const int w = *rep.weight(x);
      if (!best || w < *best) {
        best = w;
        where = x;
      }
    }
    return std::make_pair(best, where);
  };
  auto [d, w] = scan([&](Element x) { return t.contains(x) && !zt.contains(x); });
  if (d) {
    r = {d, DistanceStatus::ok, w};
    return r;
  }
  auto [p, pw] = scan([&](Element x) { return zt.contains(x) && !rep.center().contains(x); });
  if (p) {
    r = {p, DistanceStatus::pure, pw};
    return r;
  }
  r.status = DistanceStatus::none;
  return r;
}

}  // namespace detail

/// Builds the code of component `which` of an existing decomposition.
inline CliffordCode make_clifford_code(const UnitaryRep& rep, const Decomposition& dec, std::size_t which) {
  if (which >= dec.components.size()) {
    throw InvalidArgument("component " + std::to_string(which) + " out of range (N has " +
                          std::to_string(dec.components.size()) + " components)");
  }
  const auto& comp = dec.components[which];
  CliffordCode c;
  c.rep_ = &rep;
  c.n_ = dec.subgroup;
  c.chi_ = comp.chi;
  c.index_ = which;
  c.m_ = comp.multiplicity;
  c.e_ = central_idempotent(rep, comp.chi);
  if (c.e_ != comp.projector) {
    throw ComputationError("internal inconsistency: e_chi differs from the decomposition projector");
  }
  c.inertia_ = inertia_group(rep, c.n_, c.chi_);
  c.theta_ = theta_and_zw(rep, c.e_, c.inertia_.definitional);
  c.distance_ = detail::min_weight(rep, c.inertia_.definitional, c.theta_.ztheta);
  return c;
}

inline CliffordCode make_clifford_code(const UnitaryRep& rep, const Subgroup& n, std::size_t which,
                                       const DecompositionOptions& opts = {}) {
  return make_clifford_code(rep, isotypic_decomposition(rep, n, opts), which);
}

/// Selects the component whose character equals chi.
inline CliffordCode make_clifford_code(const UnitaryRep& rep, const Subgroup& n, const Character& chi,
                                       const DecompositionOptions& opts = {}) {
  auto dec = isotypic_decomposition(rep, n, opts);
  for (std::size_t k = 0; k < dec.components.size(); ++k) {
    if (dec.components[k].chi == chi) return make_clifford_code(rep, dec, k);
  }
  throw InvalidArgument("character is not a constituent of the restriction to N");
}

/// w is detectable iff w is not in T - Z(theta).
inline bool detects(const CliffordCode& code, Element w) {
  return !code.inertia_group().contains(w) || code.ztheta().contains(w);
}

struct ScalarTest {
  bool scalar = false;
  CycNum lambda;  // meaningful when scalar
};

/// Decides exactly whether e rho(w) e is a scalar multiple of e.
inline ScalarTest detects_by_matrix(const CliffordCode& code, Element w) {
  const CycMatrix& e = code.projector();
  const CycMatrix sandwich = e * code.rep().matrix(w) * e;
  ScalarTest r;
  r.lambda = sandwich.trace().divided_by(static_cast<long long>(code.dimension()));
  r.scalar = sandwich == e.scaled(r.lambda);
  return r;
}

struct CorrectabilityResult {
  bool correctable = true;
  std::optional<std::pair<Element, Element>> witness;  // e1, e2 with e1^-1 e2 undetectable
};

inline CorrectabilityResult correctable(const CliffordCode& code, const std::vector<Element>& sigma) {
  const auto& g = code.rep().group();
  CorrectabilityResult r;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const Element inv = g.inv(sigma[i]);
    for (std::size_t j = i + 1; j < sigma.size(); ++j) {
      // e2^-1 e1 is the inverse of e1^-1 e2 and detectability is closed under inverses
      if (!detects(code, g.mul(inv, sigma[j]))) {
        r.correctable = false;
        r.witness = std::make_pair(sigma[i], sigma[j]);
        return r;
      }
    }
  }
  return r;
}

/// All elements of weight at most `bound`.
inline std::vector<Element> elements_of_weight_at_most(const UnitaryRep& rep, int bound) {
  if (!rep.tensor_factors()) throw InvalidArgument(rep.name() + " has no tensor factorization; weight is undefined");
  std::vector<Element> out;
  for (Element x = 0; x < rep.order(); ++x) {
    if (*rep.weight(x) <= bound) out.push_back(x);
  }
  return out;
}

/// (1/|A|) sum_a lambda(a^-1) rho(a) for an abelian normal A and linear lambda.
inline CycMatrix stabilizer_code(const UnitaryRep& rep, const Subgroup& a, const Character& lambda) {
  const auto& g = rep.group();
  if (!is_abelian(g, a)) throw InvalidArgument("stabilizer_code: subgroup is not abelian");
  if (!is_normal(g, a)) throw InvalidArgument("stabilizer_code: subgroup is not normal");
  if (lambda.domain() != a) throw InvalidArgument("stabilizer_code: character is not defined on the subgroup");
  if (lambda.degree() != CycNum(1)) throw InvalidArgument("stabilizer_code: character is not linear");
  CycMatrix sum(rep.degree());
  for (auto x : a.elements()) sum += rep.matrix(x).scaled(lambda(g.inv(x)));
  return sum.scaled(CycNum::rational(1, static_cast<long long>(a.order())));
}

enum class ReductionStatus { ok, inapplicable, violated };

inline const char* to_string(ReductionStatus s) {
  switch (s) {
    case ReductionStatus::ok: return "ok";
    case ReductionStatus::inapplicable: return "inapplicable";
    case ReductionStatus::violated: return "violated";
  }
  return "?";
}

struct StabilizerForm {
  ReductionStatus status = ReductionStatus::inapplicable;
  std::string detail;
  Subgroup zn;
  Character phi;
  CycMatrix e_phi;
  bool is_equal_to_e_chi = false;
};

/// The representation is faithful on Z(E).
inline bool faithful_on_center(const UnitaryRep& rep) {
  const CycMatrix id = CycMatrix::identity(rep.degree());
  for (auto z : rep.center().elements()) {
    if (z != 0 && rep.matrix(z) == id) return false;
  }
  return true;
}

inline StabilizerForm stabilizer_reduction(const CliffordCode& code) {
  const auto& rep = code.rep();
  const auto& g = rep.group();
  StabilizerForm out;
  if (!rep.abelian_index()) {
    out.detail = "commutator subgroup is not central";
    return out;
  }
  if (!faithful_on_center(rep)) {
    out.detail = "representation is not faithful on the center";
    return out;
  }
  out.zn = center_of(g, code.subgroup());
  if (!is_normal(g, out.zn)) {
    out.status = ReductionStatus::violated;
    out.detail = "Z(N) is not normal in E";
    return out;
  }
  try {
    out.phi = extract_linear_on_center(g, code.chi(), out.zn);
  } catch (const ComputationError& ex) {
    out.status = ReductionStatus::violated;
    out.detail = ex.what();
    return out;
  }
  out.e_phi = stabilizer_code(rep, out.zn, out.phi);
  out.is_equal_to_e_chi = out.e_phi == code.projector();
  out.status = out.is_equal_to_e_chi ? ReductionStatus::ok : ReductionStatus::violated;
  if (!out.is_equal_to_e_chi) out.detail = "e_phi differs from e_chi";
  return out;
}

}  // namespace cliffcode
