#pragma once

// Class functions on a subgroup of E with exact values.

#include <optional>
#include <string>
#include <vector>

#include "cliffcode/cyclotomic.hpp"
#include "cliffcode/errors.hpp"
#include "cliffcode/group.hpp"
#include "cliffcode/representation.hpp"

namespace cliffcode {

class Character {
 public:
  Character() = default;
  /// values is indexed by parent element; entries outside the domain are
  /// ignored and stored as zero.
  Character(Subgroup domain, std::vector<CycNum> values) : domain_(std::move(domain)), values_(std::move(values)) {
    if (values_.size() != domain_.parent_order()) throw InvalidArgument("character value table has wrong size");
    for (Element g = 0; g < values_.size(); ++g) {
      if (!domain_.contains(g)) values_[g] = CycNum();
    }
  }

  const Subgroup& domain() const { return domain_; }
  const CycNum& operator()(Element g) const { return values_[g]; }
  const CycNum& degree() const { return values_[0]; }
  const std::vector<CycNum>& values() const { return values_; }

  /// Same domain, same values.
  friend bool operator==(const Character& a, const Character& b) {
    if (a.domain_ != b.domain_) return false;
    for (auto g : a.domain_.elements()) {
      if (a.values_[g] != b.values_[g]) return false;
    }
    return true;
  }
  friend bool operator!=(const Character& a, const Character& b) { return !(a == b); }

 private:
  Subgroup domain_;
  std::vector<CycNum> values_;
};

/// The character phi of the representation, restricted to h (whole group
/// when h is omitted).
inline Character rep_character(const UnitaryRep& rep, std::optional<Subgroup> h = std::nullopt) {
  Subgroup dom = h ? std::move(*h) : whole_group(rep.group());
  return Character(std::move(dom), rep.character_values());
}

inline Character restrict_character(const Character& chi, const Subgroup& h) {
  if (!h.is_subset_of(chi.domain())) throw InvalidArgument("restriction target is not inside the domain");
  return Character(h, chi.values());
}

/// <a, b> = (1/|N|) sum_n a(n) b(n^-1).
inline CycNum inner_product(const FiniteGroup& g, const Character& a, const Character& b) {
  if (a.domain() != b.domain()) throw InvalidArgument("inner_product: characters have different domains");
  CycNum sum;
  for (auto n : a.domain().elements()) {
    const CycNum& bv = b(g.inv(n));
    if (!bv.is_zero()) sum += a(n) * bv;
  }
  return sum.divided_by(a.domain().order());
}

inline bool is_class_function(const FiniteGroup& g, const Character& chi) {
  for (auto x : chi.domain().elements()) {
    for (auto y : chi.domain().elements()) {
      if (chi(g.conjugate(y, x)) != chi(x)) return false;
    }
  }
  return true;
}

/// chi^g(x) = chi(g x g^-1).
inline Character conjugate_character(const FiniteGroup& grp, const Character& chi, Element g) {
  if (!normalizes(grp, g, chi.domain())) {
    throw InvalidArgument("conjugate_character: element " + grp.label(g) + " does not normalize the domain");
  }
  std::vector<CycNum> vals(grp.order());
  for (auto x : chi.domain().elements()) vals[x] = chi(grp.conjugate(g, x));
  return Character(chi.domain(), std::move(vals));
}

struct CharPredicates {
  std::vector<Element> support;  // chi(g) != 0
  std::vector<Element> kernel;   // chi(g) == chi(1)
  bool faithful_on = false;      // H meets the kernel only in the identity
};

inline CharPredicates char_predicates(const Character& chi, const Subgroup& h) {
  CharPredicates p;
  for (auto g : chi.domain().elements()) {
    if (!chi(g).is_zero()) p.support.push_back(g);
    if (chi(g) == chi.degree()) p.kernel.push_back(g);
  }
  p.faithful_on = true;
  for (auto g : p.kernel) {
    if (g != 0 && h.contains(g)) p.faithful_on = false;
  }
  return p;
}

/// The linear character phi of z = Z(N) with chi(z) = chi(1) phi(z).
/// Throws ComputationError if some chi(z)/chi(1) is not a root of unity.
inline Character extract_linear_on_center(const FiniteGroup& grp, const Character& chi, const Subgroup& z) {
  if (z != center_of(grp, chi.domain())) {
    throw InvalidArgument("extract_linear_on_center: subgroup is not the center of the character's domain");
  }
  const CycNum& deg = chi.degree();
  if (!deg.is_rational()) throw ComputationError("extract_linear_on_center: chi(1) is not rational");
  const auto [num, den] = deg.as_rational();
  if (den != 1 || num <= 0) throw ComputationError("extract_linear_on_center: chi(1) is not a positive integer");
  std::vector<CycNum> vals(grp.order());
  for (auto x : z.elements()) {
    CycNum v = chi(x).divided_by(num);
    if (v.pow(grp.element_order(x)) != CycNum(1)) {
      throw ComputationError("extract_linear_on_center: chi(" + grp.label(x) + ")/chi(1) = " + v.to_string() +
                             " is not a root of unity; chi is not irreducible on N");
    }
    vals[x] = std::move(v);
  }
  return Character(z, std::move(vals));
}

}  // namespace cliffcode
