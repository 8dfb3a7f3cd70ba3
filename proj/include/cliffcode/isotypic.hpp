#pragma once

// Isotypic decomposition of the ambient space under a normal subgroup N.
//
// The split is found numerically and then certified exactly:
//  1. a seeded random real combination of the hermitian parts of the class
//     sums S_j and i S_j of N is central in the image of CN, so its
//     eigenspaces are unions of isotypic components (and generically equal
//     to them);
//  2. eigenvalues are clustered at a tolerance and each cluster gives a
//     candidate projector P with psi(x) = tr(P rho(x)) = m chi(x);
//  3. chi is snapped to Z[zeta_M] (M = lcm(conductor, exp N)) by solving
//     for power-basis coefficients from the Galois conjugates chi(x^k),
//     k in (Z/M)^*, and rounding to integers;
//  4. everything emitted is then checked exactly. A failed check retries
//     with the next seed. The tolerance only affects whether a split is
//     found, never the exactness of what is returned.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cliffcode/character.hpp"
#include "cliffcode/cyclotomic.hpp"
#include "cliffcode/errors.hpp"
#include "cliffcode/group.hpp"
#include "cliffcode/matrix.hpp"
#include "cliffcode/representation.hpp"

namespace cliffcode {

struct IsotypicComponent {
  Character chi;              // irreducible character of N
  std::size_t multiplicity = 0;
  CycMatrix projector;        // e_chi, exact

  std::size_t chi_degree() const { return static_cast<std::size_t>(chi.degree().as_rational().first); }
  std::size_t dimension() const { return multiplicity * chi_degree(); }
};

struct DecompositionOptions {
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
  int retries = 5;
};

struct Decomposition {
  Subgroup subgroup;
  std::vector<IsotypicComponent> components;
  std::uint64_t seed_used = 0;
  int attempts = 0;
};

/// e_chi = (chi(1)/|N|) sum_n chi(n^-1) rho(n).
inline CycMatrix central_idempotent(const UnitaryRep& rep, const Character& chi) {
  const auto& g = rep.group();
  CycMatrix sum(rep.degree());
  for (auto n : chi.domain().elements()) {
    const CycNum& c = chi(g.inv(n));
    if (!c.is_zero()) sum += rep.matrix(n).scaled(c);
  }
  return sum.scaled(chi.degree()).scaled(CycNum::rational(1, static_cast<long long>(chi.domain().order())));
}

namespace detail {

inline bool is_positive_integer(const CycNum& v) {
  if (!v.is_rational()) return false;
  auto [num, den] = v.as_rational();
  return den == 1 && num > 0;
}

/// Solves sum_j c_j zeta_M^(j k) = b_k over the units k mod M for integer c.
class GaloisSnapper {
 public:
  explicit GaloisSnapper(int m) : conductor_(detail::normalized_conductor(m)) {
    for (int k = 1; k <= conductor_; ++k) {
      if (std::gcd(k, conductor_) == 1) units_.push_back(k);
    }
    const auto phi = static_cast<Eigen::Index>(detail::field(conductor_).degree);
    const auto rows = static_cast<Eigen::Index>(units_.size());
    Eigen::MatrixXd a(2 * rows, phi);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index j = 0; j < phi; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j * units_[static_cast<std::size_t>(r)]) /
                             conductor_;
        a(r, j) = std::cos(angle);
        a(rows + r, j) = std::sin(angle);
      }
    }
    qr_ = a.colPivHouseholderQr();
  }

  int conductor() const { return conductor_; }
  const std::vector<int>& units() const { return units_; }

  /// values[r] is the numeric value at Galois conjugate units()[r]. Returns
  /// nothing when a coefficient is not within 0.25 of an integer.
  std::optional<CycNum> snap(const std::vector<std::complex<double>>& values) const {
    const auto rows = static_cast<Eigen::Index>(units_.size());
    Eigen::VectorXd b(2 * rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      b(r) = values[static_cast<std::size_t>(r)].real();
      b(rows + r) = values[static_cast<std::size_t>(r)].imag();
    }
    Eigen::VectorXd c = qr_.solve(b);
    std::vector<BigInt> coeffs;
    for (Eigen::Index j = 0; j < c.size(); ++j) {
      const double rounded = std::round(c(j));
      if (!std::isfinite(c(j)) || std::abs(c(j) - rounded) > 0.25) return std::nullopt;
      coeffs.emplace_back(static_cast<long long>(rounded));
    }
    return CycNum::from_power_coefficients(conductor_, std::move(coeffs), 1);
  }

 private:
  int conductor_;
  std::vector<int> units_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

inline std::complex<double> trace_product(const Eigen::MatrixXcd& p, const CycMatrix& m) {
  std::complex<double> t{0.0, 0.0};
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (const auto& [j, v] : m.row(i)) t += p(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) * v.embed();
  }
  return t;
}

/// Exact checks on a candidate set of components. Returns an empty string
/// on success, otherwise the first failure.
inline std::string certify_components(const UnitaryRep& rep, const Subgroup& n,
                                      std::vector<IsotypicComponent>& comps) {
  const auto& g = rep.group();
  const Character phi_n = rep_character(rep, n);
  const std::size_t dim = rep.degree();
  CycMatrix total(dim);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    auto& c = comps[i];
    const std::string tag = "component " + std::to_string(i) + ": ";
    if (!is_positive_integer(c.chi.degree())) return tag + "chi(1) is not a positive integer";
    if (inner_product(g, c.chi, c.chi) != CycNum(1)) return tag + "<chi,chi> != 1";
    const CycNum mult = inner_product(g, phi_n, c.chi);
    if (!is_positive_integer(mult) || mult != CycNum(static_cast<long long>(c.multiplicity))) {
      return tag + "<phi|N, chi> = " + mult.to_string() + " does not match multiplicity " +
             std::to_string(c.multiplicity);
    }
    c.projector = central_idempotent(rep, c.chi);
    const CycMatrix& e = c.projector;
    if (e * e != e) return tag + "projector is not idempotent";
    if (!e.is_hermitian()) return tag + "projector is not hermitian";
    if (e.trace() != CycNum(static_cast<long long>(c.dimension()))) return tag + "trace(e) != m chi(1)";
    for (auto x : n.elements()) {
      const CycMatrix& rx = rep.matrix(x);
      if (e.trace_of_product(rx) != c.chi(x) * CycNum(static_cast<long long>(c.multiplicity))) {
        return tag + "trace(e rho(x)) != m chi(x) at " + g.label(x);
      }
      if (e * rx != rx * e) return tag + "projector does not commute with rho(" + g.label(x) + ")";
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (comps[j].chi == c.chi) return tag + "duplicate character";
      if (!(comps[j].projector * e).is_zero()) return tag + "not orthogonal to component " + std::to_string(j);
    }
    total += e;
  }
  if (total != CycMatrix::identity(dim)) return "projectors do not sum to the identity";
  return {};
}

inline bool component_before(const IsotypicComponent& a, const IsotypicComponent& b) {
  const int deg = CycNum::compare(a.chi.degree(), b.chi.degree());
  if (deg != 0) return deg > 0;
  for (auto x : a.chi.domain().elements()) {
    const int c = CycNum::compare(a.chi(x), b.chi(x));
    if (c != 0) return c > 0;
  }
  return false;
}

}  // namespace detail

/// One component per constituent of phi|N, ordered by chi(1) descending and
/// then by character values (descending, canonical coefficient order) over
/// N's elements in index order. The order does not depend on the seed.
inline Decomposition isotypic_decomposition(const UnitaryRep& rep, const Subgroup& n,
                                            const DecompositionOptions& opts = {}) {
  const auto& g = rep.group();
  if (n.parent_order() != g.order() || !is_closed_subset(g, n.elements())) {
    throw InvalidArgument("isotypic_decomposition: N is not a subgroup of E");
  }
  if (!is_normal(g, n)) throw InvalidArgument("isotypic_decomposition: N is not normal in E");

  const auto classes = classes_within(g, n);
  std::vector<std::size_t> class_of(g.order(), 0);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (auto x : classes[c]) class_of[x] = c;
  }
  const int snap_conductor =
      detail::normalized_conductor(lcm_conductor(rep.conductor(), static_cast<int>(exponent(g, n))));
  const detail::GaloisSnapper snapper(snap_conductor);
  const auto dim = static_cast<Eigen::Index>(rep.degree());

  std::vector<Eigen::MatrixXcd> class_sums;
  for (const auto& cls : classes) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
    for (auto x : cls) s += rep.matrix(x).to_complex();
    class_sums.push_back(std::move(s));
  }

  std::string reasons;
  for (int attempt = 0; attempt < std::max(1, opts.retries); ++attempt) {
    const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(attempt);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    const std::complex<double> i_unit{0.0, 1.0};
    for (const auto& s : class_sums) {
      const double a = coeff(rng);
      const double b = coeff(rng);
      h += a * 0.5 * (s + s.adjoint()) + b * 0.5 * (s - s.adjoint()) / i_unit;
    }
    h = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());

    std::vector<IsotypicComponent> comps;
    std::string failure;
    Eigen::Index start = 0;
    while (start < dim && failure.empty()) {
      Eigen::Index end = start + 1;
      while (end < dim && lambda(end) - lambda(end - 1) <= opts.tolerance * scale) ++end;
      const Eigen::MatrixXcd v = eig.eigenvectors().middleCols(start, end - start);
      const Eigen::MatrixXcd p = v * v.adjoint();
      start = end;

      std::vector<std::complex<double>> psi(classes.size());
      double norm = 0.0;
      for (std::size_t c = 0; c < classes.size(); ++c) {
        psi[c] = detail::trace_product(p, rep.matrix(classes[c].front()));
        norm += static_cast<double>(classes[c].size()) * std::norm(psi[c]);
      }
      norm /= static_cast<double>(n.order());
      const double m_real = std::sqrt(norm);
      const double m_round = std::round(m_real);
      if (m_round < 1.0 || std::abs(m_real - m_round) > 0.25) {
        failure = "cluster multiplicity " + std::to_string(m_real) + " is not an integer";
        break;
      }
      std::vector<CycNum> values(g.order());
      for (std::size_t c = 0; c < classes.size() && failure.empty(); ++c) {
        const Element x = classes[c].front();
        std::vector<std::complex<double>> conjugates;
        for (int k : snapper.units()) conjugates.push_back(psi[class_of[g.power(x, k)]] / m_round);
        auto snapped = snapper.snap(conjugates);
        if (!snapped) {
          failure = "character value at " + g.label(x) + " did not snap to an algebraic integer";
          break;
        }
        for (auto y : classes[c]) values[y] = *snapped;
      }
      if (!failure.empty()) break;
      IsotypicComponent comp;
      comp.chi = Character(n, std::move(values));
      comp.multiplicity = static_cast<std::size_t>(m_round);
      comps.push_back(std::move(comp));
    }
    if (failure.empty()) failure = detail::certify_components(rep, n, comps);
    if (failure.empty()) {
      std::sort(comps.begin(), comps.end(), detail::component_before);
      return {n, std::move(comps), seed, attempt + 1};
    }
    reasons += "\n  seed " + std::to_string(seed) + ": " + failure;
  }
  throw ComputationError("isotypic decomposition could not be certified after " + std::to_string(opts.retries) +
                         " attempts:" + reasons);
}

}  // namespace cliffcode
