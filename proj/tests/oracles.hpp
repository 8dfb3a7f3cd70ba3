#pragma once

// Brute-force reference computations for the tests. They work on complex
// floating-point matrices or on the raw Cayley table and deliberately avoid
// the library's algorithms.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cliffcode/representation.hpp"

namespace oracle {

using cliffcode::Element;
using Mask = std::vector<bool>;
using Cplx = std::complex<double>;

constexpr double eps = 1e-9;

inline bool close(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff() < eps; }

/// Closure of complex matrices under multiplication; returns the elements.
inline std::vector<Eigen::MatrixXcd> numeric_closure(const std::vector<Eigen::MatrixXcd>& gens, std::size_t cap) {
  std::vector<Eigen::MatrixXcd> out{Eigen::MatrixXcd::Identity(gens[0].rows(), gens[0].cols())};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : gens) {
      Eigen::MatrixXcd p = out[head] * g;
      bool seen = false;
      for (const auto& q : out) {
        if (close(p, q)) {
          seen = true;
          break;
        }
      }
      if (!seen) {
        out.push_back(p);
        if (out.size() > cap) return out;
      }
    }
  }
  return out;
}

/// Subgroup generated by a set of elements, by repeated multiplication in the
/// Cayley table.
inline Mask span(const cliffcode::FiniteGroup& g, const Mask& seed) {
  Mask m(g.order(), false);
  m[0] = true;
  std::vector<Element> frontier{0};
  std::vector<Element> gens;
  for (Element x = 0; x < g.order(); ++x) {
    if (seed[x]) gens.push_back(x);
  }
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (auto a : frontier) {
      for (auto s : gens) {
        const Element p = g.mul(a, s);
        if (!m[p]) {
          m[p] = true;
          next.push_back(p);
        }
      }
    }
    frontier = std::move(next);
  }
  return m;
}

/// Every subgroup, as the closure of the cyclic subgroups under joins.
inline std::set<Mask> all_subgroups(const cliffcode::FiniteGroup& g) {
  std::vector<Mask> cyclic;
  std::set<Mask> seen;
  for (Element x = 0; x < g.order(); ++x) {
    Mask s(g.order(), false);
    s[x] = true;
    auto c = span(g, s);
    if (seen.insert(c).second) cyclic.push_back(c);
  }
  std::vector<Mask> todo(seen.begin(), seen.end());
  while (!todo.empty()) {
    std::vector<Mask> next;
    for (const auto& h : todo) {
      for (const auto& c : cyclic) {
        Mask u(g.order(), false);
        for (Element x = 0; x < g.order(); ++x) u[x] = h[x] || c[x];
        auto j = span(g, u);
        if (seen.insert(j).second) next.push_back(j);
      }
    }
    todo = std::move(next);
  }
  return seen;
}

inline bool normal_by_definition(const cliffcode::FiniteGroup& g, const Mask& h) {
  for (Element x = 0; x < g.order(); ++x) {
    for (Element n = 0; n < g.order(); ++n) {
      if (h[n] && !h[g.mul(g.mul(x, n), g.inv(x))]) return false;
    }
  }
  return true;
}

inline std::set<Mask> all_normal_subgroups(const cliffcode::FiniteGroup& g) {
  std::set<Mask> out;
  for (const auto& h : all_subgroups(g)) {
    if (normal_by_definition(g, h)) out.insert(h);
  }
  return out;
}

inline Mask center(const cliffcode::FiniteGroup& g) {
  Mask m(g.order(), false);
  for (Element x = 0; x < g.order(); ++x) {
    bool central = true;
    for (Element y = 0; y < g.order() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
    m[x] = central;
  }
  return m;
}

inline Mask derived_subgroup(const cliffcode::FiniteGroup& g) {
  Mask comm(g.order(), false);
  for (Element x = 0; x < g.order(); ++x) {
    for (Element y = 0; y < g.order(); ++y) comm[g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y))] = true;
  }
  return span(g, comm);
}

inline std::size_t class_count(const cliffcode::FiniteGroup& g) {
  std::set<std::vector<Element>> classes;
  for (Element x = 0; x < g.order(); ++x) {
    std::vector<Element> cls;
    for (Element y = 0; y < g.order(); ++y) cls.push_back(g.mul(g.mul(y, x), g.inv(y)));
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    classes.insert(cls);
  }
  return classes.size();
}

inline std::size_t count(const Mask& m) { return static_cast<std::size_t>(std::count(m.begin(), m.end(), true)); }

inline Mask to_mask(const cliffcode::Subgroup& s) {
  Mask m(s.parent_order(), false);
  for (auto x : s.elements()) m[x] = true;
  return m;
}

/// Number of non-identity letters in a Pauli or Weyl label such as -iX.I.Z.
inline int label_weight(const std::string& label) {
  std::string body = label;
  std::size_t start = body.find_first_of("IXYZ");
  if (start == std::string::npos) return 0;
  body = body.substr(start);
  int w = 0;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    auto dot = body.find('.', pos);
    const std::string part = body.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (part != "I") ++w;
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return w;
}

/// Complex projector onto the isotypic component, straight from the
/// definition (chi(1)/|N|) sum conj(chi(n)) rho(n), with chi supplied as
/// complex values.
inline Eigen::MatrixXcd numeric_idempotent(const cliffcode::UnitaryRep& rep, const std::vector<Element>& n,
                                           const std::vector<Cplx>& chi_values) {
  const auto d = static_cast<Eigen::Index>(rep.degree());
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t k = 0; k < n.size(); ++k) sum += std::conj(chi_values[k]) * rep.matrix(n[k]).to_complex();
  return sum * (chi_values[0] / static_cast<double>(n.size()));
}

/// e rho(w) e is a multiple of e (complex check).
inline bool numeric_detects(const Eigen::MatrixXcd& e, const Eigen::MatrixXcd& w) {
  const Eigen::MatrixXcd s = e * w * e;
  const Cplx lambda = s.trace() / e.trace();
  return close(s, lambda * e);
}

/// rho(w) acts on the image of e as a scalar.
inline bool numeric_acts_as_scalar(const Eigen::MatrixXcd& e, const Eigen::MatrixXcd& w) {
  const Eigen::MatrixXcd s = w * e;
  const Cplx lambda = (e * s).trace() / e.trace();
  return close(s, lambda * e);
}

struct NumericDistance {
  int undetectable = -1;   // min weight of an undetectable error, -1 if none
  int nonscalar_acting_scalar = -1;  // min weight of a non-central element acting as a scalar on the code
};

/// Scans every element; weights are read off the labels.
inline NumericDistance numeric_distance(const cliffcode::UnitaryRep& rep, const Eigen::MatrixXcd& e) {
  NumericDistance r;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(e.rows(), e.cols());
  for (Element x = 0; x < rep.order(); ++x) {
    const Eigen::MatrixXcd w = rep.matrix(x).to_complex();
    const int wt = label_weight(rep.label(x));
    if (!numeric_detects(e, w)) {
      if (r.undetectable < 0 || wt < r.undetectable) r.undetectable = wt;
      continue;
    }
    const Cplx tr = w.trace() / static_cast<double>(w.rows());
    const bool central = close(w, tr * id);
    if (!central && numeric_acts_as_scalar(e, w)) {
      if (r.nonscalar_acting_scalar < 0 || wt < r.nonscalar_acting_scalar) r.nonscalar_acting_scalar = wt;
    }
  }
  return r;
}

inline int numeric_rank(const Eigen::MatrixXcd& m) {
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  lu.setThreshold(1e-8);
  return static_cast<int>(lu.rank());
}

}  // namespace oracle
