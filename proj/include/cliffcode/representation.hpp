#pragma once

// The error group E as a finite group of exact unitary matrices: closure from
// generators, the built-in Pauli and Weyl-Heisenberg families, element
// labels, and the abstract-error-group checks.

#include <charconv>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cliffcode/cyclotomic.hpp"
#include "cliffcode/errors.hpp"
#include "cliffcode/group.hpp"
#include "cliffcode/matrix.hpp"

namespace cliffcode {

enum class LabelScheme { generic, pauli, weyl };

/// One local factor X^x Z^z of a Pauli/Weyl tensor word.
struct LocalPower {
  int x = 0;
  int z = 0;
  friend bool operator==(const LocalPower&, const LocalPower&) = default;
};

/// Every entry of the labeling of a built-in group: phase exponent plus one
/// local factor per tensor position.
struct TensorWord {
  int phase = 0;  // power of i (pauli) or of zeta_d (weyl)
  std::vector<LocalPower> locals;
};

struct ClosureOptions {
  std::size_t cap = 100000;
  std::string name = "custom";
  std::optional<std::vector<int>> tensor_factors;
};

class UnitaryRep;
UnitaryRep group_closure(const std::vector<CycMatrix>& generators, const ClosureOptions& opts = {});

class UnitaryRep {
 public:
  const std::string& name() const { return name_; }
  const FiniteGroup& group() const { return group_; }
  std::size_t order() const { return group_.order(); }
  std::size_t degree() const { return degree_; }
  int conductor() const { return conductor_; }
  const CycMatrix& matrix(Element g) const { return matrices_[g]; }
  const std::vector<CycMatrix>& matrices() const { return matrices_; }
  /// phi(g) = trace of the representing matrix.
  const CycNum& character(Element g) const { return character_[g]; }
  const std::vector<CycNum>& character_values() const { return character_; }
  const std::vector<Element>& generators() const { return generators_; }
  const std::optional<std::vector<int>>& tensor_factors() const { return tensor_factors_; }
  /// Number of tensor positions with a non-scalar local factor.
  std::optional<int> weight(Element g) const {
    if (weights_.empty()) return std::nullopt;
    return weights_[g];
  }
  /// Elements represented by scalar matrices.
  const Subgroup& phase_subgroup() const { return phases_; }
  const Subgroup& center() const { return center_; }
  const Subgroup& commutator() const { return commutator_; }
  /// E' <= Z(E), i.e. E/Z(E) abelian.
  bool abelian_index() const { return commutator_.is_subset_of(center_); }

  LabelScheme label_scheme() const { return scheme_; }
  /// Local dimension of the built-in family (2 for pauli, d for weyl).
  int local_dimension() const { return local_dim_; }
  std::string label(Element g) const { return group_.label(g); }

  std::optional<Element> find(const CycMatrix& m) const {
    if (m.size() != degree_) return std::nullopt;
    int c = m.conductor();
    if (conductor_ % c != 0) return std::nullopt;
    auto it = index_.find(m.key(conductor_));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<Element> find_label(const std::string& canonical) const {
    auto it = label_index_.find(canonical);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Attaches display labels; builds the reverse index used by label parsing.
  void set_labels(std::vector<std::string> labels, LabelScheme scheme, int local_dim) {
    label_index_.clear();
    for (Element g = 0; g < labels.size(); ++g) label_index_.emplace(labels[g], g);
    group_.set_labels(std::move(labels));
    scheme_ = scheme;
    local_dim_ = local_dim;
  }

 private:
  friend UnitaryRep group_closure(const std::vector<CycMatrix>&, const ClosureOptions&);

  std::string name_;
  FiniteGroup group_;
  std::size_t degree_ = 1;
  int conductor_ = 1;
  std::vector<CycMatrix> matrices_;
  std::vector<CycNum> character_;
  std::vector<Element> generators_;
  std::optional<std::vector<int>> tensor_factors_;
  std::vector<int> weights_;
  Subgroup phases_;
  Subgroup center_;
  Subgroup commutator_;
  std::unordered_map<std::string, Element> index_;
  std::unordered_map<std::string, Element> label_index_;
  LabelScheme scheme_ = LabelScheme::generic;
  int local_dim_ = 0;
};

inline bool is_unitary(const CycMatrix& m) { return m * m.adjoint() == CycMatrix::identity(m.size()); }

/// Is the local factor at tensor position pos a scalar, assuming m is a
/// phase times a tensor product with the given local dimensions (position 0
/// outermost)?
inline bool local_factor_is_scalar(const CycMatrix& m, std::span<const int> dims, std::size_t pos) {
  std::size_t stride = 1;
  for (std::size_t k = pos + 1; k < dims.size(); ++k) stride *= static_cast<std::size_t>(dims[k]);
  const auto d = static_cast<std::size_t>(dims[pos]);
  auto digit = [&](std::size_t r) { return (r / stride) % d; };
  std::vector<std::size_t> count(d, 0);
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (const auto& [c, v] : m.row(r)) {
      const std::size_t t = digit(r);
      if (t != digit(c)) return false;
      ++count[t];
      if (t != 0 && m.at(r - t * stride, c - t * stride) != v) return false;
    }
  }
  return std::all_of(count.begin(), count.end(), [&](std::size_t n) { return n == count[0]; });
}

inline int tensor_weight(const CycMatrix& m, std::span<const int> dims) {
  int w = 0;
  for (std::size_t pos = 0; pos < dims.size(); ++pos) {
    if (!local_factor_is_scalar(m, dims, pos)) ++w;
  }
  return w;
}

/// BFS closure of a finite unitary matrix group. Element 0 is the identity;
/// element order follows the BFS (right multiplication by generators in the
/// given order), so the result is deterministic.
inline UnitaryRep group_closure(const std::vector<CycMatrix>& generators, const ClosureOptions& opts) {
  if (generators.empty()) throw InvalidArgument("group_closure: at least one generator is required");
  const std::size_t n = generators.front().size();
  if (n == 0) throw InvalidArgument("group_closure: empty matrices");
  int conductor = 1;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (generators[k].size() != n) throw InvalidArgument("group_closure: generators differ in size");
    if (!is_unitary(generators[k])) {
      throw InvalidArgument("group_closure: generator " + std::to_string(k) + " is not unitary");
    }
    conductor = lcm_conductor(conductor, generators[k].conductor());
  }
  if (opts.tensor_factors) {
    std::size_t prod = 1;
    for (int d : *opts.tensor_factors) {
      if (d < 1) throw InvalidArgument("tensor factors must be positive");
      prod *= static_cast<std::size_t>(d);
    }
    if (prod != n) throw InvalidArgument("tensor factors do not multiply to the degree");
  }

  UnitaryRep rep;
  rep.name_ = opts.name;
  rep.degree_ = n;
  rep.conductor_ = conductor;
  rep.tensor_factors_ = opts.tensor_factors;

  const std::size_t ngens = generators.size();
  std::vector<CycMatrix> mats{CycMatrix::identity(n)};
  std::vector<Element> parent{0};
  std::vector<std::uint32_t> via{0};
  std::vector<Element> rmul;  // rmul[g * ngens + s] = g * gen_s
  rep.index_.emplace(mats[0].key(conductor), 0);
  for (std::size_t head = 0; head < mats.size(); ++head) {
    for (std::size_t s = 0; s < ngens; ++s) {
      CycMatrix prod = mats[head] * generators[s];
      std::string key = prod.key(conductor);
      auto [it, inserted] = rep.index_.emplace(std::move(key), static_cast<Element>(mats.size()));
      if (inserted) {
        if (mats.size() >= opts.cap) {
          throw CapExceeded("group closure exceeded cap " + std::to_string(opts.cap) + " (partial size " +
                            std::to_string(mats.size()) + ")");
        }
        mats.push_back(std::move(prod));
        parent.push_back(static_cast<Element>(head));
        via.push_back(static_cast<std::uint32_t>(s));
      }
      rmul.push_back(it->second);
    }
  }

  const std::size_t order = mats.size();
  std::vector<Element> table(order * order);
  for (Element g = 0; g < order; ++g) {
    table[static_cast<std::size_t>(g) * order] = g;
    for (Element h = 1; h < order; ++h) {
      const Element gp = table[static_cast<std::size_t>(g) * order + parent[h]];
      table[static_cast<std::size_t>(g) * order + h] = rmul[static_cast<std::size_t>(gp) * ngens + via[h]];
    }
  }
  rep.group_ = FiniteGroup(order, std::move(table));
  rep.matrices_ = std::move(mats);
  for (std::size_t s = 0; s < ngens; ++s) rep.generators_.push_back(rmul[s]);  // identity * gen_s

  auto check_pair = [&](Element a, Element b) {
    if (rep.matrices_[a] * rep.matrices_[b] != rep.matrices_[rep.group_.mul(a, b)]) {
      throw ComputationError("group_closure: homomorphism check failed at (" + std::to_string(a) + "," +
                             std::to_string(b) + ")");
    }
  };
  if (order <= 256) {
    for (Element a = 0; a < order; ++a)
      for (Element b = 0; b < order; ++b) check_pair(a, b);
  } else {
    std::mt19937_64 rng(0xc11ff);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(order - 1));
    for (int i = 0; i < 10000; ++i) check_pair(pick(rng), pick(rng));
  }

  rep.character_.reserve(order);
  std::vector<Element> phases;
  for (Element g = 0; g < order; ++g) {
    rep.character_.push_back(rep.matrices_[g].trace());
    if (rep.matrices_[g].as_scalar()) phases.push_back(g);
  }
  rep.phases_ = Subgroup(order, std::move(phases));
  rep.center_ = center(rep.group_);
  rep.commutator_ = commutator_subgroup(rep.group_);
  if (rep.tensor_factors_) {
    rep.weights_.reserve(order);
    for (Element g = 0; g < order; ++g) rep.weights_.push_back(tensor_weight(rep.matrices_[g], *rep.tensor_factors_));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Built-in families

/// Clock-and-shift power X^x Z^z on C^d: X|j> = |j+1>, Z|j> = zeta_d^j |j>.
inline CycMatrix clock_shift(int d, int x, int z) {
  CycMatrix m(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    // (X^x Z^z)|j> = zeta^(z j) |j + x>
    m.set(static_cast<std::size_t>((j + x) % d), static_cast<std::size_t>(j),
          CycNum::root_of_unity(d, static_cast<long long>(z) * j));
  }
  return m;
}

inline CycMatrix pauli_local(char c) {
  switch (c) {
    case 'I':
      return CycMatrix::identity(2);
    case 'X':
      return clock_shift(2, 1, 0);
    case 'Z':
      return clock_shift(2, 0, 1);
    case 'Y':  // i X Z = [[0,-i],[i,0]]
      return clock_shift(2, 1, 1).scaled(CycNum::root_of_unity(4, 1));
    default:
      throw InvalidArgument(std::string("unknown Pauli letter '") + c + "'");
  }
}

inline CycMatrix embed_local(const CycMatrix& local, std::size_t pos, std::size_t positions) {
  const std::size_t d = local.size();
  CycMatrix out = CycMatrix::identity(1);
  for (std::size_t k = 0; k < positions; ++k) out = kron(out, k == pos ? local : CycMatrix::identity(d));
  return out;
}

inline char pauli_letter(const LocalPower& p) {
  if (p.x == 0 && p.z == 0) return 'I';
  if (p.x == 1 && p.z == 0) return 'X';
  if (p.x == 0 && p.z == 1) return 'Z';
  return 'Y';
}

inline std::string format_word(const TensorWord& w, LabelScheme scheme) {
  std::string out;
  if (scheme == LabelScheme::pauli) {
    static const char* prefix[] = {"", "i", "-", "-i"};
    out = prefix[((w.phase % 4) + 4) % 4];
  } else if (w.phase != 0) {
    out = "w" + std::to_string(w.phase);
  }
  for (std::size_t k = 0; k < w.locals.size(); ++k) {
    if (k) out.push_back('.');
    const auto& p = w.locals[k];
    if (scheme == LabelScheme::pauli) {
      out.push_back(pauli_letter(p));
    } else if (p.x == 0 && p.z == 0) {
      out.push_back('I');
    } else {
      if (p.x) out += "X" + (p.x > 1 ? std::to_string(p.x) : std::string());
      if (p.z) out += "Z" + (p.z > 1 ? std::to_string(p.z) : std::string());
    }
  }
  return out;
}

inline CycMatrix word_matrix(const TensorWord& w, LabelScheme scheme, int d) {
  CycMatrix out = CycMatrix::identity(1);
  for (const auto& p : w.locals) {
    CycMatrix local = scheme == LabelScheme::pauli ? pauli_local(pauli_letter(p)) : clock_shift(d, p.x, p.z);
    out = kron(out, local);
  }
  const CycNum phase = scheme == LabelScheme::pauli ? CycNum::root_of_unity(4, w.phase) : CycNum::root_of_unity(d, w.phase);
  return out.scaled(phase);
}

namespace detail {

inline void label_builtin(UnitaryRep& rep, LabelScheme scheme, int d, std::size_t positions, int phase_count) {
  std::vector<std::string> labels(rep.order());
  std::vector<bool> done(rep.order(), false);
  const int local_count = d * d;
  std::size_t words = 1;
  for (std::size_t k = 0; k < positions; ++k) words *= static_cast<std::size_t>(local_count);
  for (int ph = 0; ph < phase_count; ++ph) {
    for (std::size_t code = 0; code < words; ++code) {
      TensorWord w;
      w.phase = ph;
      std::size_t rest = code;
      w.locals.resize(positions);
      for (std::size_t k = positions; k-- > 0;) {
        const int v = static_cast<int>(rest % static_cast<std::size_t>(local_count));
        rest /= static_cast<std::size_t>(local_count);
        w.locals[k] = {v / d, v % d};
      }
      auto g = rep.find(word_matrix(w, scheme, d));
      if (!g) throw ComputationError("built-in labeling: word " + format_word(w, scheme) + " not in group");
      if (done[*g]) continue;
      done[*g] = true;
      labels[*g] = format_word(w, scheme);
    }
  }
  for (Element g = 0; g < rep.order(); ++g) {
    if (!done[g]) throw ComputationError("built-in labeling: element " + std::to_string(g) + " has no word");
  }
  rep.set_labels(std::move(labels), scheme, d);
}

inline int parse_positive(std::string_view s, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v <= 0) {
    throw InvalidArgument("malformed group spec: bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

/// Fails before building when scalars * (d^2)^n exceeds the cap.
inline void check_builtin_order(const std::string& name, int d, int n, int scalars, std::size_t cap) {
  std::size_t order = static_cast<std::size_t>(scalars);
  const auto d2 = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  for (int k = 0; k < n && order <= cap; ++k) order *= d2;
  if (order > cap) {
    throw CapExceeded(name + " has order above the closure cap " + std::to_string(cap) +
                      "; supply generators of a subgroup in a group file instead");
  }
}

}  // namespace detail

/// pauli:n -- generated by X and Z on each qubit plus the scalar iI.
inline UnitaryRep pauli_group(int n, std::size_t cap = 100000) {
  if (n < 1) throw InvalidArgument("pauli:n needs n >= 1");
  detail::check_builtin_order("pauli:" + std::to_string(n), 2, n, 4, cap);
  const auto positions = static_cast<std::size_t>(n);
  std::vector<CycMatrix> gens;
  for (std::size_t k = 0; k < positions; ++k) {
    gens.push_back(embed_local(pauli_local('X'), k, positions));
    gens.push_back(embed_local(pauli_local('Z'), k, positions));
  }
  std::size_t dim = std::size_t{1} << positions;
  gens.push_back(CycMatrix::scalar(dim, CycNum::root_of_unity(4, 1)));
  ClosureOptions opts;
  opts.cap = cap;
  opts.name = "pauli:" + std::to_string(n);
  opts.tensor_factors = std::vector<int>(positions, 2);
  UnitaryRep rep = group_closure(gens, opts);
  detail::label_builtin(rep, LabelScheme::pauli, 2, positions, 4);
  return rep;
}

/// weyl:d:n -- generated by the clock and shift matrices on each qudit. The
/// phases zeta_d arise from their commutators.
inline UnitaryRep weyl_group(int d, int n, std::size_t cap = 100000) {
  if (d < 2 || n < 1) throw InvalidArgument("weyl:d:n needs d >= 2 and n >= 1");
  detail::check_builtin_order("weyl:" + std::to_string(d) + ":" + std::to_string(n), d, n, d, cap);
  const auto positions = static_cast<std::size_t>(n);
  std::vector<CycMatrix> gens;
  for (std::size_t k = 0; k < positions; ++k) {
    gens.push_back(embed_local(clock_shift(d, 1, 0), k, positions));
    gens.push_back(embed_local(clock_shift(d, 0, 1), k, positions));
  }
  ClosureOptions opts;
  opts.cap = cap;
  opts.name = "weyl:" + std::to_string(d) + ":" + std::to_string(n);
  opts.tensor_factors = std::vector<int>(positions, d);
  UnitaryRep rep = group_closure(gens, opts);
  detail::label_builtin(rep, LabelScheme::weyl, d, positions, d);
  return rep;
}

/// Parses "pauli:n" or "weyl:d:n".
inline UnitaryRep builtin_group(std::string_view spec, std::size_t cap = 100000) {
  auto next = [&](std::string_view& rest) {
    auto pos = rest.find(':');
    std::string_view head = rest.substr(0, pos);
    rest = pos == std::string_view::npos ? std::string_view{} : rest.substr(pos + 1);
    return head;
  };
  std::string_view rest = spec;
  const std::string_view kind = next(rest);
  if (kind == "pauli") {
    if (rest.empty() || rest.find(':') != std::string_view::npos)
      throw InvalidArgument("malformed group spec '" + std::string(spec) + "' (expected pauli:n)");
    return pauli_group(detail::parse_positive(rest, "qubit count"), cap);
  }
  if (kind == "weyl") {
    const std::string_view d = next(rest);
    if (rest.empty() || rest.find(':') != std::string_view::npos)
      throw InvalidArgument("malformed group spec '" + std::string(spec) + "' (expected weyl:d:n)");
    return weyl_group(detail::parse_positive(d, "local dimension"), detail::parse_positive(rest, "qudit count"), cap);
  }
  throw InvalidArgument("unknown group spec '" + std::string(spec) + "' (expected pauli:n, weyl:d:n or file:PATH)");
}

// ---------------------------------------------------------------------------
// Checks

struct ErrorGroupReport {
  std::size_t order = 0;
  std::size_t degree = 0;
  std::size_t center_order = 0;
  std::size_t commutator_order = 0;
  std::size_t index = 0;  // (E : Z(E))
  CycNum character_norm;  // <phi, phi>
  bool faithful = false;
  bool unitary = false;
  bool irreducible = false;
  bool degree_law = false;
  bool abelian_index = false;
  bool vanishes_off_center = false;  // only asserted when abelian_index
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline CycNum rep_character_norm(const UnitaryRep& rep) {
  CycNum sum;
  for (Element g = 0; g < rep.order(); ++g) sum += rep.character(g) * rep.character(g).conj();
  return sum.divided_by(rep.order());
}

inline ErrorGroupReport verify_error_group(const UnitaryRep& rep) {
  ErrorGroupReport r;
  const auto& g = rep.group();
  r.order = rep.order();
  r.degree = rep.degree();
  r.center_order = rep.center().order();
  r.commutator_order = rep.commutator().order();
  r.index = r.order / r.center_order;
  r.abelian_index = rep.abelian_index();

  std::unordered_set<std::string> keys;
  r.faithful = true;
  for (Element x = 0; x < g.order(); ++x) {
    if (!keys.insert(rep.matrix(x).key(rep.conductor())).second) {
      r.faithful = false;
      r.violations.push_back("faithfulness: element " + rep.label(x) + " repeats an earlier matrix");
      break;
    }
  }
  r.unitary = true;
  for (Element x = 0; x < g.order(); ++x) {
    if (!is_unitary(rep.matrix(x))) {
      r.unitary = false;
      r.violations.push_back("unitarity: element " + rep.label(x) + " is not unitary");
      break;
    }
  }
  r.character_norm = rep_character_norm(rep);
  r.irreducible = r.character_norm == CycNum(1);
  if (!r.irreducible) r.violations.push_back("irreducibility: <phi,phi> = " + r.character_norm.to_string());
  r.degree_law = r.degree * r.degree == r.index;
  if (!r.degree_law) {
    r.violations.push_back("degree law: degree^2 = " + std::to_string(r.degree * r.degree) + " but (E:Z(E)) = " +
                           std::to_string(r.index));
  }
  r.vanishes_off_center = true;
  for (Element x = 0; x < g.order(); ++x) {
    if (!rep.center().contains(x) && !rep.character(x).is_zero()) {
      r.vanishes_off_center = false;
      if (r.abelian_index) r.violations.push_back("phi vanishes off Z(E): phi(" + rep.label(x) + ") != 0");
      break;
    }
  }
  return r;
}

/// The ambient space viewed as a CN-module: matrices of N only, with the
/// restricted character phi|N.
class RepRestriction {
 public:
  RepRestriction(const UnitaryRep& rep, Subgroup n) : rep_(&rep), subgroup_(std::move(n)) {
    if (subgroup_.parent_order() != rep.order() || !is_closed_subset(rep.group(), subgroup_.elements())) {
      throw InvalidArgument("rep_restrict: element set is not a subgroup of E");
    }
  }
  const Subgroup& subgroup() const { return subgroup_; }
  const std::vector<Element>& elements() const { return subgroup_.elements(); }
  const CycMatrix& matrix(Element n) const { return rep_->matrix(checked(n)); }
  const CycNum& character(Element n) const { return rep_->character(checked(n)); }
  Element mul(Element a, Element b) const { return rep_->group().mul(checked(a), checked(b)); }

 private:
  Element checked(Element n) const {
    if (!subgroup_.contains(n)) throw InvalidArgument("element " + std::to_string(n) + " is not in the restriction");
    return n;
  }
  const UnitaryRep* rep_;
  Subgroup subgroup_;
};

inline RepRestriction rep_restrict(const UnitaryRep& rep, const Subgroup& n) { return RepRestriction(rep, n); }

}  // namespace cliffcode
