#pragma once

// Finite groups given by a dense Cayley table. Element 0 is the identity.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "cliffcode/errors.hpp"

namespace cliffcode {

using Element = std::uint32_t;

class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(1, {0}) {}

  /// table[a * order + b] = a*b. Validates the group law: identity row and
  /// column, two-sided inverses, associativity (exhaustive up to order 512,
  /// 10^5 sampled triples above).
  FiniteGroup(std::size_t order, std::vector<Element> table, std::vector<std::string> labels = {})
      : order_(order), table_(std::move(table)), labels_(std::move(labels)) {
    if (order_ == 0) throw InvalidArgument("group order must be positive");
    if (table_.size() != order_ * order_) throw InvalidArgument("Cayley table has wrong size");
    for (auto v : table_) {
      if (v >= order_) throw InvalidArgument("Cayley table entry out of range");
    }
    for (Element a = 0; a < order_; ++a) {
      if (mul(0, a) != a || mul(a, 0) != a) throw InvalidArgument("element 0 is not the identity");
    }
    inverse_.assign(order_, 0);
    for (Element a = 0; a < order_; ++a) {
      bool found = false;
      for (Element b = 0; b < order_; ++b) {
        if (mul(a, b) == 0) {
          if (mul(b, a) != 0) throw InvalidArgument("inverse is not two-sided for element " + std::to_string(a));
          inverse_[a] = b;
          found = true;
          break;
        }
      }
      if (!found) throw InvalidArgument("element " + std::to_string(a) + " has no inverse");
    }
    check_associativity();
    if (!labels_.empty() && labels_.size() != order_) throw InvalidArgument("label count does not match order");
    compute_classes();
  }

  std::size_t order() const { return order_; }
  static constexpr Element identity() { return 0; }
  Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  /// g x g^-1
  Element conjugate(Element g, Element x) const { return mul(mul(g, x), inverse_[g]); }
  /// [g,h] = g^-1 h^-1 g h
  Element commutator(Element g, Element h) const { return mul(mul(inverse_[g], inverse_[h]), mul(g, h)); }

  Element power(Element g, long long k) const {
    if (k < 0) {
      g = inv(g);
      k = -k;
    }
    Element r = 0;
    for (long long i = 0; i < k; ++i) r = mul(r, g);
    return r;
  }

  std::size_t element_order(Element g) const {
    std::size_t n = 1;
    for (Element x = g; x != 0; x = mul(x, g)) ++n;
    return n;
  }

  std::string label(Element g) const {
    if (labels_.empty()) return "g" + std::to_string(g);
    return labels_[g];
  }
  bool has_labels() const { return !labels_.empty(); }
  void set_labels(std::vector<std::string> labels) {
    if (labels.size() != order_) throw InvalidArgument("label count does not match order");
    labels_ = std::move(labels);
  }

  const std::vector<std::vector<Element>>& conjugacy_classes() const { return classes_; }
  std::size_t class_of(Element g) const { return class_of_[g]; }

 private:
  void check_associativity() const {
    auto check = [&](Element a, Element b, Element c) {
      if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
        throw InvalidArgument("Cayley table is not associative at (" + std::to_string(a) + "," +
                              std::to_string(b) + "," + std::to_string(c) + ")");
      }
    };
    if (order_ <= 512) {
      for (Element a = 0; a < order_; ++a)
        for (Element b = 0; b < order_; ++b)
          for (Element c = 0; c < order_; ++c) check(a, b, c);
      return;
    }
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(order_ - 1));
    for (int i = 0; i < 100000; ++i) check(pick(rng), pick(rng), pick(rng));
  }

  void compute_classes() {
    class_of_.assign(order_, static_cast<std::size_t>(-1));
    for (Element x = 0; x < order_; ++x) {
      if (class_of_[x] != static_cast<std::size_t>(-1)) continue;
      const std::size_t id = classes_.size();
      std::vector<Element> cls;
      for (Element g = 0; g < order_; ++g) {
        const Element y = conjugate(g, x);
        if (class_of_[y] == static_cast<std::size_t>(-1)) {
          class_of_[y] = id;
          cls.push_back(y);
        }
      }
      std::sort(cls.begin(), cls.end());
      classes_.push_back(std::move(cls));
    }
  }

  std::size_t order_;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Element>> classes_;
  std::vector<std::size_t> class_of_;
};

/// A subset of a parent group's elements, stored sorted with a membership
/// mask. Constructed through the functions below, which guarantee closure.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(std::size_t parent_order, std::vector<Element> members) : mask_(parent_order, false) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (auto m : members) {
      if (m >= parent_order) throw InvalidArgument("subgroup element out of range");
      mask_[m] = true;
    }
    members_ = std::move(members);
  }

  std::size_t order() const { return members_.size(); }
  std::size_t parent_order() const { return mask_.size(); }
  const std::vector<Element>& elements() const { return members_; }
  bool contains(Element g) const { return g < mask_.size() && mask_[g]; }
  const std::vector<bool>& mask() const { return mask_; }

  bool is_subset_of(const Subgroup& other) const {
    return std::all_of(members_.begin(), members_.end(), [&](Element g) { return other.contains(g); });
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }
  friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }
  /// Order first, then member list.
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members_ < b.members_;
  }

 private:
  std::vector<Element> members_;
  std::vector<bool> mask_;
};

inline Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup(g.order(), {0}); }

inline Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(g.order(), std::move(all));
}

/// Smallest subgroup containing gens; BFS closure under right
/// multiplication by the generators.
inline Subgroup generate_subgroup(const FiniteGroup& g, std::span<const Element> gens) {
  std::vector<bool> seen(g.order(), false);
  std::vector<Element> members{0};
  seen[0] = true;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (auto s : gens) {
      if (s >= g.order()) throw InvalidArgument("generator out of range");
      const Element y = g.mul(members[head], s);
      if (!seen[y]) {
        seen[y] = true;
        members.push_back(y);
      }
    }
  }
  return Subgroup(g.order(), std::move(members));
}

inline Subgroup generate_subgroup(const FiniteGroup& g, std::initializer_list<Element> gens) {
  return generate_subgroup(g, std::span<const Element>(gens.begin(), gens.size()));
}

inline bool is_closed_subset(const FiniteGroup& g, std::span<const Element> elems) {
  std::vector<bool> in(g.order(), false);
  for (auto e : elems) {
    if (e >= g.order()) return false;
    in[e] = true;
  }
  if (!in[0]) return false;
  for (auto a : elems) {
    if (!in[g.inv(a)]) return false;
    for (auto b : elems) {
      if (!in[g.mul(a, b)]) return false;
    }
  }
  return true;
}

/// Wraps an explicit element list, rejecting sets that are not subgroups.
inline Subgroup make_subgroup(const FiniteGroup& g, std::vector<Element> elems) {
  if (!is_closed_subset(g, elems)) throw InvalidArgument("element set is not a subgroup");
  return Subgroup(g.order(), std::move(elems));
}

inline bool is_abelian(const FiniteGroup& g, const Subgroup& h) {
  for (auto a : h.elements())
    for (auto b : h.elements())
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

/// C_G(H) = {g : g h g^-1 = h for all h in H}.
inline Subgroup centralizer(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Element> out;
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto y : h.elements()) {
      if (g.mul(x, y) != g.mul(y, x)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return Subgroup(g.order(), std::move(out));
}

inline Subgroup center(const FiniteGroup& g) { return centralizer(g, whole_group(g)); }

/// Z(H) for a subgroup H, as a subgroup of the parent.
inline Subgroup center_of(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Element> out;
  for (auto x : h.elements()) {
    bool ok = true;
    for (auto y : h.elements()) {
      if (g.mul(x, y) != g.mul(y, x)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return Subgroup(g.order(), std::move(out));
}

inline Subgroup commutator_subgroup(const FiniteGroup& g) {
  std::vector<bool> seen(g.order(), false);
  std::vector<Element> gens;
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = 0; b < g.order(); ++b) {
      const Element c = g.commutator(a, b);
      if (!seen[c]) {
        seen[c] = true;
        gens.push_back(c);
      }
    }
  }
  return generate_subgroup(g, gens);
}

inline Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  std::vector<Element> out;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                        std::back_inserter(out));
  return Subgroup(a.parent_order(), std::move(out));
}

/// Subgroup generated by A and B (equals the set product AB when one of them
/// normalizes the other).
inline Subgroup join(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Element> gens = a.elements();
  gens.insert(gens.end(), b.elements().begin(), b.elements().end());
  return generate_subgroup(g, gens);
}

inline bool normalizes(const FiniteGroup& g, Element x, const Subgroup& h) {
  return std::all_of(h.elements().begin(), h.elements().end(),
                     [&](Element y) { return h.contains(g.conjugate(x, y)); });
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (Element x = 0; x < g.order(); ++x) {
    if (!normalizes(g, x, h)) return false;
  }
  return true;
}

/// Conjugacy classes of H under conjugation by H itself.
inline std::vector<std::vector<Element>> classes_within(const FiniteGroup& g, const Subgroup& h) {
  std::vector<bool> done(g.order(), false);
  std::vector<std::vector<Element>> out;
  for (auto x : h.elements()) {
    if (done[x]) continue;
    std::vector<Element> cls;
    for (auto y : h.elements()) {
      const Element c = g.conjugate(y, x);
      if (!done[c]) {
        done[c] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  return out;
}

/// Least common multiple of the element orders of H.
inline std::size_t exponent(const FiniteGroup& g, const Subgroup& h) {
  std::size_t e = 1;
  for (auto x : h.elements()) e = std::lcm(e, g.element_order(x));
  return e;
}

/// A deterministic small generating set: scan members in index order and
/// keep each element not already generated.
inline std::vector<Element> greedy_generators(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Element> gens;
  Subgroup current = trivial_subgroup(g);
  for (auto x : h.elements()) {
    if (current.contains(x)) continue;
    gens.push_back(x);
    current = generate_subgroup(g, gens);
    if (current.order() == h.order()) break;
  }
  return gens;
}

struct GroupInvariants {
  Subgroup center;
  Subgroup commutator;
  std::vector<std::vector<Element>> classes;
};

inline GroupInvariants group_invariants(const FiniteGroup& g) {
  return {center(g), commutator_subgroup(g), g.conjugacy_classes()};
}

struct CosetDecomposition {
  std::vector<Element> transversal;       // transversal[0] == identity
  std::vector<std::size_t> coset_index;   // per parent element
};

/// Left cosets gH.
inline CosetDecomposition cosets(const FiniteGroup& g, const Subgroup& h) {
  CosetDecomposition out;
  out.coset_index.assign(g.order(), static_cast<std::size_t>(-1));
  for (Element x = 0; x < g.order(); ++x) {
    if (out.coset_index[x] != static_cast<std::size_t>(-1)) continue;
    const std::size_t id = out.transversal.size();
    out.transversal.push_back(x);
    for (auto y : h.elements()) out.coset_index[g.mul(x, y)] = id;
  }
  return out;
}

struct NormalSubgroupOptions {
  std::size_t order_cap = 4096;
  std::size_t count_cap = 100000;
};

/// Every normal subgroup exactly once, sorted by order then member set.
/// BFS from the trivial subgroup: each step joins one further conjugacy
/// class, and the subgroup generated by a normal subgroup and a class is
/// again normal, so every normal subgroup is reached.
inline std::vector<Subgroup> normal_subgroups(const FiniteGroup& g, const NormalSubgroupOptions& opts = {}) {
  if (g.order() > opts.order_cap) {
    throw CapExceeded("group order " + std::to_string(g.order()) + " exceeds the normal-subgroup enumeration cap " +
                      std::to_string(opts.order_cap) + "; pass explicit subgroup generators instead");
  }
  struct Node {
    Subgroup group;
    std::vector<Element> gens;
  };
  const auto& classes = g.conjugacy_classes();
  std::unordered_set<std::vector<bool>> seen;
  std::vector<Subgroup> out;
  std::deque<Node> queue;
  Subgroup triv = trivial_subgroup(g);
  seen.insert(triv.mask());
  out.push_back(triv);
  queue.push_back({triv, {}});
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    for (const auto& cls : classes) {
      if (node.group.contains(cls.front())) continue;
      std::vector<Element> gens = node.gens;
      gens.insert(gens.end(), cls.begin(), cls.end());
      Subgroup next = generate_subgroup(g, gens);
      if (!seen.insert(next.mask()).second) continue;
      if (out.size() >= opts.count_cap) {
        throw CapExceeded("more than " + std::to_string(opts.count_cap) +
                          " normal subgroups; pass explicit subgroup generators instead");
      }
      out.push_back(next);
      queue.push_back({std::move(next), greedy_generators(g, out.back())});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cliffcode
