#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "cliffcode/group.hpp"
#include "cliffcode/labels.hpp"
#include "cliffcode/representation.hpp"
#include "oracles.hpp"

using namespace cliffcode;

namespace {

/// Symmetric group on k points from explicit permutations.
FiniteGroup symmetric_group(int k) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, Element> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<Element>(i);
  std::vector<Element> table;
  for (const auto& a : perms) {
    for (const auto& b : perms) {
      std::vector<int> c(static_cast<std::size_t>(k));
      for (int x = 0; x < k; ++x) c[static_cast<std::size_t>(x)] = a[static_cast<std::size_t>(b[static_cast<std::size_t>(x)])];
      table.push_back(index.at(c));
    }
  }
  return FiniteGroup(perms.size(), std::move(table));
}

FiniteGroup cyclic_group(std::size_t n) {
  std::vector<Element> table;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) table.push_back(static_cast<Element>((a + b) % n));
  }
  return FiniteGroup(n, std::move(table));
}

void expect_normal_subgroups_match_oracle(const FiniteGroup& g, std::size_t expected_count) {
  const auto ours = normal_subgroups(g);
  const auto oracle_set = oracle::all_normal_subgroups(g);
  std::set<oracle::Mask> ours_set;
  for (const auto& n : ours) ours_set.insert(oracle::to_mask(n));
  EXPECT_EQ(ours.size(), ours_set.size()) << "duplicates in enumeration";
  EXPECT_EQ(ours_set, oracle_set);
  EXPECT_EQ(ours.size(), expected_count);
  EXPECT_TRUE(std::is_sorted(ours.begin(), ours.end()));
}

TEST(NormalSubgroups, SymmetricGroups) {
  expect_normal_subgroups_match_oracle(symmetric_group(3), oracle::all_normal_subgroups(symmetric_group(3)).size());
  expect_normal_subgroups_match_oracle(symmetric_group(4), oracle::all_normal_subgroups(symmetric_group(4)).size());
}

TEST(NormalSubgroups, CyclicGroupMatchesDivisors) {
  // every subgroup of a cyclic group is normal; one per divisor
  const auto g = cyclic_group(12);
  EXPECT_EQ(oracle::all_subgroups(g).size(), 6U);
  expect_normal_subgroups_match_oracle(g, 6);
}

TEST(NormalSubgroups, PauliOne) {
  const auto rep = builtin_group("pauli:1");
  expect_normal_subgroups_match_oracle(rep.group(), oracle::all_normal_subgroups(rep.group()).size());
  EXPECT_EQ(normal_subgroups(rep.group()).size(), 17U);
}

TEST(NormalSubgroups, PauliTwo) {
  const auto rep = builtin_group("pauli:2");
  const auto oracle_count = oracle::all_normal_subgroups(rep.group()).size();
  expect_normal_subgroups_match_oracle(rep.group(), oracle_count);
}

TEST(NormalSubgroups, WeylThree) {
  const auto rep = builtin_group("weyl:3:1");
  expect_normal_subgroups_match_oracle(rep.group(), oracle::all_normal_subgroups(rep.group()).size());
}

TEST(NormalSubgroups, CapsAreEnforced) {
  const auto rep = builtin_group("pauli:2");
  EXPECT_THROW(normal_subgroups(rep.group(), {32, 100000}), CapExceeded);
  EXPECT_THROW(normal_subgroups(rep.group(), {4096, 10}), CapExceeded);
}

TEST(Invariants, MatchDefinitions) {
  for (const char* spec : {"pauli:1", "pauli:2", "weyl:3:1", "weyl:2:1"}) {
    const auto rep = builtin_group(spec);
    const auto& g = rep.group();
    EXPECT_EQ(oracle::to_mask(center(g)), oracle::center(g)) << spec;
    EXPECT_EQ(oracle::to_mask(commutator_subgroup(g)), oracle::derived_subgroup(g)) << spec;
    EXPECT_EQ(g.conjugacy_classes().size(), oracle::class_count(g)) << spec;
  }
  const auto s4 = symmetric_group(4);
  EXPECT_EQ(center(s4).order(), 1U);
  EXPECT_EQ(commutator_subgroup(s4).order(), 12U);
  EXPECT_EQ(s4.conjugacy_classes().size(), oracle::class_count(s4));
}

TEST(Subgroups, GeneratedAndClosed) {
  const auto rep = builtin_group("pauli:1");
  const auto& g = rep.group();
  const auto xz = generate_subgroup(g, {parse_element(rep, "X"), parse_element(rep, "Z")});
  EXPECT_EQ(xz.order(), 8U);
  EXPECT_FALSE(is_abelian(g, xz));
  EXPECT_TRUE(is_normal(g, xz));
  EXPECT_EQ(center_of(g, xz).order(), 2U);
  const auto z = generate_subgroup(g, {parse_element(rep, "Z")});
  EXPECT_EQ(z.order(), 2U);
  EXPECT_FALSE(is_normal(g, z));
  EXPECT_THROW(make_subgroup(g, {0, parse_element(rep, "X"), parse_element(rep, "Z")}), InvalidArgument);
  EXPECT_EQ(intersection(xz, whole_group(g)), xz);
  EXPECT_EQ(join(g, z, generate_subgroup(g, {parse_element(rep, "X")})), xz);
}

TEST(Subgroups, CentralizerByDefinition) {
  const auto rep = builtin_group("pauli:2");
  const auto& g = rep.group();
  const auto h = generate_subgroup(g, {parse_element(rep, "X.X"), parse_element(rep, "Z.Z")});
  const auto c = centralizer(g, h);
  for (Element x = 0; x < g.order(); ++x) {
    bool commutes = true;
    for (auto y : h.elements()) commutes = commutes && g.mul(x, y) == g.mul(y, x);
    EXPECT_EQ(c.contains(x), commutes);
  }
}

TEST(Subgroups, CosetsPartition) {
  const auto rep = builtin_group("pauli:2");
  const auto& g = rep.group();
  const auto h = generate_subgroup(g, {parse_element(rep, "X.I")});
  const auto cs = cosets(g, h);
  EXPECT_EQ(cs.transversal.size() * h.order(), g.order());
  EXPECT_EQ(cs.transversal.front(), 0U);
  for (Element x = 0; x < g.order(); ++x) {
    for (Element y = 0; y < g.order(); ++y) {
      EXPECT_EQ(cs.coset_index[x] == cs.coset_index[y], h.contains(g.mul(g.inv(x), y)));
    }
  }
}

TEST(Subgroups, ExponentAndOrders) {
  const auto rep = builtin_group("weyl:3:1");
  const auto& g = rep.group();
  EXPECT_EQ(exponent(g, whole_group(g)), 3U);
  for (Element x = 1; x < g.order(); ++x) EXPECT_EQ(g.element_order(x), 3U);
  const auto p = builtin_group("pauli:1");
  EXPECT_EQ(exponent(p.group(), whole_group(p.group())), 4U);
}

TEST(FiniteGroupTable, RejectsNonGroups) {
  EXPECT_THROW(FiniteGroup(2, {0, 1, 1, 1}), InvalidArgument);
  EXPECT_THROW(FiniteGroup(2, {1, 0, 0, 1}), InvalidArgument);
  EXPECT_THROW(FiniteGroup(2, {0, 1, 1}), InvalidArgument);
  // a Latin square with identity 0 that is not associative (order 5 loop)
  const std::vector<Element> loop = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  EXPECT_THROW(FiniteGroup(5, loop), InvalidArgument);
}

}  // namespace
