#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cliffcode/cli.hpp"
#include "oracles.hpp"

using namespace cliffcode;

namespace {

const std::string data_dir = CLIFFCODE_DATA_DIR;

/// Every (N, component) projector, brute force, deduplicated by exact equality.
std::vector<CycMatrix> distinct_projectors(const UnitaryRep& rep) {
  std::vector<CycMatrix> out;
  for (const auto& n : oracle::all_normal_subgroups(rep.group())) {
    std::vector<Element> members;
    for (Element x = 0; x < rep.order(); ++x) {
      if (n[x]) members.push_back(x);
    }
    const auto dec = isotypic_decomposition(rep, Subgroup(rep.order(), members));
    for (const auto& c : dec.components) {
      bool seen = false;
      for (const auto& p : out) seen = seen || p == c.projector;
      if (!seen) out.push_back(c.projector);
    }
  }
  return out;
}

/// (K, d) pairs not dominated by another pair, computed directly.
std::set<std::pair<std::size_t, int>> front_by_definition(const std::vector<CodeRecord>& records) {
  std::set<std::pair<std::size_t, int>> pairs, front;
  for (const auto& r : records) pairs.insert({r.dim, r.distance.value_or(0)});
  for (const auto& p : pairs) {
    bool dominated = false;
    for (const auto& q : pairs) dominated = dominated || (q != p && q.first >= p.first && q.second >= p.second);
    if (!dominated) front.insert(p);
  }
  return front;
}

std::set<std::pair<std::size_t, int>> front_of(const BestCodesReport& rep) {
  std::set<std::pair<std::size_t, int>> out;
  for (auto i : rep.front) out.insert({rep.records[i].dim, rep.records[i].distance.value_or(0)});
  return out;
}

class Enumerate : public ::testing::TestWithParam<const char*> {};

TEST_P(Enumerate, MatchesBruteForce) {
  const auto rep = builtin_group(GetParam());
  const auto records = enumerate_codes(rep);
  EXPECT_EQ(records.size(), distinct_projectors(rep).size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_TRUE(records[i].checks_passed()) << i;
    EXPECT_STREQ(records[i].stab_equal(), "yes");
    EXPECT_EQ(records[i].dim, records[i].chi_degree * records[i].multiplicity);
    if (i > 0) EXPECT_FALSE(detail::record_before(records[i], records[i - 1]));
  }
  const auto report = best_codes_report(records);
  EXPECT_EQ(report.status, "ok");
  EXPECT_EQ(front_of(report), front_by_definition(records));
}

INSTANTIATE_TEST_SUITE_P(Groups, Enumerate, ::testing::Values("pauli:1", "pauli:2", "weyl:3:1"));

TEST(Search, BellCodeOnFront) {
  const auto rep = builtin_group("pauli:2");
  const auto report = best_codes_report(enumerate_codes(rep));
  EXPECT_TRUE(front_of(report).count({1, 2}));
  bool bell = false;
  for (const auto& r : report.records) {
    if (r.dim == 1 && r.distance == 2) {
      bell = true;
      EXPECT_EQ(r.distance_status, DistanceStatus::pure);
    }
  }
  EXPECT_TRUE(bell);
}

TEST(Search, Filters) {
  const auto rep = builtin_group("pauli:2");
  SearchFilters big;
  big.min_dim = 5;
  const auto none = best_codes_report(enumerate_codes(rep, big), rep.name());
  EXPECT_TRUE(none.records.empty());
  EXPECT_EQ(none.status, "no codes");
  EXPECT_NE(render_table(none).find("0 distinct codes"), std::string::npos);

  SearchFilters far;
  far.min_distance = 2;
  for (const auto& r : enumerate_codes(rep, far)) EXPECT_GE(r.distance.value_or(0), 2);

  SearchFilters nonabelian;
  nonabelian.only_nonabelian_n = true;
  const auto some = enumerate_codes(rep, nonabelian);
  EXPECT_FALSE(some.empty());
  for (const auto& r : some) EXPECT_FALSE(r.abelian_n);
}

TEST(Search, RejectsNonNormalSubgroup) {
  const auto rep = builtin_group("pauli:1");
  std::vector<Subgroup> only{generate_subgroup(rep.group(), {parse_element(rep, "Z")})};
  EXPECT_THROW(enumerate_codes(rep, {}, {}, only), InvalidArgument);
}

TEST(Search, CsvShape) {
  const auto rep = builtin_group("pauli:1");
  const auto report = best_codes_report(enumerate_codes(rep));
  std::istringstream in(render_csv(report));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "group,N_order,N_gens,chi_deg,mult,dim,distance,abelian_N,stab_equal,checks_passed");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.rfind("pauli:1,", 0), 0U) << line;
  }
  EXPECT_EQ(rows, report.records.size());
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "cliffcode");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const auto saved = conductor_cap();
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  set_conductor_cap(saved);
  return {code, out.str(), err.str()};
}

nlohmann::json parse_json(const std::string& text) { return nlohmann::json::parse(text); }

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, exit_usage);
  EXPECT_EQ(run({"info"}).code, exit_usage);
  EXPECT_EQ(run({"bogus", "-g", "pauli:1"}).code, exit_usage);
  EXPECT_EQ(run({"info", "-g", "pauli:0"}).code, exit_usage);
  EXPECT_EQ(run({"info", "-g", "file:/nonexistent.json"}).code, exit_usage);
  EXPECT_EQ(run({"info", "-g", "pauli:1", "-f", "xml"}).code, exit_usage);
  EXPECT_EQ(run({"code", "-g", "pauli:1"}).code, exit_usage);
  const auto r = run({"code", "-g", "pauli:1", "-s", "Z"});
  EXPECT_EQ(r.code, exit_usage);
  EXPECT_NE(r.err.find("normal"), std::string::npos);
  EXPECT_EQ(run({"code", "-g", "pauli:1", "-s", "Z,-1", "-c", "7"}).code, exit_usage);
  EXPECT_EQ(run({"--help"}).code, exit_ok);
}

TEST(Cli, Info) {
  const auto r = run({"info", "-g", "weyl:3:1", "-f", "json"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const auto j = parse_json(r.out);
  EXPECT_EQ(j["order"], 27);
  EXPECT_EQ(j["degree"], 3);
  EXPECT_EQ(j["conductor"], 3);
  EXPECT_EQ(j["center_order"], 3);
  EXPECT_EQ(j["error_group"], true);
  const auto reducible = run({"info", "-g", "file:" + data_dir + "/groups/dihedral_reducible.json"});
  EXPECT_EQ(reducible.code, exit_ok);
  EXPECT_NE(reducible.out.find("error group      no"), std::string::npos);
}

TEST(Cli, NormalSubgroupsCountMatchesOracle) {
  const auto rep = builtin_group("pauli:1");
  const auto r = run({"normal-subgroups", "-g", "pauli:1", "-f", "json"});
  ASSERT_EQ(r.code, exit_ok);
  EXPECT_EQ(parse_json(r.out)["count"], oracle::all_normal_subgroups(rep.group()).size());
}

TEST(Cli, VerifyPauliTwo) {
  const auto rep = builtin_group("pauli:2");
  const auto expected = oracle::all_normal_subgroups(rep.group()).size();
  const auto r = run({"verify", "-g", "pauli:2"});
  ASSERT_EQ(r.code, exit_ok) << r.out << r.err;
  EXPECT_NE(r.out.find("all lemma/theorem checks passed, " + std::to_string(expected) + "-line sweep"),
            std::string::npos);
}

TEST(Cli, VerifyReducibleFails) {
  const auto r = run({"verify", "-g", "file:" + data_dir + "/groups/dihedral_reducible.json"});
  EXPECT_EQ(r.code, exit_verification);
  EXPECT_NE(r.out.find("fail"), std::string::npos);
}

TEST(Cli, CodeJson) {
  const auto r = run({"code", "-g", "pauli:1", "-s", "Z,-1", "-c", "1", "-f", "json", "--detection", "--sigma", "weight:1"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const auto j = parse_json(r.out);
  EXPECT_EQ(j["dim"], 1);
  EXPECT_EQ(j["checks_passed"], true);
  EXPECT_EQ(j["T_order"], 8);
  const auto rep = builtin_group("pauli:1");
  const int conductor = j["conductor"];
  const auto e = matrix_from_json(j["projector"], 2, conductor, "projector");
  const auto z = rep.matrix(parse_element(rep, "Z"));
  EXPECT_EQ(e, (CycMatrix::identity(2) - z).scaled(CycNum::rational(1, 2)));
  EXPECT_EQ(j["detection"].size(), rep.order());
  // a one-dimensional code detects every error, so any set is correctable
  EXPECT_EQ(j["correctable"], true);
}

TEST(Cli, SearchJsonRoundTrip) {
  const auto r = run({"search", "-g", "pauli:1", "-f", "json"});
  ASSERT_EQ(r.code, exit_ok);
  const auto j = parse_json(r.out);
  const auto records = enumerate_codes(builtin_group("pauli:1"));
  ASSERT_EQ(j["records"].size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(j["records"][i]["dim"], records[i].dim);
    EXPECT_EQ(j["records"][i]["N_order"], records[i].n_order);
  }
  EXPECT_EQ(parse_json(j.dump()), j);
  const auto csv = run({"search", "-g", "pauli:1", "-f", "csv", "--min-dim", "2"});
  EXPECT_EQ(csv.code, exit_ok);
  EXPECT_EQ(csv.out.rfind("group,N_order", 0), 0U);
}

TEST(Cli, CapsGiveComputationErrors) {
  EXPECT_EQ(run({"info", "-g", "pauli:2", "--closure-cap", "10"}).code, exit_computation);
  EXPECT_EQ(run({"normal-subgroups", "-g", "pauli:2", "--normal-cap", "16"}).code, exit_computation);
  EXPECT_EQ(run({"info", "-g", "pauli:1", "--conductor-cap", "2"}).code, exit_computation);
}

TEST(Cli, EnvironmentCapsAndFlagPrecedence) {
  ::setenv("CLIFFCODE_CLOSURE_CAP", "10", 1);
  EXPECT_EQ(run({"info", "-g", "pauli:2"}).code, exit_computation);
  EXPECT_EQ(run({"info", "-g", "pauli:2", "--closure-cap", "1000"}).code, exit_ok);
  ::setenv("CLIFFCODE_CLOSURE_CAP", "abc", 1);
  EXPECT_EQ(run({"info", "-g", "pauli:1"}).code, exit_usage);
  ::unsetenv("CLIFFCODE_CLOSURE_CAP");
  EXPECT_EQ(run({"info", "-g", "pauli:2"}).code, exit_ok);
}

TEST(Cli, SubgroupFile) {
  const std::string path = ::testing::TempDir() + "n.json";
  std::ofstream(path) << R"({"elements": ["X.X", "Z.Z", "-1"]})";
  const auto r = run({"code", "-g", "pauli:2", "--subgroup-file", path, "-f", "json"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const auto j = parse_json(r.out);
  EXPECT_EQ(j["N_order"], 8);
  EXPECT_EQ(j["distance"], 2);
  EXPECT_EQ(j["distance_status"], "pure");
}

}  // namespace
