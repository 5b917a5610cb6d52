#include <gtest/gtest.h>

#include <set>

#include "ucs/verify.hpp"

using ucs::CheckStatus;
using ucs::EnumerationMode;
using ucs::SuiteConfig;

namespace {

SuiteConfig exhaustive(int n) {
  SuiteConfig cfg;
  cfg.plan.n = n;
  return cfg;
}

SuiteConfig random_config(int n, std::uint64_t samples, std::uint64_t seed) {
  SuiteConfig cfg;
  cfg.plan.n = n;
  cfg.plan.mode = EnumerationMode::random;
  cfg.plan.sample_count = samples;
  cfg.plan.seed = seed;
  return cfg;
}

void expect_all_pass(const ucs::SuiteReport& r) {
  for (const auto& c : r.checks) {
    EXPECT_NE(c.status, CheckStatus::fail) << c.descriptor.id << ": " << c.violation_count << " violations";
  }
  EXPECT_TRUE(r.passed());
}

}  // namespace

TEST(Verify, CatalogCoversEveryAnchor) {
  const auto catalog = ucs::check_catalog();
  EXPECT_TRUE(ucs::missing_anchors(catalog).empty());
  std::set<std::string> ids;
  for (const auto& d : catalog) {
    EXPECT_TRUE(ids.insert(d.id).second) << "duplicate id " << d.id;
    EXPECT_FALSE(d.statement.empty()) << d.id;
  }
  auto partial = catalog;
  partial.erase(std::remove_if(partial.begin(), partial.end(),
                               [](const ucs::CheckDescriptor& d) { return d.anchor == "y_dominates_z"; }),
                partial.end());
  EXPECT_EQ(ucs::missing_anchors(partial), std::vector<std::string>{"y_dominates_z"});
}

TEST(Verify, ProbesAreLabeled) {
  std::size_t probes = 0;
  for (const auto& d : ucs::check_catalog()) probes += d.conjecture;
  EXPECT_GE(probes, 2u);
  const auto r = ucs::run_suite(exhaustive(2));
  for (const auto& p : r.probes) EXPECT_TRUE(p.descriptor.conjecture);
  for (const auto& c : r.checks) EXPECT_FALSE(c.descriptor.conjecture);
}

TEST(Verify, ExhaustiveSmallGroundSets) {
  for (int n = 0; n <= 3; ++n) {
    const auto r = ucs::run_suite(exhaustive(n));
    expect_all_pass(r);
    for (const auto& p : r.probes) EXPECT_EQ(p.violation_count, 0u) << p.descriptor.id;
  }
}

TEST(Verify, PopulationSizes) {
  const auto r = ucs::run_suite(exhaustive(3));
  EXPECT_EQ(r.families_any, 256u);
  // one simply rooted family per union-closed family of P(3)
  EXPECT_EQ(r.families_rooted, 122u);
}

TEST(Verify, RandomSamples) {
  for (int n = 5; n <= 6; ++n) expect_all_pass(ucs::run_suite(random_config(n, 300, 1)));
}

TEST(Verify, CheckSelection) {
  auto cfg = exhaustive(3);
  cfg.checks = {"lemma_Y_ge_Z"};
  const auto r = ucs::run_suite(cfg);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_TRUE(r.probes.empty());
  EXPECT_EQ(r.checks[0].descriptor.id, "lemma_Y_ge_Z");
  EXPECT_EQ(r.checks[0].status, CheckStatus::pass);

  cfg.checks = {"no_such_check"};
  EXPECT_THROW(ucs::run_suite(cfg), ucs::DomainError);
}

TEST(Verify, EmptyPopulationIsSkipped) {
  auto cfg = exhaustive(2);
  cfg.plan.size = 100;
  cfg.checks = {"rooted_bound"};
  const auto r = ucs::run_suite(cfg);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].status, CheckStatus::skipped);
  EXPECT_EQ(r.checks[0].instances_tested, 0u);
  EXPECT_TRUE(r.passed());
}

TEST(Verify, CapacitySkipsPerFamilyChecks) {
  auto cfg = exhaustive(6);
  cfg.checks = {"rooted_bound", "lemma_colex_sums"};
  const auto r = ucs::run_suite(cfg);
  ASSERT_EQ(r.checks.size(), 2u);
  EXPECT_EQ(r.checks[0].status, CheckStatus::skipped);
  EXPECT_FALSE(r.checks[0].note.empty());
  EXPECT_EQ(r.checks[1].status, CheckStatus::pass);
}

TEST(Verify, ParallelRunsMatch) {
  auto a = random_config(5, 3000, 7);
  a.shard_size = 64;
  auto b = a;
  b.parallelism = 4;
  EXPECT_EQ(ucs::to_json(ucs::run_suite(a)).dump(), ucs::to_json(ucs::run_suite(b)).dump());
}

TEST(Verify, MaxRootedProbeCounterexamples) {
  // 12 labelled copies of one 7-set family in P(4) beat the conjectured bound.
  auto cfg = exhaustive(4);
  cfg.plan.size = 7;
  cfg.checks = {"conj_max_rooted", "conj_degree_bound"};
  const auto r = ucs::run_suite(cfg);
  ASSERT_EQ(r.probes.size(), 2u);
  EXPECT_EQ(r.probes[0].violation_count, 12u);
  EXPECT_EQ(r.probes[0].violations[0].lhs, ucs::Rational(14));
  EXPECT_EQ(r.probes[0].violations[0].rhs, ucs::Rational(13));
  EXPECT_EQ(r.probes[1].violation_count, 0u);
  EXPECT_TRUE(r.passed());
}

TEST(Verify, TallyCapsViolations) {
  ucs::detail::Tally t(3);
  const auto fam = [] { return std::string("n=0\n"); };
  for (std::uint64_t s = 0; s < 10; ++s) t.at_most(s, fam, ucs::Rational(2), ucs::Rational(1));
  t.at_most(10, fam, ucs::Rational(1), ucs::Rational(1));
  t.vacuous();
  EXPECT_EQ(t.instances(), 12u);
  EXPECT_EQ(t.vacuous_count(), 1u);
  EXPECT_EQ(t.violation_count(), 10u);
  ASSERT_EQ(t.violations().size(), 3u);
  EXPECT_EQ(t.violations()[2].sample, 2u);
  ucs::detail::Tally u(3);
  u.merge(t);
  EXPECT_EQ(u.violation_count(), 10u);
  EXPECT_EQ(u.violations().size(), 3u);
}

TEST(Verify, JsonShape) {
  auto cfg = random_config(4, 50, 3);
  cfg.checks = {"rooted_bound", "conj_degree_bound"};
  const auto j = ucs::to_json(ucs::run_suite(cfg));
  EXPECT_EQ(j["seed"], 3u);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["checks"].size(), 1u);
  EXPECT_EQ(j["conjecture_probes"].size(), 1u);
  EXPECT_FALSE(j.contains("wall_time"));
}
