#include "latred/harness.hpp"

#include <gtest/gtest.h>

#include "latred/io.hpp"
#include "test_util.hpp"

namespace latred {
namespace {

TEST(SplitMixTest, ReferenceSequence) {
  // First outputs for seed 0 of the reference SplitMix64 generator.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(SplitMixTest, UniformStaysInRange) {
  SplitMix64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t const v = rng.uniform(-4, 6);
    EXPECT_GE(v, -4);
    EXPECT_LE(v, 6);
  }
}

TEST(GenerateTest, Deterministic) {
  LatticeSpec const spec{LatticeKind::uniform, 5, 10, 77};
  EXPECT_EQ(generate_lattice(spec), generate_lattice(spec));
  LatticeSpec other = spec;
  other.seed = 78;
  EXPECT_FALSE(generate_lattice(spec) == generate_lattice(other));
}

TEST(GenerateTest, ShapesAndRanges) {
  Basis const one = generate_lattice({LatticeKind::uniform, 1, 3, 1});
  EXPECT_EQ(one.rank(), 1u);
  EXPECT_NE(one.row(0)[0], 0);
  Basis const u = generate_lattice({LatticeKind::uniform, 6, 4, 9});
  EXPECT_EQ(u.rank(), 6u);
  for (auto const& row : u.rows()) {
    for (auto const& e : row) EXPECT_LE(abs(e), 4);
  }
  Basis const k = generate_lattice({LatticeKind::knapsack, 4, 1000, 9});
  EXPECT_EQ(k.rank(), 4u);
  EXPECT_EQ(k.ambient_dim(), 5u);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(k.row(i)[j], i == j ? 1 : 0);
  }
}

TEST(GenerateTest, RejectsBadSpec) {
  EXPECT_THROW(generate_lattice({LatticeKind::uniform, 0, 5, 1}), Error);
  EXPECT_THROW(generate_lattice({LatticeKind::uniform, 3, 0, 1}), Error);
}

TEST(BasisIoTest, RoundTripIsByteExact) {
  Basis const b({{1, -2, 3}, {0, 5, -7}});
  std::string const text = basis_to_string(b);
  EXPECT_EQ(basis_from_string(text), b);
  EXPECT_EQ(basis_to_string(basis_from_string(text)), text);
}

TEST(BasisIoTest, BigIntegersSurvive) {
  Integer const big("123456789012345678901234567890");
  Basis const b({{big, 1}, {0, -big}});
  std::string const text = basis_to_string(b);
  EXPECT_NE(text.find("\"123456789012345678901234567890\""), std::string::npos);
  EXPECT_EQ(basis_from_string(text), b);
  EXPECT_EQ(basis_to_string(basis_from_string(text)), text);
}

TEST(BasisIoTest, ParseErrors) {
  for (char const* bad : {"", "{", "{\"rows\": [[1, 0], [0]]}", "{\"rows\": [[1.5]]}",
                          "{\"rows\": [[\"12a\"]]}",
                          "{\"ambient\": 3, \"rank\": 1, \"rows\": [[1, 0]]}"}) {
    EXPECT_THROW(basis_from_string(bad), Error) << bad;
  }
  try {
    basis_from_string("{\"rows\": [[1.5]]}");
  } catch (Error const& e) {
    EXPECT_EQ(e.code(), Errc::parse_error);
  }
}

TEST(ExperimentTest, RankOneIsTrivial) {
  ExperimentConfig config;
  config.spec = {LatticeKind::uniform, 1, 5, 1};
  config.trials = 5;
  ExperimentReport const rep = run_experiment(config);
  ASSERT_EQ(rep.records.size(), 5u);
  for (auto const& r : rep.records) {
    EXPECT_EQ(r.defect_after, 1);
    EXPECT_TRUE(r.violations.empty());
  }
}

TEST(ExperimentTest, RankTwoSatisfiesTheorem1) {
  ExperimentConfig config;
  config.spec = {LatticeKind::uniform, 2, 20, 5};
  config.trials = 100;
  ExperimentReport const rep = run_experiment(config);
  EXPECT_EQ(rep.summaries[0].runs, 100u);
  EXPECT_EQ(rep.summaries[0].theorem1_ok, 100u);
  EXPECT_EQ(rep.violation_count(), 0u);
}

TEST(ExperimentTest, RankFiveMatchesOracle) {
  ExperimentConfig config;
  config.spec = {LatticeKind::uniform, 5, 10, 11};
  config.trials = 50;
  ExperimentReport const rep = run_experiment(config);
  EXPECT_EQ(rep.summaries[0].oracle_checked, 50u);
  EXPECT_EQ(rep.summaries[0].oracle_ok, 50u);
  EXPECT_EQ(rep.violation_count(), 0u);
}

TEST(ExperimentTest, DeterministicOutput) {
  ExperimentConfig config;
  config.spec = {LatticeKind::knapsack, 4, 50, 2};
  config.trials = 6;
  config.methods = {Method::strong, Method::hkz, Method::lll};
  ExperimentReport const a = run_experiment(config);
  ExperimentReport const b = run_experiment(config);
  EXPECT_EQ(experiment_to_csv(a), experiment_to_csv(b));
  EXPECT_EQ(experiment_to_text(a), experiment_to_text(b));
  EXPECT_EQ(a.records.size(), 18u);
}

TEST(ExperimentTest, BudgetOverrunsAreCounted) {
  ExperimentConfig config;
  config.spec = {LatticeKind::uniform, 6, 30, 3};
  config.trials = 3;
  config.budget = EnumerationBudget{2};
  ExperimentReport const rep = run_experiment(config);
  EXPECT_EQ(rep.summaries[0].budget_exceeded, 3u);
  EXPECT_EQ(rep.summaries[0].runs, 0u);
}

TEST(ExperimentTest, LargeDimensionNeedsOverride) {
  ExperimentConfig config;
  config.spec = {LatticeKind::uniform, 13, 5, 1};
  EXPECT_THROW(run_experiment(config), Error);
}

}  // namespace
}  // namespace latred
