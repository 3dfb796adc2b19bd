#include "latred/enumeration.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace latred {
namespace {

using testing::box_min_distance;
using testing::box_min_norm;
using testing::random_uniform;

TEST(SvpTest, Identity) {
  ShortVector const sv = svp(Basis({{1, 0}, {0, 1}}));
  EXPECT_EQ(sv.norm_sq, 1);
  EXPECT_EQ(sv.coeffs, (IntVector{1, 0}));
}

TEST(SvpTest, Shear) { EXPECT_EQ(svp(Basis({{1, 0}, {1, 1}})).norm_sq, 1); }

TEST(SvpTest, HexagonalLikePair) {
  Basis const b({{2, 1}, {1, 2}});
  // Box oracle over |x_i| <= 3.
  EXPECT_EQ(box_min_norm(b.rows(), 3), 2);
  ShortVector const sv = svp(b);
  EXPECT_EQ(sv.norm_sq, 2);
  EXPECT_EQ(sv.coeffs, (IntVector{1, -1}));
  EXPECT_EQ(b.vector_from(sv.coeffs), (IntVector{1, -1}));
}

TEST(SvpTest, BudgetExceeded) {
  try {
    svp(random_uniform(6, 50, 3), EnumerationBudget{1});
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.code(), Errc::budget_exceeded);
  }
  EXPECT_THROW(svp(random_uniform(3, 5, 1), EnumerationBudget{0}), Error);
}

TEST(SvpTest, AgreesWithBoxSearch) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::size_t const n = 2 + seed % 3;
    ReducedBasis const pre = lll_reduce(random_uniform(n, 10, seed));
    Integer const box = certified_box_bound(pre.basis, detail::min_row_norm_sq(pre.basis));
    ShortVector const sv = svp(pre.basis);
    EXPECT_EQ(sv.norm_sq, box_min_norm(pre.basis.rows(), static_cast<std::int64_t>(box)));
    EXPECT_EQ(norm_sq(pre.basis.vector_from(sv.coeffs)), sv.norm_sq);
  }
}

TEST(CvpTest, LatticePointTarget) {
  Basis const b({{2, 1}, {1, 2}});
  ClosestVector const cv = cvp(b, {3, 3});
  EXPECT_EQ(cv.dist_sq, 0);
  EXPECT_EQ(cv.coeffs, (IntVector{1, 1}));
}

TEST(CvpTest, MidpointTieTakesZero) {
  ClosestVector const cv = cvp(Basis(IntMatrix{{2}}), {1});
  EXPECT_EQ(cv.dist_sq, 1);
  EXPECT_EQ(cv.coeffs, (IntVector{0}));
}

TEST(CvpTest, TargetOutsideSpanAddsOrthogonalPart) {
  Basis const b({{1, 0, 0}, {0, 1, 0}});
  ClosestVector const cv = cvp(b, {2, -3, 4});
  EXPECT_EQ(cv.dist_sq, 16);
  EXPECT_EQ(cv.coeffs, (IntVector{2, -3}));
}

// cvp is exact against a box scan whose bound covers every candidate: the
// closest point w has ||w|| <= 2||t||.
TEST(CvpTest, AgreesWithBoxSearch) {
  SplitMix64 rng(44);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::size_t const n = 2 + seed % 3;
    Basis const b = lll_reduce(random_uniform(n, 8, seed + 500)).basis;
    IntVector t(n);
    for (auto& e : t) e = rng.uniform(-12, 12);
    Integer const box = certified_box_bound(b, 4 * norm_sq(t));
    ClosestVector const cv = cvp(b, t);
    Integer const oracle = box_min_distance(b.rows(), t, static_cast<std::int64_t>(box));
    EXPECT_EQ(cv.dist_sq, Rational(oracle)) << "seed " << seed;
    IntVector d = b.vector_from(cv.coeffs);
    for (std::size_t j = 0; j < n; ++j) d[j] = t[j] - d[j];
    EXPECT_EQ(Rational(norm_sq(d)), cv.dist_sq);
  }
}

TEST(CvpTest, ZeroDistanceIffLatticePoint) {
  SplitMix64 rng(8);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Basis const b = random_uniform(3, 6, seed + 70);
    IntVector x(3);
    for (auto& e : x) e = rng.uniform(-5, 5);
    IntVector t = b.vector_from(x);
    EXPECT_EQ(cvp(b, t).dist_sq, 0);
    t[0] += 1;
    bool const in_lattice = [&] {
      try {
        express_in_basis(b, t);
        return true;
      } catch (Error const&) {
        return false;
      }
    }();
    EXPECT_EQ(cvp(b, t).dist_sq == 0, in_lattice);
  }
}

TEST(MinimaTest, Identity) {
  MinimaCertificate const cert = successive_minima(Basis({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(cert.lambda_sq, (IntVector{1, 1, 1}));
  for (auto const& row : cert.coeffs) {
    int nonzero = 0;
    for (auto const& e : row) {
      if (e != 0) {
        ++nonzero;
        EXPECT_EQ(abs(e), 1);
      }
    }
    EXPECT_EQ(nonzero, 1);
  }
}

TEST(MinimaTest, OrthogonalPair) {
  EXPECT_EQ(successive_minima(Basis({{1, 0}, {0, 2}})).lambda_sq, (IntVector{1, 4}));
}

TEST(MinimaTest, CertificateInvariants) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Basis const b = random_uniform(2 + seed % 5, 10, seed);
    MinimaCertificate const cert = successive_minima(b);
    EXPECT_NO_THROW(validate_certificate(b, cert));
  }
}

// For each i, no vector shorter than lambda_i is independent of v_1..v_{i-1}:
// checked by scanning the certified box.
TEST(MinimaTest, GreedyChoiceIsMinimal) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::size_t const n = 2 + seed % 3;
    Basis const b = lll_reduce(random_uniform(n, 10, seed + 300)).basis;
    MinimaCertificate const cert = successive_minima(b);
    Integer const box = certified_box_bound(b, cert.lambda_sq.back());
    for (std::size_t i = 0; i < n; ++i) {
      testing::for_each_in_box(n, static_cast<std::int64_t>(box), [&](IntVector const& x) {
        if (is_zero(x)) return;
        Integer const len = norm_sq(b.vector_from(x));
        if (len >= cert.lambda_sq[i]) return;
        IndependenceTracker t(n);
        for (std::size_t k = 0; k < i; ++k) t.try_add(cert.coeffs[k]);
        EXPECT_FALSE(t.try_add(x)) << "shorter independent vector at level " << i;
      });
    }
  }
}

TEST(MinimaTest, MatchesBruteForceAtDimFive) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Basis const b = random_uniform(5, 10, seed + 900);
    ReducedBasis const pre = lll_reduce(b);
    Integer const box = certified_box_bound(pre.basis, detail::max_row_norm_sq(pre.basis));
    EXPECT_EQ(successive_minima(b).lambda_sq, brute_force_minima(pre.basis, box).lambda_sq);
  }
}

// Property: minima do not depend on the basis chosen for the lattice.
TEST(MinimaTest, InvariantUnderUnimodularChange) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    std::size_t const n = 2 + seed % 4;
    Basis const b = random_uniform(n, 9, seed);
    Basis const c = apply_unimodular(b, testing::random_unimodular(n, seed + 1));
    EXPECT_EQ(successive_minima(b).lambda_sq, successive_minima(c).lambda_sq);
    EXPECT_EQ(svp(b).norm_sq, svp(c).norm_sq);
  }
}

TEST(BruteForceTest, Examples) {
  EXPECT_EQ(brute_force_minima(Basis({{1, 0}, {0, 1}}), 1).lambda_sq, (IntVector{1, 1}));
  // (1,-1) has squared length 2; the shortest vectors independent of it are
  // (2,1) and (1,2) with squared length 5.
  MinimaCertificate const cert = brute_force_minima(Basis({{2, 1}, {1, 2}}), 3);
  EXPECT_EQ(cert.lambda_sq, (IntVector{2, 5}));
  EXPECT_EQ(cert.vectors[0], (IntVector{1, -1}));
}

TEST(BruteForceTest, RejectsDegenerateAndHugeBoxes) {
  Basis const id({{1, 0}, {0, 1}});
  for (Integer const bound : {Integer(0), Integer(-1)}) {
    try {
      brute_force_minima(id, bound);
      FAIL();
    } catch (Error const& e) {
      EXPECT_EQ(e.code(), Errc::box_too_large);
    }
  }
  EXPECT_THROW(brute_force_minima(random_uniform(8, 5, 1), 100), Error);
}

TEST(PrefixTest, ShortestOutsidePrefix) {
  // span(b_1) = Z(1,0); vectors with nonzero b_2 coefficient in span(b_1, b_2)
  // have length at least 1, attained by +-(0,1) = +-(b_2 - b_1).
  Basis const b({{1, 0}, {1, 1}});
  ShortVector const sv = shortest_outside_prefix(b, 1);
  EXPECT_EQ(sv.norm_sq, 1);
  EXPECT_EQ(sv.coeffs, (IntVector{1, -1}));
  EXPECT_EQ(shortest_outside_prefix(b, 0).norm_sq, 1);
}

TEST(TieOrderTest, PrefersLeadingSupport) {
  EXPECT_TRUE(tie_order_less({1, 0}, {0, 1}));
  EXPECT_TRUE(tie_order_less({1, 0}, {1, -1}));
  EXPECT_TRUE(tie_order_less({0}, {1}));
  EXPECT_EQ(sign_normalized({0, -2, 1}), (IntVector{0, 2, -1}));
}

}  // namespace
}  // namespace latred
