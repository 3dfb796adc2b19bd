#include "latred/bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

namespace latred {
namespace {

// Independent floating-point evaluation of f(n, k).
double f_direct(int n, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= (n - k + 1) / 4.0 + i / 16.0;
  return p;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

TEST(Theorem1BoundTest, Examples) {
  EXPECT_EQ(theorem1_bound(1, 0), 1);
  EXPECT_EQ(theorem1_bound(4, 0), 1);
  EXPECT_EQ(theorem1_bound(5, 0), Rational(5, 4));
  EXPECT_EQ(theorem1_bound(10, 6), Rational(11, 8));
  EXPECT_EQ(theorem1_bound(5, 1), Rational(17, 16));
}

TEST(Theorem1BoundTest, RejectsInvalidProfile) {
  try {
    theorem1_bound(3, 3);
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.code(), Errc::invalid_profile);
  }
  EXPECT_THROW(theorem1_bound(0, 0), Error);
}

TEST(DefectFactorTest, HkzValues) {
  EXPECT_DOUBLE_EQ(f_hkz(1), 1.0);
  EXPECT_DOUBLE_EQ(f_hkz(4), 105.0 / 32.0);
  EXPECT_DOUBLE_EQ(f_hkz(5), 6.5625);
}

TEST(DefectFactorTest, StrongSmallRanks) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(f_strong(n).value, 1.0);
    EXPECT_EQ(f_strong(n).k_star, 0);
  }
  EXPECT_DOUBLE_EQ(f_strong(5).value, 1.25);
  EXPECT_EQ(f_strong(5).k_star, 1);
}

TEST(DefectFactorTest, StrongIsArgmaxOfDirectProduct) {
  for (int n = 5; n <= 40; ++n) {
    StrongFactor const fs = f_strong(n);
    double best = 1.0;
    for (int k = 0; k <= n - 4; ++k) best = std::max(best, f_direct(n, k));
    EXPECT_LT(rel_err(fs.value, best), 1e-12) << n;
    EXPECT_LT(rel_err(f_direct(n, fs.k_star), best), 1e-12) << n;
  }
}

TEST(DefectFactorTest, KnownArgmax) {
  int const ns[] = {4, 5, 6, 7, 8, 9, 10, 15, 20, 30};
  int const ks[] = {0, 1, 2, 2, 3, 4, 4, 8, 12, 19};
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(f_strong(ns[i]).k_star, ks[i]) << ns[i];
}

// Reference values for n = 4..10, 15, 20, 30, rounded to
// three decimals or four significant digits, hence the relative tolerance.
TEST(DefectFactorTest, MatchesReferenceTable) {
  struct Row {
    int n;
    double f_h, f_s;
  };
  Row const rows[] = {{4, 3.281, 1.0},         {5, 6.563, 1.25},         {6, 14.766, 1.641},
                      {7, 36.914, 2.344},      {8, 101.514, 3.809},      {9, 304.541, 6.427},
                      {10, 989.758, 11.523},   {15, 993779.193, 577.568}, {20, 3.919e9, 88919.111},
                      {30, 1.255e18, 2.786e10}};
  for (Row const& r : rows) {
    EXPECT_LT(rel_err(f_hkz(r.n), r.f_h), 5e-4) << r.n;
    EXPECT_LT(rel_err(f_strong(r.n).value, r.f_s), 5e-4) << r.n;
  }
}

TEST(BetaTest, Values) {
  EXPECT_NEAR(beta_root(4), 4.0, 1e-6);
  EXPECT_NEAR(beta_root(10), 6.074, 1e-3);
  EXPECT_NEAR(beta_root(30), 11.122, 1e-3);
  EXPECT_NEAR(beta_polynomial(beta_root(17), 17), 0.0, 1e-3);
  EXPECT_THROW(beta_root(3), Error);
}

TEST(BetaTest, TracksArgmax) {
  for (int n = 5; n <= 30; ++n) {
    EXPECT_LE(std::abs(n - f_strong(n).k_star - beta_root(n)), 1.0) << n;
  }
}

// p(0) < 0 and p is positive far out on both sides, so it has one positive
// and one negative real root on this range.
TEST(BetaTest, QuarticChangesSignOnBothSides) {
  for (int n = 4; n <= 60; ++n) {
    EXPECT_LT(beta_polynomial(0.0, n), 0.0) << n;
    EXPECT_GT(beta_polynomial(-4.0 * n, n), 0.0) << n;
    EXPECT_GT(beta_polynomial(4.0 * n, n), 0.0) << n;
  }
}

TEST(BetaTest, ArgmaxIsFloorOrCeiling) {
  for (int n = 5; n <= 30; ++n) {
    double const b = beta_root(n);
    int const sigma = n - f_strong(n).k_star;
    EXPECT_TRUE(sigma == static_cast<int>(std::floor(b)) || sigma == static_cast<int>(std::ceil(b)))
        << n;
  }
}

TEST(HermiteTest, Values) {
  EXPECT_DOUBLE_EQ(hermite_upper(2), 1.45);
  EXPECT_DOUBLE_EQ(hermite_upper(8), 2.2);
  EXPECT_DOUBLE_EQ(hermite_upper(24), 4.2);
  EXPECT_NEAR(theorem2_bound(1), 1.325, 1e-12);
}

// Property: k -> f(n, k) rises then falls on 0..n-4.
TEST(BoundsPropertyTest, Unimodal) {
  for (int n = 4; n <= 60; ++n) {
    bool falling = false;
    for (int k = 1; k <= n - 4; ++k) {
      Rational const prev = strong_product(n, k - 1);
      Rational const cur = strong_product(n, k);
      if (cur < prev) falling = true;
      if (falling) {
        EXPECT_LE(cur, prev) << "n=" << n << " k=" << k;
      }
    }
  }
}

TEST(BoundsPropertyTest, HkzFactorDominates) {
  for (int n = 1; n <= 30; ++n) EXPECT_GE(f_hkz(n), f_strong(n).value) << n;
}

TEST(DefectWithinTest, Boundaries) {
  EXPECT_TRUE(defect_within(Rational(5, 4), 1.25));
  EXPECT_FALSE(defect_within(Rational(5, 4) + Rational(1, 1000), 1.25));
  EXPECT_TRUE(defect_within(Rational(1), 1.0));
}

TEST(RenderTest, TextAndCsv) {
  auto const rows = bounds_table({4, 15});
  std::string const text = render_bounds_text(rows);
  EXPECT_NE(text.find("3.281"), std::string::npos);
  EXPECT_NE(text.find("993779.194"), std::string::npos);
  EXPECT_NE(render_bounds_text(bounds_table({20})).find("3.919e+09"), std::string::npos);
  std::string const csv = render_bounds_csv(bounds_table({3}));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,f_H,f_S,k_star,beta_n,gamma_upper,theorem2_bound");
  EXPECT_EQ(format_bound(6.5625), "6.562");
  EXPECT_THROW(bounds_table({0}), Error);
}

}  // namespace
}  // namespace latred
