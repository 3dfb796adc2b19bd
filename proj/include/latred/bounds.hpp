#pragma once

// Quality bounds for strongly reduced and HKZ-reduced bases: the per-index
// length factor, the defect products f_H(n) and f_S(n), the quartic root
// beta_n, and the comparison table.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "latred/core.hpp"

namespace latred {

// max{1, (i - k)/4 + k/16} for the 1-based index i and 0 <= k <= i - 1.
inline Rational theorem1_bound(std::size_t i, std::size_t k) {
  if (i < 1 || k > i - 1) {
    throw Error(Errc::invalid_profile,
                "k = " + std::to_string(k) + " is outside [0, " + std::to_string(i) + " - 1]");
  }
  Rational const factor = Rational(Integer(i - k), Integer(4)) + Rational(Integer(k), Integer(16));
  return factor > 1 ? factor : Rational(1);
}

inline double f_hkz(int n) {
  double product = 1.0;
  for (int i = 1; i <= n; ++i) product *= (i + 3) / 4.0;
  return product;
}

// f(n, k) = prod_{i=0}^{k-1} ((n - k + 1)/4 + i/16), exactly.
inline Rational strong_product(int n, int k) {
  Rational product = 1;
  for (int i = 0; i < k; ++i) {
    product *= Rational(Integer(n - k + 1), Integer(4)) + Rational(Integer(i), Integer(16));
  }
  return product;
}

struct StrongFactor {
  double value;
  int k_star;
};

// Maximum of f(n, k) over 0 <= k <= max(0, n - 4); k_star is the smallest
// maximizer. The first four basis vectors always attain their minima, which
// is where the cap comes from.
inline StrongFactor f_strong(int n) {
  int const k_max = n > 4 ? n - 4 : 0;
  Rational best = strong_product(n, 0);
  int arg = 0;
  for (int k = 1; k <= k_max; ++k) {
    Rational const v = strong_product(n, k);
    if (v > best) {
      best = v;
      arg = k;
    }
  }
  return StrongFactor{best.convert_to<double>(), arg};
}

// 4s(4s+1)(4s+2)(4s+3) - 16(n+3s+1)(n+3s+2)(n+3s+3) with s = n - k.
inline double beta_polynomial(double sigma, int n) {
  double const s4 = 4.0 * sigma;
  double const t = n + 3.0 * sigma;
  return s4 * (s4 + 1) * (s4 + 2) * (s4 + 3) - 16.0 * (t + 1) * (t + 2) * (t + 3);
}

// Positive root of beta_polynomial by bisection to 1e-9.
inline double beta_root(int n) {
  if (n < 4) throw Error(Errc::invalid_argument, "beta_n is defined for n >= 4");
  double lo = 0.0;
  double hi = 4.0 * n;
  if (!(beta_polynomial(lo, n) < 0.0)) {
    throw Error(Errc::no_sign_change, "polynomial is not negative at 0");
  }
  for (int expand = 0; beta_polynomial(hi, n) <= 0.0; ++expand) {
    if (expand == 64) throw Error(Errc::no_sign_change, "no positive value found");
    hi *= 2.0;
  }
  while (hi - lo > 1e-9) {
    double const mid = 0.5 * (lo + hi);
    (beta_polynomial(mid, n) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Linear upper bound on the Hermite constant gamma_n.
inline double hermite_upper(int n) { return n / 8.0 + 6.0 / 5.0; }

inline double theorem2_bound(int n) {
  return std::pow(hermite_upper(n), n) * f_strong(n).value;
}

inline double hkz_defect_bound(int n) { return std::pow(hermite_upper(n), n) * f_hkz(n); }

// Exact comparison of a defect against a floating-point bound, with the bound
// widened by a relative 1e-12 to absorb rounding in its evaluation.
inline bool defect_within(Rational const& defect, double bound) {
  double const widened = bound * (1.0 + 1e-12);
  return defect <= Rational(widened);
}

struct BoundRow {
  int n;
  double f_h;
  double f_s;
  int k_star;
  double beta_n;  // NaN for n < 4
  double gamma_upper;
  double theorem2;
};

inline std::vector<BoundRow> bounds_table(std::vector<int> const& ns) {
  std::vector<BoundRow> rows;
  rows.reserve(ns.size());
  for (int n : ns) {
    if (n < 1) throw Error(Errc::invalid_argument, "rank must be positive");
    StrongFactor const fs = f_strong(n);
    rows.push_back(BoundRow{n, f_hkz(n), fs.value, fs.k_star,
                            n >= 4 ? beta_root(n) : std::numeric_limits<double>::quiet_NaN(),
                            hermite_upper(n), theorem2_bound(n)});
  }
  return rows;
}

// Three decimals, or four significant digits in scientific notation from 1e6.
inline std::string format_bound(double value) {
  char buf[64];
  if (std::isnan(value)) return "-";
  if (std::fabs(value) >= 1e6) {
    std::snprintf(buf, sizeof buf, "%.3e", value);
  } else {
    std::snprintf(buf, sizeof buf, "%.3f", value);
  }
  return buf;
}

inline std::string render_bounds_text(std::vector<BoundRow> const& rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%4s  %14s  %14s  %6s  %10s  %8s  %14s\n", "n", "f_H(n)",
                "f_S(n)", "k_star", "beta_n", "gamma_up", "thm2_bound");
  out += buf;
  for (auto const& r : rows) {
    std::snprintf(buf, sizeof buf, "%4d  %14s  %14s  %6d  %10s  %8.3f  %14s\n", r.n,
                  format_bound(r.f_h).c_str(), format_bound(r.f_s).c_str(), r.k_star,
                  std::isnan(r.beta_n) ? "-" : format_bound(r.beta_n).c_str(), r.gamma_upper,
                  format_bound(r.theorem2).c_str());
    out += buf;
  }
  return out;
}

inline std::string render_bounds_csv(std::vector<BoundRow> const& rows) {
  std::string out = "n,f_H,f_S,k_star,beta_n,gamma_upper,theorem2_bound\n";
  char buf[256];
  for (auto const& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g,%d,%.10g,%.10g,%.10g\n", r.n, r.f_h, r.f_s,
                  r.k_star, r.beta_n, r.gamma_upper, r.theorem2);
    out += buf;
  }
  return out;
}

}  // namespace latred
