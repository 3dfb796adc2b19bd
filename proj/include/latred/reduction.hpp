#pragma once

// Strong reduction and its verifier, with HKZ reduction as a baseline.
//
// A basis b_1..b_n is strongly reduced when
//   (1) some system of successive-minima vectors v_1..v_n has triangular
//       support: v_i = sum_{j<=i} x_j b_j with x_i != 0, and
//   (2) every b_i is a shortest element of b_i + span_Z(b_1..b_{i-1}).
//
// Row indices in this header are zero-based.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latred/bounds.hpp"
#include "latred/core.hpp"
#include "latred/enumeration.hpp"
#include "latred/lll.hpp"

namespace latred {

enum class Method { strong, hkz, lll, size };

inline char const* to_string(Method m) {
  switch (m) {
    case Method::strong: return "strong";
    case Method::hkz: return "hkz";
    case Method::lll: return "lll";
    case Method::size: return "size";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string const& name) {
  if (name == "strong") return Method::strong;
  if (name == "hkz") return Method::hkz;
  if (name == "lll") return Method::lll;
  if (name == "size") return Method::size;
  return std::nullopt;
}

namespace detail {

// Replaces rows [first, n) of `rows` (and of the transform) by block * rows.
inline void apply_trailing_block(IntMatrix& rows, IntMatrix& transform, std::size_t first,
                                 IntMatrix const& block) {
  auto mix = [&](IntMatrix& m) {
    IntMatrix tail(m.begin() + static_cast<std::ptrdiff_t>(first), m.end());
    IntMatrix const mixed = multiply(block, tail);
    std::copy(mixed.begin(), mixed.end(), m.begin() + static_cast<std::ptrdiff_t>(first));
  };
  mix(rows);
  mix(transform);
}

}  // namespace detail

// Makes row i a shortest element of its coset modulo the lattice spanned by
// the rows before it. The incumbent is kept whenever it already attains the
// minimum.
inline ReducedBasis coset_reduce(Basis const& basis, std::size_t i, EnumerationBudget budget = {}) {
  std::size_t const n = basis.rank();
  if (i >= n) throw Error(Errc::invalid_argument, "row index out of range");
  if (i == 0) return ReducedBasis{basis, UnimodularTransform::identity(n)};
  ClosestVector const closest = cvp(basis.prefix(i), basis.row(i), budget);
  if (closest.dist_sq == Rational(norm_sq(basis.row(i)))) {
    return ReducedBasis{basis, UnimodularTransform::identity(n)};
  }
  IntMatrix rows = basis.rows();
  IntMatrix u = identity_matrix(n);
  for (std::size_t j = 0; j < i; ++j) {
    u[i][j] = -closest.coeffs[j];
    for (std::size_t c = 0; c < basis.ambient_dim(); ++c) {
      rows[i][c] -= closest.coeffs[j] * basis.row(j)[c];
    }
  }
  return ReducedBasis{Basis(std::move(rows)), UnimodularTransform(std::move(u))};
}

// Rewrites the basis so that the minima vectors of `cert` have triangular
// support. Step i re-expresses v_i, takes its trailing coefficients
// x_i..x_n with gcd g, and replaces b_i..b_n by U * (b_i..b_n) where U is a
// unimodular completion of (x_i..x_n)/g. Afterwards v_i = sum_{j<i} c_j b_j
// + g b_i. Rows before i are never touched.
inline ReducedBasis property1_transform(Basis const& basis, MinimaCertificate const& cert,
                                        EnumerationBudget /*budget*/ = {}) {
  std::size_t const n = basis.rank();
  if (cert.rank() != n || cert.vectors.size() != n) {
    throw Error(Errc::certificate_mismatch, "certificate rank differs from basis rank");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (norm_sq(cert.vectors[i]) != cert.lambda_sq[i]) {
      throw Error(Errc::certificate_mismatch,
                  "length of v_" + std::to_string(i + 1) + " differs from lambda_" +
                      std::to_string(i + 1));
    }
  }
  IntMatrix rows = basis.rows();
  IntMatrix u = identity_matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    Basis const current(rows);
    IntVector x;
    try {
      x = express_in_basis(current, cert.vectors[i]);
    } catch (Error const& e) {
      throw Error(Errc::certificate_mismatch, e.what());
    }
    IntVector trailing(x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
    Integer g = 0;
    for (auto const& t : trailing) g = gcd_of(g, t);
    // v_1..v_{i-1} are independent and lie in span(b_1..b_{i-1}), which has
    // rank i-1, so v_i cannot lie there too.
    if (g == 0) {
      throw Error(Errc::internal_rank_error,
                  "v_" + std::to_string(i + 1) + " lies in the span of the preceding rows");
    }
    for (auto& t : trailing) t /= g;
    detail::apply_trailing_block(rows, u, i, primitive_completion(trailing));
  }
  return ReducedBasis{Basis(std::move(rows)), UnimodularTransform(std::move(u))};
}

// Number of j < i with ||b_j||^2 > lambda_j^2, for every i.
inline std::vector<std::size_t> k_profile(Basis const& basis, MinimaCertificate const& cert) {
  std::size_t const n = basis.rank();
  if (cert.rank() != n) {
    throw Error(Errc::certificate_mismatch, "certificate rank differs from basis rank");
  }
  rebase_certificate(cert, basis);  // throws when a vector is outside the lattice
  for (std::size_t i = 0; i < n; ++i) {
    if (norm_sq(cert.vectors[i]) != cert.lambda_sq[i]) {
      throw Error(Errc::certificate_mismatch, "vector length differs from lambda");
    }
  }
  std::vector<std::size_t> k(n, 0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = count;
    if (norm_sq(basis.row(i)) > cert.lambda_sq[i]) ++count;
  }
  return k;
}

struct StrongCheck {
  bool property1_ok = false;
  bool property2_ok = false;
  MinimaCertificate witness;
};

// Property 1 holds for some minima system exactly when, for each i, the
// shortest vector of span_Z(b_1..b_i) with nonzero b_i coefficient has length
// lambda_i: those vectors are then a triangular minima system, which is
// returned as the witness. Property 2 is checked row by row with cvp.
inline StrongCheck is_strongly_reduced(Basis const& basis, MinimaCertificate const& minima,
                                       EnumerationBudget budget = {}) {
  std::size_t const n = basis.rank();
  StrongCheck check;
  check.property1_ok = true;
  MinimaCertificate triangular;
  for (std::size_t i = 0; i < n; ++i) {
    ShortVector const sv = shortest_outside_prefix(basis, i, budget);
    if (sv.norm_sq != minima.lambda_sq[i]) {
      check.property1_ok = false;
      break;
    }
    IntVector coeffs = sv.coeffs;
    coeffs.resize(n, Integer(0));
    triangular.lambda_sq.push_back(sv.norm_sq);
    triangular.vectors.push_back(basis.vector_from(coeffs));
    triangular.coeffs.push_back(std::move(coeffs));
  }
  check.witness = check.property1_ok ? std::move(triangular) : rebase_certificate(minima, basis);

  check.property2_ok = true;
  for (std::size_t i = 1; i < n && check.property2_ok; ++i) {
    ClosestVector const closest = cvp(basis.prefix(i), basis.row(i), budget);
    check.property2_ok = closest.dist_sq == Rational(norm_sq(basis.row(i)));
  }
  return check;
}

inline StrongCheck is_strongly_reduced(Basis const& basis, EnumerationBudget budget = {}) {
  return is_strongly_reduced(basis, successive_minima(basis, budget), budget);
}

// HKZ reduction: for each i, b_i(i) is a shortest nonzero vector of the
// lattice projected orthogonally to b_1..b_{i-1}; finished by size reduction.
inline ReducedBasis hkz_reduce(Basis const& basis, EnumerationBudget budget = {}) {
  std::size_t const n = basis.rank();
  ReducedBasis const pre = lll_reduce(basis);
  IntMatrix rows = pre.basis.rows();
  IntMatrix u = identity_matrix(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    GsoData const gso = gram_schmidt(rows);
    Rational radius = gso.ortho_norms_sq[i];
    detail::MinimizerCollector collect{radius, {}, false};
    detail::Enumerator(gso, i, n, RatVector(n, Rational(0)), true, false, budget)
        .run(radius, collect);
    std::vector<IntVector> blocks;
    for (auto const& x : collect.best) {
      blocks.emplace_back(x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
    }
    IntVector const y = detail::pick_tie(std::move(blocks), true);
    // A shortest projected vector has coprime coefficients.
    detail::apply_trailing_block(rows, u, i, primitive_completion(y));
  }
  UnimodularTransform const hkz_u(std::move(u));
  ReducedBasis const sized = size_reduce(Basis(std::move(rows)));
  return ReducedBasis{sized.basis,
                      pre.transform.followed_by(hkz_u).followed_by(sized.transform)};
}

// b_i(i) is a shortest vector of the projected lattice at every level.
inline bool is_hkz_reduced(Basis const& basis, EnumerationBudget budget = {}) {
  std::size_t const n = basis.rank();
  GsoData const gso = gram_schmidt(basis);
  if (!is_size_reduced(gso)) return false;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Rational radius = gso.ortho_norms_sq[i];
    detail::MinimizerCollector collect{radius, {}, false};
    detail::Enumerator(gso, i, n, RatVector(n, Rational(0)), true, false, budget)
        .run(radius, collect);
    if (radius < gso.ortho_norms_sq[i]) return false;
  }
  return true;
}

// ||b_i||^2 <= max{1, (i-k_i)/4 + k_i/16} lambda_i^2 for every i.
inline bool theorem1_holds(Basis const& basis, MinimaCertificate const& cert,
                           std::vector<std::size_t> const& k) {
  for (std::size_t i = 0; i < basis.rank(); ++i) {
    Rational const bound = theorem1_bound(i + 1, k[i]) * Rational(cert.lambda_sq[i]);
    if (Rational(norm_sq(basis.row(i))) > bound) return false;
  }
  return true;
}

// ||b_i|| = lambda_i for the first min(n, 4) rows.
inline bool leading_rows_attain_minima(Basis const& basis, MinimaCertificate const& cert) {
  for (std::size_t i = 0; i < basis.rank() && i < 4; ++i) {
    if (norm_sq(basis.row(i)) != cert.lambda_sq[i]) return false;
  }
  return true;
}

// Every row longer than its minimum has ||b_i(i)||^2 <= lambda_i^2 / 4.
inline bool short_projection_holds(Basis const& basis, GsoData const& gso,
                                   MinimaCertificate const& cert) {
  for (std::size_t i = 0; i < basis.rank(); ++i) {
    if (norm_sq(basis.row(i)) > cert.lambda_sq[i] &&
        gso.ortho_norms_sq[i] > Rational(cert.lambda_sq[i]) / 4) {
      return false;
    }
  }
  return true;
}

struct ReductionReport {
  Method method;
  Basis input_basis;
  Basis output_basis;
  UnimodularTransform transform;
  Rational defect_before;
  Rational defect_after;
  std::vector<std::size_t> k_profile;
  bool property1_ok;
  bool property2_ok;
  bool theorem1_ok;
  bool leading_minima_ok;
  bool short_projection_ok;
  MinimaCertificate minima;  // relative to output_basis
};

// Assembles the report for a finished reduction. `minima` may certify either
// basis; it is re-expressed against the output.
inline ReductionReport make_report(Method method, Basis const& input, ReducedBasis const& result,
                                   MinimaCertificate const& minima,
                                   EnumerationBudget budget = {}) {
  Basis const& out = result.basis;
  MinimaCertificate cert = rebase_certificate(minima, out);
  GsoData const gso = gram_schmidt(out);
  std::vector<std::size_t> k = k_profile(out, cert);
  StrongCheck const check = is_strongly_reduced(out, cert, budget);
  return ReductionReport{method,
                         input,
                         out,
                         result.transform,
                         orthogonality_defect(input),
                         orthogonality_defect(out, gso),
                         k,
                         check.property1_ok,
                         check.property2_ok,
                         theorem1_holds(out, cert, k),
                         leading_rows_attain_minima(out, cert),
                         short_projection_holds(out, gso, cert),
                         std::move(cert)};
}

// LLL preprocessing, successive minima, triangularization of the minima
// support, then one ascending pass of coset reduction.
inline ReductionReport strong_reduce(Basis const& basis, EnumerationBudget budget = {}) {
  ReducedBasis const pre = lll_reduce(basis);
  MinimaCertificate const minima = successive_minima(pre.basis, budget);
  ReducedBasis const tri = property1_transform(pre.basis, minima, budget);
  Basis current = tri.basis;
  UnimodularTransform total = pre.transform.followed_by(tri.transform);
  for (std::size_t i = 1; i < current.rank(); ++i) {
    ReducedBasis step = coset_reduce(current, i, budget);
    total = total.followed_by(step.transform);
    current = std::move(step.basis);
  }
  return make_report(Method::strong, basis, ReducedBasis{current, total}, minima, budget);
}

// Runs `method` on `basis` and reports on the result.
inline ReductionReport reduce(Basis const& basis, Method method, EnumerationBudget budget = {}) {
  switch (method) {
    case Method::strong:
      return strong_reduce(basis, budget);
    case Method::hkz: {
      ReducedBasis const r = hkz_reduce(basis, budget);
      return make_report(method, basis, r, successive_minima(r.basis, budget), budget);
    }
    case Method::lll: {
      ReducedBasis const r = lll_reduce(basis);
      return make_report(method, basis, r, successive_minima(r.basis, budget), budget);
    }
    case Method::size: {
      ReducedBasis const r = size_reduce(basis);
      return make_report(method, basis, r, successive_minima(r.basis, budget), budget);
    }
  }
  throw Error(Errc::invalid_argument, "unknown method");
}

}  // namespace latred
