#pragma once

// Exact integer lattices: bases, Gram-Schmidt data, orthogonality defect and
// unimodular basis changes. Everything here is exact; there is no floating
// point on any path in this header.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace latred {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

enum class Errc {
  rank_deficient,
  dimension_mismatch,
  not_unimodular,
  not_in_span,
  not_in_lattice,
  budget_exceeded,
  box_too_large,
  certificate_mismatch,
  internal_rank_error,
  invalid_profile,
  no_sign_change,
  generation_failed,
  invalid_argument,
  parse_error,
};

inline char const* to_string(Errc code) {
  switch (code) {
    case Errc::rank_deficient: return "RankDeficient";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_unimodular: return "NotUnimodular";
    case Errc::not_in_span: return "NotInSpan";
    case Errc::not_in_lattice: return "NotInLattice";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::box_too_large: return "BoxTooLarge";
    case Errc::certificate_mismatch: return "CertificateMismatch";
    case Errc::internal_rank_error: return "InternalRankError";
    case Errc::invalid_profile: return "InvalidProfile";
    case Errc::no_sign_change: return "NoSignChange";
    case Errc::generation_failed: return "GenerationFailed";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string const& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// ---------------------------------------------------------------------------
// Scalar helpers.

inline Integer floor_of(Rational const& q) {
  Integer const num = numerator(q);
  Integer const den = denominator(q);  // always positive
  Integer quot = num / den;
  if (num % den != 0 && num < 0) {
    --quot;
  }
  return quot;
}

inline Integer ceil_of(Rational const& q) { return -floor_of(-q); }

// Nearest integer, halves rounded up: round(-1/2) = 0, round(1/2) = 1.
inline Integer round_of(Rational const& q) {
  return floor_of(q + Rational(1, 2));
}

inline bool is_integral(Rational const& q) { return denominator(q) == 1; }

inline Integer gcd_of(Integer const& a, Integer const& b) {
  return boost::multiprecision::gcd(a, b);
}

// ---------------------------------------------------------------------------
// Vector and matrix helpers.

inline Integer dot(IntVector const& a, IntVector const& b) {
  if (a.size() != b.size()) {
    throw Error(Errc::dimension_mismatch, "dot product of unequal lengths");
  }
  Integer sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += a[i] * b[i];
  }
  return sum;
}

inline Integer norm_sq(IntVector const& a) { return dot(a, a); }

inline bool is_zero(IntVector const& a) {
  return std::all_of(a.begin(), a.end(), [](Integer const& x) { return x == 0; });
}

// Row vector times matrix: returns sum_i coeffs[i] * rows[i].
inline IntVector combine(IntVector const& coeffs, IntMatrix const& rows,
                         std::size_t ambient) {
  if (coeffs.size() != rows.size()) {
    throw Error(Errc::dimension_mismatch, "coefficient count differs from row count");
  }
  IntVector out(ambient, Integer(0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < ambient; ++j) {
      out[j] += coeffs[i] * rows[i][j];
    }
  }
  return out;
}

inline IntMatrix multiply(IntMatrix const& a, IntMatrix const& b) {
  std::size_t const inner = b.size();
  std::size_t const cols = inner == 0 ? 0 : b.front().size();
  IntMatrix out(a.size(), IntVector(cols, Integer(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) {
      throw Error(Errc::dimension_mismatch, "matrix product shape mismatch");
    }
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        out[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return out;
}

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix id(n, IntVector(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

// Fraction-free (Bareiss) elimination. Returns the rank; `det` receives the
// determinant when the matrix is square.
inline std::size_t bareiss_rank(IntMatrix m, Integer* det = nullptr) {
  std::size_t const rows = m.size();
  std::size_t const cols = rows == 0 ? 0 : m.front().size();
  Integer prev = 1;
  int sign = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap(m[pivot], m[rank]);
      sign = -sign;
    }
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        m[i][j] = (m[i][j] * m[rank][col] - m[i][col] * m[rank][j]) / prev;
      }
      m[i][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  if (det != nullptr) {
    *det = (rows == cols && rank == rows) ? Integer(sign) * prev : Integer(0);
    if (rows == 0) *det = 1;
  }
  return rank;
}

inline Integer determinant(IntMatrix const& m) {
  for (auto const& row : m) {
    if (row.size() != m.size()) {
      throw Error(Errc::dimension_mismatch, "determinant of a non-square matrix");
    }
  }
  Integer det;
  bareiss_rank(m, &det);
  return det;
}

// ---------------------------------------------------------------------------

// Rows b_1..b_n of an integer lattice of rank n in Z^m. Immutable after
// construction; linear independence is checked exactly on entry.
class Basis {
 public:
  explicit Basis(IntMatrix rows) : rows_(std::move(rows)) {
    if (rows_.empty()) {
      throw Error(Errc::invalid_argument, "a basis needs at least one row");
    }
    std::size_t const m = rows_.front().size();
    for (auto const& row : rows_) {
      if (row.size() != m) {
        throw Error(Errc::dimension_mismatch, "rows of unequal length");
      }
    }
    if (m < rows_.size()) {
      throw Error(Errc::rank_deficient, "more rows than ambient dimension");
    }
    if (bareiss_rank(rows_) != rows_.size()) {
      throw Error(Errc::rank_deficient, "rows are linearly dependent");
    }
  }

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t ambient_dim() const noexcept { return rows_.front().size(); }
  IntMatrix const& rows() const noexcept { return rows_; }
  IntVector const& row(std::size_t i) const { return rows_.at(i); }

  // Leading rows b_1..b_count as a basis of their own.
  Basis prefix(std::size_t count) const {
    return Basis(IntMatrix(rows_.begin(), rows_.begin() + static_cast<std::ptrdiff_t>(count)));
  }

  IntVector vector_from(IntVector const& coeffs) const {
    return combine(coeffs, rows_, ambient_dim());
  }

  friend bool operator==(Basis const&, Basis const&) = default;

 private:
  IntMatrix rows_;
};

// Integer n x n matrix with determinant +1 or -1.
class UnimodularTransform {
 public:
  explicit UnimodularTransform(IntMatrix entries) : entries_(std::move(entries)) {
    Integer const det = determinant(entries_);
    if (det != 1 && det != -1) {
      throw Error(Errc::not_unimodular, "determinant is not +1 or -1");
    }
  }

  static UnimodularTransform identity(std::size_t n) {
    return UnimodularTransform(identity_matrix(n));
  }

  std::size_t size() const noexcept { return entries_.size(); }
  IntMatrix const& entries() const noexcept { return entries_; }

  // `then` applied after `*this`: rows' = then * (this * rows).
  UnimodularTransform followed_by(UnimodularTransform const& then) const {
    return UnimodularTransform(multiply(then.entries_, entries_));
  }

  friend bool operator==(UnimodularTransform const&, UnimodularTransform const&) = default;

 private:
  IntMatrix entries_;
};

// Exact Gram-Schmidt data. mu[i][j] is defined for j < i; ortho_norms_sq[i] is
// the squared length of the i-th orthogonalized vector.
struct GsoData {
  RatMatrix mu;
  RatVector ortho_norms_sq;

  std::size_t rank() const noexcept { return ortho_norms_sq.size(); }
};

inline IntMatrix gram_matrix(IntMatrix const& rows) {
  std::size_t const n = rows.size();
  IntMatrix gram(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      gram[i][j] = dot(rows[i], rows[j]);
      gram[j][i] = gram[i][j];
    }
  }
  return gram;
}

// Works on raw rows so that callers can orthogonalize matrices that have not
// been validated; dependent rows surface as RankDeficient.
inline GsoData gram_schmidt(IntMatrix const& rows) {
  std::size_t const n = rows.size();
  IntMatrix const gram = gram_matrix(rows);
  GsoData gso;
  gso.mu.assign(n, RatVector(n, Rational(0)));
  gso.ortho_norms_sq.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rational acc(gram[i][j]);
      for (std::size_t k = 0; k < j; ++k) {
        acc -= gso.mu[j][k] * gso.mu[i][k] * gso.ortho_norms_sq[k];
      }
      gso.mu[i][j] = acc / gso.ortho_norms_sq[j];
    }
    Rational norm(gram[i][i]);
    for (std::size_t k = 0; k < i; ++k) {
      norm -= gso.mu[i][k] * gso.mu[i][k] * gso.ortho_norms_sq[k];
    }
    if (norm == 0) {
      throw Error(Errc::rank_deficient, "zero orthogonalized vector at row " + std::to_string(i + 1));
    }
    gso.ortho_norms_sq[i] = norm;
  }
  return gso;
}

inline GsoData gram_schmidt(Basis const& basis) { return gram_schmidt(basis.rows()); }

// ||sum_i x_i b_i||^2 through the orthogonal decomposition.
inline Rational vector_norm_sq(GsoData const& gso, IntVector const& coeffs) {
  std::size_t const n = gso.rank();
  if (coeffs.size() != n) {
    throw Error(Errc::dimension_mismatch, "coefficient vector has wrong length");
  }
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rational term(coeffs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coeffs[j] != 0) term += Rational(coeffs[j]) * gso.mu[j][i];
    }
    total += term * term * gso.ortho_norms_sq[i];
  }
  return total;
}

// det(B B^T), the product of the squared orthogonalized lengths.
inline Integer gram_determinant(GsoData const& gso) {
  Rational prod = 1;
  for (auto const& b : gso.ortho_norms_sq) prod *= b;
  return numerator(prod);
}

inline Rational orthogonality_defect(Basis const& basis, GsoData const& gso) {
  Rational defect = 1;
  for (std::size_t i = 0; i < basis.rank(); ++i) {
    defect *= Rational(norm_sq(basis.row(i))) / gso.ortho_norms_sq[i];
  }
  return defect;
}

inline Rational orthogonality_defect(Basis const& basis) {
  return orthogonality_defect(basis, gram_schmidt(basis));
}

inline Basis apply_unimodular(Basis const& basis, UnimodularTransform const& u) {
  if (u.size() != basis.rank()) {
    throw Error(Errc::dimension_mismatch, "transform size differs from basis rank");
  }
  return Basis(multiply(u.entries(), basis.rows()));
}

// Coordinates of `vector` along the orthogonalized rows, plus the squared
// length of the component orthogonal to the row span.
struct Projection {
  RatVector coords;
  Rational residual_sq;
};

inline Projection project_onto(Basis const& basis, GsoData const& gso,
                               IntVector const& vector) {
  if (vector.size() != basis.ambient_dim()) {
    throw Error(Errc::dimension_mismatch, "vector length differs from ambient dimension");
  }
  std::size_t const n = basis.rank();
  Projection p;
  p.coords.assign(n, Rational(0));
  Rational captured = 0;
  for (std::size_t i = 0; i < n; ++i) {
    // <t, b_i*> = <t, b_i> - sum_k mu_ik <t, b_k*>
    Rational inner(dot(vector, basis.row(i)));
    for (std::size_t k = 0; k < i; ++k) {
      inner -= gso.mu[i][k] * p.coords[k] * gso.ortho_norms_sq[k];
    }
    p.coords[i] = inner / gso.ortho_norms_sq[i];
    captured += p.coords[i] * p.coords[i] * gso.ortho_norms_sq[i];
  }
  p.residual_sq = Rational(norm_sq(vector)) - captured;
  return p;
}

inline IntVector express_in_basis(Basis const& basis, GsoData const& gso,
                                  IntVector const& vector) {
  Projection const p = project_onto(basis, gso, vector);
  if (p.residual_sq != 0) {
    throw Error(Errc::not_in_span, "vector is outside the row span");
  }
  std::size_t const n = basis.rank();
  RatVector x(n);
  for (std::size_t k = n; k-- > 0;) {
    Rational value = p.coords[k];
    for (std::size_t i = k + 1; i < n; ++i) value -= x[i] * gso.mu[i][k];
    x[k] = value;
  }
  IntVector out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_integral(x[k])) {
      throw Error(Errc::not_in_lattice, "non-integral coordinate");
    }
    out[k] = numerator(x[k]);
  }
  return out;
}

inline IntVector express_in_basis(Basis const& basis, IntVector const& vector) {
  return express_in_basis(basis, gram_schmidt(basis), vector);
}

// True when `a` and `b` generate the same lattice.
inline bool same_lattice(Basis const& a, Basis const& b) {
  if (a.rank() != b.rank() || a.ambient_dim() != b.ambient_dim()) return false;
  auto contains_all = [](Basis const& outer, Basis const& inner) {
    GsoData const gso = gram_schmidt(outer);
    try {
      for (auto const& row : inner.rows()) express_in_basis(outer, gso, row);
    } catch (Error const& e) {
      if (e.code() == Errc::not_in_span || e.code() == Errc::not_in_lattice) return false;
      throw;
    }
    return true;
  };
  return contains_all(a, b) && contains_all(b, a);
}

}  // namespace latred
