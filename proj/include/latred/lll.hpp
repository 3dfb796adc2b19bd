#pragma once

#include <cstddef>
#include <utility>

#include "latred/core.hpp"

namespace latred {

struct ReducedBasis {
  Basis basis;
  UnimodularTransform transform;
};

namespace detail {

// Mutable working copy of a basis together with its accumulated transform
// and exact Gram-Schmidt data.
struct WorkingBasis {
  IntMatrix rows;
  IntMatrix transform;
  GsoData gso;

  explicit WorkingBasis(Basis const& basis)
      : rows(basis.rows()),
        transform(identity_matrix(basis.rank())),
        gso(gram_schmidt(basis)) {}

  std::size_t rank() const { return rows.size(); }

  // b_k <- b_k - q b_j for j < k, keeping mu consistent.
  void subtract_multiple(std::size_t k, std::size_t j, Integer const& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < rows[k].size(); ++c) rows[k][c] -= q * rows[j][c];
    for (std::size_t c = 0; c < transform[k].size(); ++c) transform[k][c] -= q * transform[j][c];
    Rational const qr(q);
    for (std::size_t l = 0; l < j; ++l) gso.mu[k][l] -= qr * gso.mu[j][l];
    gso.mu[k][j] -= qr;
  }

  void size_reduce_row(std::size_t k) {
    for (std::size_t j = k; j-- > 0;) {
      subtract_multiple(k, j, round_of(gso.mu[k][j]));
    }
  }

  // Exchanges rows k-1 and k with the standard exact GSO update.
  void swap_adjacent(std::size_t k) {
    std::swap(rows[k], rows[k - 1]);
    std::swap(transform[k], transform[k - 1]);
    auto& mu = gso.mu;
    auto& bn = gso.ortho_norms_sq;
    Rational const m = mu[k][k - 1];
    Rational const b_new = bn[k] + m * m * bn[k - 1];
    Rational const m_new = m * bn[k - 1] / b_new;
    bn[k] = bn[k - 1] * bn[k] / b_new;
    bn[k - 1] = b_new;
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
    for (std::size_t i = k + 1; i < rank(); ++i) {
      Rational const t = mu[i][k];
      mu[i][k] = mu[i][k - 1] - m * t;
      mu[i][k - 1] = t + m_new * mu[i][k];
    }
    mu[k][k - 1] = m_new;
  }

  ReducedBasis finish() const {
    return ReducedBasis{Basis(rows), UnimodularTransform(transform)};
  }
};

}  // namespace detail

// Makes |mu_ij| <= 1/2 for all j < i. The orthogonalized vectors are unchanged.
inline ReducedBasis size_reduce(Basis const& basis) {
  detail::WorkingBasis w(basis);
  for (std::size_t k = 1; k < w.rank(); ++k) w.size_reduce_row(k);
  return w.finish();
}

inline bool is_size_reduced(GsoData const& gso) {
  Rational const half(1, 2);
  for (std::size_t i = 0; i < gso.rank(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (abs(gso.mu[i][j]) > half) return false;
    }
  }
  return true;
}

inline bool is_lll_reduced(GsoData const& gso, Rational const& delta = Rational(3, 4)) {
  if (!is_size_reduced(gso)) return false;
  for (std::size_t k = 1; k < gso.rank(); ++k) {
    Rational const m = gso.mu[k][k - 1];
    if (gso.ortho_norms_sq[k] < (delta - m * m) * gso.ortho_norms_sq[k - 1]) return false;
  }
  return true;
}

// Exact rational LLL. delta must lie in (1/4, 1].
inline ReducedBasis lll_reduce(Basis const& basis, Rational const& delta = Rational(3, 4)) {
  if (delta <= Rational(1, 4) || delta > 1) {
    throw Error(Errc::invalid_argument, "LLL delta must lie in (1/4, 1]");
  }
  detail::WorkingBasis w(basis);
  std::size_t k = 1;
  while (k < w.rank()) {
    w.size_reduce_row(k);
    Rational const m = w.gso.mu[k][k - 1];
    if (w.gso.ortho_norms_sq[k] >= (delta - m * m) * w.gso.ortho_norms_sq[k - 1]) {
      ++k;
    } else {
      w.swap_adjacent(k);
      k = k > 1 ? k - 1 : 1;
    }
  }
  return w.finish();
}

// Unimodular matrix whose first row is the primitive vector `y`. Built from
// 2x2 Bezout blocks: column operations take y to e_1, and the inverse of
// their product has y as its first row.
inline IntMatrix primitive_completion(IntVector const& y) {
  std::size_t const n = y.size();
  if (n == 0) throw Error(Errc::invalid_argument, "empty vector");
  IntVector r = y;
  IntMatrix inv = identity_matrix(n);
  for (std::size_t q = 1; q < n; ++q) {
    Integer const a = r[0];
    Integer const b = r[q];
    if (b == 0) continue;
    // g = s a + t b
    Integer s, t;
    Integer const g = [&] {
      Integer old_r = a, cur_r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
      while (cur_r != 0) {
        Integer const quot = old_r / cur_r;
        Integer tmp = old_r - quot * cur_r;
        old_r = cur_r; cur_r = tmp;
        tmp = old_s - quot * cur_s;
        old_s = cur_s; cur_s = tmp;
        tmp = old_t - quot * cur_t;
        old_t = cur_t; cur_t = tmp;
      }
      if (old_r < 0) {
        old_r = -old_r; old_s = -old_s; old_t = -old_t;
      }
      s = old_s;
      t = old_t;
      return old_r;
    }();
    // Column block M = [[s, -b/g], [t, a/g]] sends (a, b) to (g, 0); its
    // inverse [[a/g, b/g], [-t, s]] is applied on the left of `inv`.
    Integer const ag = a / g;
    Integer const bg = b / g;
    for (std::size_t c = 0; c < n; ++c) {
      Integer const p = inv[0][c];
      Integer const qv = inv[q][c];
      inv[0][c] = ag * p + bg * qv;
      inv[q][c] = -t * p + s * qv;
    }
    r[0] = g;
    r[q] = 0;
  }
  if (r[0] == -1) {
    for (auto& x : inv[0]) x = -x;
  } else if (r[0] != 1) {
    throw Error(Errc::invalid_argument, "vector is not primitive");
  }
  return inv;
}

}  // namespace latred
