#pragma once

// Exact lattice enumeration: shortest vectors, closest vectors and complete
// successive-minima certificates, plus a brute-force box scan used as an
// independent oracle.
//
// Ties are broken the same way everywhere. A coefficient vector is first
// sign-normalized (first nonzero entry positive; skipped for closest vectors
// where the solution set is not symmetric). Vectors are then ordered
// colexicographically by absolute value (|x_n| compared first, then
// |x_{n-1}|, ...), and finally colexicographically by signed value. Vectors
// supported on the leading basis rows come first, so e_1 wins any tie it is
// part of.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "latred/core.hpp"
#include "latred/lll.hpp"

namespace latred {

struct EnumerationBudget {
  std::uint64_t max_nodes = 10'000'000;
};

struct ShortVector {
  IntVector coeffs;
  Integer norm_sq;
};

struct ClosestVector {
  IntVector coeffs;
  Rational dist_sq;
};

// lambda_sq[i] = lambda_{i+1}^2; vectors[i] = sum_j coeffs[i][j] b_j.
struct MinimaCertificate {
  IntVector lambda_sq;
  IntMatrix vectors;
  IntMatrix coeffs;

  std::size_t rank() const noexcept { return lambda_sq.size(); }
};

inline IntVector sign_normalized(IntVector x) {
  auto const first = std::find_if(x.begin(), x.end(), [](Integer const& v) { return v != 0; });
  if (first != x.end() && *first < 0) {
    for (auto& v : x) v = -v;
  }
  return x;
}

inline bool tie_order_less(IntVector const& a, IntVector const& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    Integer const aa = abs(a[i]);
    Integer const bb = abs(b[i]);
    if (aa != bb) return aa < bb;
  }
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// Tracks a growing set of linearly independent rational vectors.
class IndependenceTracker {
 public:
  explicit IndependenceTracker(std::size_t dim) : dim_(dim) {}

  // Adds `v` and returns true when it is independent of everything added so far.
  bool try_add(IntVector const& v) {
    RatVector r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) r[i] = Rational(v[i]);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Rational const f = r[pivots_[k]];
      if (f == 0) continue;
      for (std::size_t i = 0; i < dim_; ++i) r[i] -= f * rows_[k][i];
    }
    auto const it = std::find_if(r.begin(), r.end(), [](Rational const& q) { return q != 0; });
    if (it == r.end()) return false;
    std::size_t const p = static_cast<std::size_t>(it - r.begin());
    Rational const lead = r[p];
    for (auto& q : r) q /= lead;
    // Keep stored rows fully reduced against the new pivot.
    for (auto& row : rows_) {
      Rational const f = row[p];
      if (f == 0) continue;
      for (std::size_t i = 0; i < dim_; ++i) row[i] -= f * r[i];
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  std::size_t size() const noexcept { return rows_.size(); }

 private:
  std::size_t dim_;
  RatMatrix rows_;
  std::vector<std::size_t> pivots_;
};

namespace detail {

inline void check_budget(EnumerationBudget const& budget) {
  if (budget.max_nodes < 1) {
    throw Error(Errc::invalid_argument, "enumeration budget must allow at least one node");
  }
}

// Depth-first Fincke-Pohst search over levels [begin, end) of an exact GSO.
// Enumerates integer x with sum_k (x_k - c_k)^2 B_k <= radius, where
// c_k = center_k - sum_{j>k} x_j mu_{j,k}. The leaf callback may lower the
// radius; it is never raised.
//
// symmetric: only one of each pair +-x is produced (the first nonzero entry
// counted from the top level is positive) and x = 0 is skipped.
// top_nonzero: the top level coefficient must be nonzero.
class Enumerator {
 public:
  Enumerator(GsoData const& gso, std::size_t begin, std::size_t end, RatVector center,
             bool symmetric, bool top_nonzero, EnumerationBudget budget)
      : gso_(gso),
        begin_(begin),
        end_(end),
        center_(std::move(center)),
        symmetric_(symmetric),
        top_nonzero_(top_nonzero),
        budget_(budget),
        x_(gso.rank(), Integer(0)) {
    check_budget(budget_);
  }

  template <typename Leaf>
  void run(Rational& radius, Leaf&& leaf) {
    if (begin_ >= end_) return;
    descend(end_ - 1, Rational(0), true, radius, leaf);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  template <typename Leaf>
  void descend(std::size_t k, Rational const& partial, bool above_zero, Rational& radius,
               Leaf& leaf) {
    Rational c = center_[k];
    for (std::size_t j = k + 1; j < end_; ++j) {
      if (x_[j] != 0) c -= Rational(x_[j]) * gso_.mu[j][k];
    }
    bool const is_top = k + 1 == end_;
    bool const skip_zero = (is_top && top_nonzero_) || (symmetric_ && above_zero && k == begin_);
    bool has_min = symmetric_ && above_zero;
    Integer min_value = (has_min && is_top && top_nonzero_) ? Integer(1) : Integer(0);

    Integer const nearest = round_of(c);
    Integer up = nearest;
    Integer down = nearest - 1;
    if (has_min && up < min_value) up = min_value;
    bool up_alive = true;
    bool down_alive = !(has_min && down < min_value);

    auto const cost = [&](Integer const& v) {
      Rational const diff = Rational(v) - c;
      return partial + diff * diff * gso_.ortho_norms_sq[k];
    };

    while (up_alive || down_alive) {
      bool take_up;
      if (up_alive && down_alive) {
        take_up = abs(Rational(up) - c) <= abs(Rational(down) - c);
      } else {
        take_up = up_alive;
      }
      Integer const cand = take_up ? up : down;
      Rational const d = cost(cand);
      if (d > radius) {
        (take_up ? up_alive : down_alive) = false;
        continue;
      }
      if (take_up) {
        ++up;
      } else {
        --down;
        if (has_min && down < min_value) down_alive = false;
      }
      if (cand == 0 && skip_zero) continue;
      if (++nodes_ > budget_.max_nodes) {
        throw Error(Errc::budget_exceeded,
                    "enumeration exceeded " + std::to_string(budget_.max_nodes) + " nodes");
      }
      x_[k] = cand;
      if (k == begin_) {
        leaf(static_cast<IntVector const&>(x_), d);
      } else {
        descend(k - 1, d, above_zero && cand == 0, radius, leaf);
      }
    }
    x_[k] = 0;
  }

  GsoData const& gso_;
  std::size_t begin_;
  std::size_t end_;
  RatVector center_;
  bool symmetric_;
  bool top_nonzero_;
  EnumerationBudget budget_;
  IntVector x_;
  std::uint64_t nodes_ = 0;
};

// Collects every minimizer; the radius shrinks to the best value seen.
struct MinimizerCollector {
  Rational& radius;
  std::vector<IntVector> best;
  bool found = false;

  void operator()(IntVector const& x, Rational const& d) {
    if (!found || d < radius) {
      radius = d;
      best.clear();
      found = true;
    }
    if (d == radius) best.push_back(x);
  }
};

// Coefficients relative to the original rows, given coefficients relative to
// transform * rows.
inline IntVector pull_back(IntVector const& x, UnimodularTransform const& u) {
  std::size_t const n = x.size();
  IntVector out(n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) out[j] += x[i] * u.entries()[i][j];
  }
  return out;
}

inline IntVector pick_tie(std::vector<IntVector> candidates, bool normalize_sign) {
  if (normalize_sign) {
    for (auto& c : candidates) c = sign_normalized(std::move(c));
  }
  return *std::min_element(candidates.begin(), candidates.end(), tie_order_less);
}

inline Integer min_row_norm_sq(Basis const& basis) {
  Integer best = norm_sq(basis.row(0));
  for (auto const& row : basis.rows()) best = std::min(best, norm_sq(row));
  return best;
}

inline Integer max_row_norm_sq(Basis const& basis) {
  Integer best = 0;
  for (auto const& row : basis.rows()) best = std::max(best, norm_sq(row));
  return best;
}

struct Candidate {
  Integer norm;
  IntVector coeffs;
};

inline bool candidate_less(Candidate const& a, Candidate const& b) {
  if (a.norm != b.norm) return a.norm < b.norm;
  return tie_order_less(a.coeffs, b.coeffs);
}

// Greedy successive-minima selection from candidates sorted by candidate_less.
inline MinimaCertificate greedy_minima(Basis const& basis, std::vector<Candidate> const& sorted) {
  std::size_t const n = basis.rank();
  MinimaCertificate cert;
  IndependenceTracker tracker(n);
  for (auto const& cand : sorted) {
    if (tracker.try_add(cand.coeffs)) {
      cert.lambda_sq.push_back(cand.norm);
      cert.coeffs.push_back(cand.coeffs);
      cert.vectors.push_back(basis.vector_from(cand.coeffs));
      if (tracker.size() == n) break;
    }
  }
  if (cert.rank() != n) {
    throw Error(Errc::internal_rank_error, "candidate set does not span the lattice");
  }
  return cert;
}

}  // namespace detail

// Shortest nonzero lattice vector.
inline ShortVector svp(Basis const& basis, EnumerationBudget budget = {}) {
  ReducedBasis const pre = lll_reduce(basis);
  GsoData const gso = gram_schmidt(pre.basis);
  std::size_t const n = basis.rank();
  Rational radius(detail::min_row_norm_sq(pre.basis));
  detail::MinimizerCollector collect{radius, {}, false};
  detail::Enumerator(gso, 0, n, RatVector(n, Rational(0)), true, false, budget)
      .run(radius, collect);
  std::vector<IntVector> mapped;
  for (auto const& x : collect.best) mapped.push_back(detail::pull_back(x, pre.transform));
  IntVector const coeffs = detail::pick_tie(std::move(mapped), true);
  return ShortVector{coeffs, numerator(radius)};
}

// Lattice point closest to `target`. Targets outside the row span are
// handled by projecting; the orthogonal part is included in dist_sq.
inline ClosestVector cvp(Basis const& basis, IntVector const& target,
                         EnumerationBudget budget = {}) {
  ReducedBasis const pre = lll_reduce(basis);
  GsoData const gso = gram_schmidt(pre.basis);
  Projection const proj = project_onto(pre.basis, gso, target);
  std::size_t const n = basis.rank();

  // Babai's nearest plane point gives the starting radius.
  Rational radius = 0;
  {
    IntVector x(n, Integer(0));
    for (std::size_t k = n; k-- > 0;) {
      Rational c = proj.coords[k];
      for (std::size_t j = k + 1; j < n; ++j) c -= Rational(x[j]) * gso.mu[j][k];
      x[k] = round_of(c);
      Rational const diff = Rational(x[k]) - c;
      radius += diff * diff * gso.ortho_norms_sq[k];
    }
  }
  detail::MinimizerCollector collect{radius, {}, false};
  detail::Enumerator(gso, 0, n, proj.coords, false, false, budget).run(radius, collect);
  std::vector<IntVector> mapped;
  for (auto const& x : collect.best) mapped.push_back(detail::pull_back(x, pre.transform));
  return ClosestVector{detail::pick_tie(std::move(mapped), false), radius + proj.residual_sq};
}

// Greedy successive minima: enumerate every vector up to the longest LLL row
// (an upper bound for lambda_n), sort by (norm, tie order) and keep each
// vector that is independent of those already kept.
inline MinimaCertificate successive_minima(Basis const& basis, EnumerationBudget budget = {}) {
  ReducedBasis const pre = lll_reduce(basis);
  GsoData const gso = gram_schmidt(pre.basis);
  std::size_t const n = basis.rank();
  Rational radius(detail::max_row_norm_sq(pre.basis));
  std::vector<detail::Candidate> found;
  detail::Enumerator(gso, 0, n, RatVector(n, Rational(0)), true, false, budget)
      .run(radius, [&](IntVector const& x, Rational const& d) {
        found.push_back({numerator(d), sign_normalized(detail::pull_back(x, pre.transform))});
      });
  std::sort(found.begin(), found.end(), detail::candidate_less);
  return detail::greedy_minima(basis, found);
}

// Shortest vector of span_Z(b_1..b_{i+1}) whose coefficient on b_{i+1} is
// nonzero (i is zero-based). Coefficients have length i + 1.
inline ShortVector shortest_outside_prefix(Basis const& basis, std::size_t i,
                                           EnumerationBudget budget = {}) {
  if (i >= basis.rank()) throw Error(Errc::invalid_argument, "index out of range");
  IntMatrix rows;
  UnimodularTransform prefix_u = UnimodularTransform::identity(i);
  if (i > 0) {
    ReducedBasis const pre = lll_reduce(basis.prefix(i));
    rows = pre.basis.rows();
    prefix_u = pre.transform;
  }
  rows.push_back(basis.row(i));
  Basis const work(rows);
  GsoData const gso = gram_schmidt(work);
  Rational radius(norm_sq(basis.row(i)));
  detail::MinimizerCollector collect{radius, {}, false};
  detail::Enumerator(gso, 0, i + 1, RatVector(i + 1, Rational(0)), true, true, budget)
      .run(radius, collect);
  std::vector<IntVector> mapped;
  for (auto const& x : collect.best) {
    IntVector head(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
    IntVector full = i > 0 ? detail::pull_back(head, prefix_u) : IntVector{};
    full.push_back(x[i]);
    mapped.push_back(std::move(full));
  }
  return ShortVector{detail::pick_tie(std::move(mapped), true), numerator(radius)};
}

// Largest |x_i| over lattice vectors sum x_i b_i of squared length at most
// radius_sq, from |x_i| <= ||v|| * ||d_i|| with d_i the dual basis rows.
// Never less than 1.
inline Integer certified_box_bound(Basis const& basis, Integer const& radius_sq) {
  std::size_t const n = basis.rank();
  IntMatrix const gram = gram_matrix(basis.rows());
  // Gauss-Jordan on [G | I].
  RatMatrix a(n, RatVector(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(gram[i][j]);
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (a[pivot][col] == 0) ++pivot;
    std::swap(a[pivot], a[col]);
    Rational const lead = a[col][col];
    for (auto& q : a[col]) q /= lead;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational const f = a[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  Integer bound = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer const limit = floor_of(Rational(radius_sq) * a[i][n + i]);
    bound = std::max(bound, Integer(sqrt(limit)));
  }
  return bound;
}

inline constexpr std::uint64_t default_box_point_limit = 50'000'000;

// Exhaustive scan of all coefficient vectors with |x_i| <= box_bound. Uses
// direct integer dot products only; shares no code with the enumerator.
inline MinimaCertificate brute_force_minima(Basis const& basis, Integer const& box_bound,
                                            std::uint64_t max_points = default_box_point_limit) {
  if (box_bound < 1) throw Error(Errc::box_too_large, "box bound must be at least 1");
  std::size_t const n = basis.rank();
  Integer const side = 2 * box_bound + 1;
  Integer points = 1;
  for (std::size_t i = 0; i < n; ++i) points *= side;
  if (points > Integer(max_points)) {
    throw Error(Errc::box_too_large, "box has " + points.str() + " points");
  }
  // The unit vectors are inside the box, so lambda_n never exceeds the
  // longest row.
  Integer const cutoff = detail::max_row_norm_sq(basis);
  std::vector<detail::Candidate> found;
  IntVector x(n, -box_bound);
  while (true) {
    IntVector const normalized = sign_normalized(x);
    if (!is_zero(x) && normalized == x) {
      Integer const len = norm_sq(basis.vector_from(x));
      if (len <= cutoff) found.push_back({len, x});
    }
    std::size_t k = 0;
    while (k < n && x[k] == box_bound) {
      x[k] = -box_bound;
      ++k;
    }
    if (k == n) break;
    ++x[k];
  }
  std::sort(found.begin(), found.end(), detail::candidate_less);
  return detail::greedy_minima(basis, found);
}

// Checks that `cert` is internally consistent for `basis`: vectors are the
// stated combinations, lengths match, lengths are non-decreasing and the
// vectors are independent. Throws CertificateMismatch otherwise.
inline void validate_certificate(Basis const& basis, MinimaCertificate const& cert) {
  std::size_t const n = basis.rank();
  if (cert.lambda_sq.size() != n || cert.vectors.size() != n || cert.coeffs.size() != n) {
    throw Error(Errc::certificate_mismatch, "certificate rank differs from basis rank");
  }
  IndependenceTracker tracker(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (cert.coeffs[i].size() != n || basis.vector_from(cert.coeffs[i]) != cert.vectors[i]) {
      throw Error(Errc::certificate_mismatch, "vector " + std::to_string(i + 1) + " is not its stated combination");
    }
    if (norm_sq(cert.vectors[i]) != cert.lambda_sq[i]) {
      throw Error(Errc::certificate_mismatch, "length of vector " + std::to_string(i + 1) + " differs from lambda");
    }
    if (i > 0 && cert.lambda_sq[i] < cert.lambda_sq[i - 1]) {
      throw Error(Errc::certificate_mismatch, "minima are not non-decreasing");
    }
    if (!tracker.try_add(cert.coeffs[i])) {
      throw Error(Errc::certificate_mismatch, "minima vectors are dependent");
    }
  }
}

// Same minima vectors re-expressed against another basis of the same lattice.
inline MinimaCertificate rebase_certificate(MinimaCertificate const& cert, Basis const& basis) {
  MinimaCertificate out;
  out.lambda_sq = cert.lambda_sq;
  out.vectors = cert.vectors;
  GsoData const gso = gram_schmidt(basis);
  for (auto const& v : cert.vectors) {
    try {
      out.coeffs.push_back(express_in_basis(basis, gso, v));
    } catch (Error const& e) {
      throw Error(Errc::certificate_mismatch, std::string("minima vector outside lattice: ") + e.what());
    }
  }
  return out;
}

}  // namespace latred
