#pragma once

// Seeded lattice generation and batch experiments that check reduced bases
// against the length and defect bounds.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "latred/bounds.hpp"
#include "latred/core.hpp"
#include "latred/enumeration.hpp"
#include "latred/io.hpp"
#include "latred/lll.hpp"
#include "latred/reduction.hpp"

namespace latred {

// SplitMix64 (Steele, Lea and Flood). Fully specified by its constants, so
// sequences are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi] by rejection; no modulo bias.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    std::uint64_t const span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    std::uint64_t const limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + r % span);
  }

 private:
  std::uint64_t state_;
};

// Generator seed for trial `trial` of an experiment seeded with `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (trial + 1)));
  return mix.next();
}

enum class LatticeKind { uniform, knapsack };

inline char const* to_string(LatticeKind k) {
  return k == LatticeKind::uniform ? "uniform" : "knapsack";
}

inline std::optional<LatticeKind> parse_kind(std::string const& s) {
  if (s == "uniform") return LatticeKind::uniform;
  if (s == "knapsack") return LatticeKind::knapsack;
  return std::nullopt;
}

struct LatticeSpec {
  LatticeKind kind = LatticeKind::uniform;
  std::size_t dim = 2;
  std::int64_t entry_bound = 10;
  std::uint64_t seed = 0;
};

inline void validate(LatticeSpec const& spec) {
  if (spec.dim < 1) throw Error(Errc::invalid_argument, "dimension must be at least 1");
  if (spec.entry_bound < 1) throw Error(Errc::invalid_argument, "entry bound must be at least 1");
}

// uniform: n x n entries in [-B, B], redrawn until nonsingular.
// knapsack: n x (n+1) rows (e_i, a_i) with a_i in [-B, B].
inline Basis generate_lattice(LatticeSpec const& spec) {
  validate(spec);
  SplitMix64 rng(spec.seed);
  std::size_t const n = spec.dim;
  std::int64_t const b = spec.entry_bound;
  if (spec.kind == LatticeKind::knapsack) {
    IntMatrix rows = identity_matrix(n);
    for (auto& row : rows) {
      row.resize(n + 1, Integer(0));
      row[n] = rng.uniform(-b, b);
    }
    return Basis(std::move(rows));
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    IntMatrix rows(n, IntVector(n));
    for (auto& row : rows) {
      for (auto& e : row) e = rng.uniform(-b, b);
    }
    if (bareiss_rank(rows) == n) return Basis(std::move(rows));
  }
  throw Error(Errc::generation_failed, "no nonsingular matrix in 1000 draws");
}

struct ExperimentConfig {
  LatticeSpec spec;
  std::size_t trials = 1;
  std::vector<Method> methods{Method::strong};
  EnumerationBudget budget{};
  // Brute-force minima comparison runs up to this rank.
  std::size_t oracle_max_dim = 5;
  bool allow_large = false;
};

inline constexpr std::size_t warn_dim = 10;
inline constexpr std::size_t max_dim = 12;

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Method method = Method::strong;
  bool budget_exceeded = false;
  Rational defect_before;
  Rational defect_after;
  std::vector<std::size_t> k_profile;
  bool property1_ok = false;
  bool property2_ok = false;
  bool theorem1_ok = false;
  bool leading_minima_ok = false;
  bool short_projection_ok = false;
  // Defect bound for the method (strong: gamma^n f_S, hkz: gamma^n f_H).
  std::optional<bool> defect_bound_ok;
  // HKZ only: first row attains lambda_1.
  std::optional<bool> first_minimum_ok;
  std::optional<bool> minima_match_oracle;
  double defect_ratio = 0.0;  // defect_after / method bound
  std::vector<std::string> violations;
};

struct MethodSummary {
  Method method;
  std::size_t runs = 0;
  std::size_t budget_exceeded = 0;
  std::size_t property_ok = 0;
  std::size_t theorem1_ok = 0;
  std::size_t leading_minima_ok = 0;
  std::size_t short_projection_ok = 0;
  std::size_t defect_bound_ok = 0;
  std::size_t first_minimum_ok = 0;
  std::size_t oracle_checked = 0;
  std::size_t oracle_ok = 0;
  std::size_t violations = 0;
  double max_defect_ratio = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRecord> records;  // sorted by (trial, method order)
  std::vector<MethodSummary> summaries;

  std::size_t violation_count() const {
    std::size_t total = 0;
    for (auto const& r : records) total += r.violations.size();
    return total;
  }
};

inline std::optional<double> method_defect_bound(Method m, int n) {
  if (m == Method::strong) return theorem2_bound(n);
  if (m == Method::hkz) return hkz_defect_bound(n);
  return std::nullopt;
}

namespace detail {

inline bool oracle_agrees(Basis const& basis, MinimaCertificate const& cert) {
  ReducedBasis const pre = lll_reduce(basis);
  Integer const radius = max_row_norm_sq(pre.basis);
  MinimaCertificate const oracle =
      brute_force_minima(pre.basis, certified_box_bound(pre.basis, radius));
  return oracle.lambda_sq == cert.lambda_sq;
}

inline TrialRecord evaluate(std::size_t trial, std::uint64_t seed, Method method,
                            ReductionReport const& rep, Basis const& input, int n) {
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = seed;
  rec.method = method;
  rec.defect_before = rep.defect_before;
  rec.defect_after = rep.defect_after;
  rec.k_profile = rep.k_profile;
  rec.property1_ok = rep.property1_ok;
  rec.property2_ok = rep.property2_ok;
  rec.theorem1_ok = rep.theorem1_ok;
  rec.leading_minima_ok = rep.leading_minima_ok;
  rec.short_projection_ok = rep.short_projection_ok;
  if (auto const bound = method_defect_bound(method, n)) {
    rec.defect_bound_ok = defect_within(rep.defect_after, *bound);
    rec.defect_ratio = rep.defect_after.convert_to<double>() / *bound;
  }
  if (method == Method::hkz) {
    rec.first_minimum_ok = norm_sq(rep.output_basis.row(0)) == rep.minima.lambda_sq[0];
  }
  auto fail = [&](bool ok, char const* what) {
    if (!ok) rec.violations.emplace_back(what);
  };
  if (rep.output_basis.rank() != input.rank() || !same_lattice(input, rep.output_basis) ||
      apply_unimodular(input, rep.transform) != rep.output_basis) {
    rec.violations.emplace_back("lattice_not_preserved");
  }
  if (method == Method::strong) {
    fail(rep.property1_ok, "property1");
    fail(rep.property2_ok, "property2");
    fail(rep.theorem1_ok, "theorem1");
    fail(rep.leading_minima_ok, "leading_minima");
    fail(rep.short_projection_ok, "short_projection");
    fail(*rec.defect_bound_ok, "theorem2");
  } else if (method == Method::hkz) {
    fail(*rec.first_minimum_ok, "hkz_first_minimum");
    fail(*rec.defect_bound_ok, "hkz_defect_bound");
  }
  return rec;
}

}  // namespace detail

// Runs every trial of `config`. Violations are recorded on the offending
// trial; budget overruns are counted separately and excluded from the flag
// counts.
inline ExperimentReport run_experiment(ExperimentConfig const& config) {
  validate(config.spec);
  if (config.trials < 1) throw Error(Errc::invalid_argument, "trials must be at least 1");
  if (config.spec.dim > max_dim && !config.allow_large) {
    throw Error(Errc::invalid_argument, "dimension above " + std::to_string(max_dim) +
                                            " needs an explicit override");
  }
  ExperimentReport report;
  report.config = config;
  int const n = static_cast<int>(config.spec.dim);
  for (std::size_t t = 0; t < config.trials; ++t) {
    LatticeSpec spec = config.spec;
    spec.seed = trial_seed(config.spec.seed, t);
    Basis const input = generate_lattice(spec);
    std::optional<bool> oracle;
    for (Method m : config.methods) {
      try {
        ReductionReport const rep = reduce(input, m, config.budget);
        TrialRecord rec = detail::evaluate(t, spec.seed, m, rep, input, n);
        if (config.spec.dim <= config.oracle_max_dim) {
          if (!oracle) oracle = detail::oracle_agrees(input, rep.minima);
          rec.minima_match_oracle = oracle;
          if (!*oracle) rec.violations.emplace_back("minima_oracle");
        }
        report.records.push_back(std::move(rec));
      } catch (Error const& e) {
        if (e.code() != Errc::budget_exceeded) throw;
        TrialRecord rec;
        rec.trial = t;
        rec.seed = spec.seed;
        rec.method = m;
        rec.budget_exceeded = true;
        report.records.push_back(std::move(rec));
      }
    }
  }
  for (Method m : config.methods) {
    MethodSummary s{m};
    for (auto const& r : report.records) {
      if (r.method != m) continue;
      if (r.budget_exceeded) {
        ++s.budget_exceeded;
        continue;
      }
      ++s.runs;
      s.property_ok += (r.property1_ok && r.property2_ok) ? 1 : 0;
      s.theorem1_ok += r.theorem1_ok ? 1 : 0;
      s.leading_minima_ok += r.leading_minima_ok ? 1 : 0;
      s.short_projection_ok += r.short_projection_ok ? 1 : 0;
      s.defect_bound_ok += r.defect_bound_ok.value_or(false) ? 1 : 0;
      s.first_minimum_ok += r.first_minimum_ok.value_or(false) ? 1 : 0;
      s.oracle_checked += r.minima_match_oracle.has_value() ? 1 : 0;
      s.oracle_ok += r.minima_match_oracle.value_or(false) ? 1 : 0;
      s.violations += r.violations.empty() ? 0 : 1;
      s.max_defect_ratio = std::max(s.max_defect_ratio, r.defect_ratio);
    }
    report.summaries.push_back(s);
  }
  return report;
}

inline std::string experiment_to_text(ExperimentReport const& rep) {
  std::ostringstream os;
  auto const& c = rep.config;
  os << "experiment kind=" << to_string(c.spec.kind) << " dim=" << c.spec.dim
     << " bound=" << c.spec.entry_bound << " trials=" << c.trials << " seed=" << c.spec.seed
     << "\n";
  char ratio[32];
  for (auto const& s : rep.summaries) {
    std::snprintf(ratio, sizeof ratio, "%.6g", s.max_defect_ratio);
    os << "[" << to_string(s.method) << "] runs=" << s.runs
       << " budget_exceeded=" << s.budget_exceeded << " strongly_reduced=" << s.property_ok
       << " theorem1_ok=" << s.theorem1_ok << " leading_minima_ok=" << s.leading_minima_ok
       << " short_projection_ok=" << s.short_projection_ok;
    bool const bounded = method_defect_bound(s.method, 1).has_value();
    if (bounded) os << " defect_bound_ok=" << s.defect_bound_ok;
    if (s.method == Method::hkz) os << " first_minimum_ok=" << s.first_minimum_ok;
    os << " oracle_ok=" << s.oracle_ok << "/" << s.oracle_checked
       << " trials_with_violations=" << s.violations;
    if (bounded) os << " max_defect_ratio=" << ratio;
    os << "\n";
  }
  for (auto const& r : rep.records) {
    for (auto const& v : r.violations) {
      os << "VIOLATION trial=" << r.trial << " seed=" << r.seed << " method=" << to_string(r.method)
         << " check=" << v << "\n";
    }
  }
  return os.str();
}

inline std::string experiment_to_csv(ExperimentReport const& rep) {
  std::ostringstream os;
  os << "trial,seed,method,status,defect_before,defect_after,k_profile,property1_ok,"
        "property2_ok,theorem1_ok,leading_minima_ok,short_projection_ok,defect_bound_ok,"
        "first_minimum_ok,minima_match_oracle,defect_ratio,violations\n";
  auto opt = [](std::optional<bool> const& b) -> char const* {
    return b ? (*b ? "1" : "0") : "-";
  };
  char ratio[32];
  for (auto const& r : rep.records) {
    os << r.trial << "," << r.seed << "," << to_string(r.method) << ",";
    if (r.budget_exceeded) {
      os << "budget_exceeded,,,,,,,,,,,,,\n";
      continue;
    }
    std::snprintf(ratio, sizeof ratio, "%.6g", r.defect_ratio);
    std::string viol;
    for (auto const& v : r.violations) viol += (viol.empty() ? "" : ";") + v;
    os << "ok," << r.defect_before.str() << "," << r.defect_after.str() << ","
       << join(r.k_profile, ";") << "," << int(r.property1_ok) << "," << int(r.property2_ok)
       << "," << int(r.theorem1_ok) << "," << int(r.leading_minima_ok) << ","
       << int(r.short_projection_ok) << "," << opt(r.defect_bound_ok) << ","
       << opt(r.first_minimum_ok) << "," << opt(r.minima_match_oracle) << "," << ratio << ","
       << viol << "\n";
  }
  return os.str();
}

}  // namespace latred
