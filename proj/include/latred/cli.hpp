#pragma once

// Command-line front end. Exit codes: 0 success, 1 a check failed,
// 2 usage or I/O error.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11/CLI11.hpp"
#include "latred/bounds.hpp"
#include "latred/enumeration.hpp"
#include "latred/harness.hpp"
#include "latred/io.hpp"
#include "latred/reduction.hpp"

namespace latred {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;

// "4..10,15,20,30" -> {4, 5, ..., 10, 15, 20, 30}
inline std::vector<int> parse_rank_list(std::string const& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  auto to_int = [&](std::string const& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (std::exception const&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || v < 1) {
      throw Error(Errc::invalid_argument, "bad rank \"" + s + "\" in \"" + text + "\"");
    }
    return v;
  };
  while (std::getline(ss, item, ',')) {
    auto const dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    int const lo = to_int(item.substr(0, dots));
    int const hi = to_int(item.substr(dots + 2));
    if (hi < lo) throw Error(Errc::invalid_argument, "empty range \"" + item + "\"");
    for (int n = lo; n <= hi; ++n) out.push_back(n);
  }
  if (out.empty()) throw Error(Errc::invalid_argument, "no ranks given");
  return out;
}

inline int cli_main(int argc, char const* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Exact lattice basis reduction: strong, HKZ and LLL reduction with bound checks",
               "latred"};
  app.require_subcommand(1);

  std::string in_path, out_path, report_path, method_name = "strong";
  std::uint64_t budget = EnumerationBudget{}.max_nodes;

  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a basis file");
  reduce_cmd->add_option("--in", in_path, "Input basis file")->required();
  reduce_cmd->add_option("--method", method_name, "strong | hkz | lll")
      ->check(CLI::IsMember({"strong", "hkz", "lll"}));
  reduce_cmd->add_option("--out", out_path, "Write the reduced basis here");
  reduce_cmd->add_option("--report", report_path, "Write the reduction report here");
  reduce_cmd->add_option("--budget", budget, "Enumeration node budget");

  bool oracle = false;
  auto* minima_cmd = app.add_subcommand("minima", "Successive minima of a basis file");
  minima_cmd->add_option("--in", in_path, "Input basis file")->required();
  minima_cmd->add_flag("--oracle", oracle, "Cross-check against a brute-force box scan");
  minima_cmd->add_option("--budget", budget, "Enumeration node budget");

  auto* check_cmd = app.add_subcommand("check", "Test whether a basis is strongly reduced");
  check_cmd->add_option("--in", in_path, "Input basis file")->required();
  check_cmd->add_option("--budget", budget, "Enumeration node budget");

  std::string ranks = "4..10,15,20,30";
  bool csv = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "Tabulate f_H(n), f_S(n) and related bounds");
  bounds_cmd->add_option("--n", ranks, "Ranks, e.g. 4..10,15,20,30");
  bounds_cmd->add_flag("--csv", csv, "Comma-separated output");

  std::string kind = "uniform", methods = "strong";
  std::size_t dim = 4, trials = 10;
  std::int64_t entry_bound = 10;
  std::uint64_t seed = 1;
  bool allow_large = false;
  auto* exp_cmd = app.add_subcommand("experiment", "Batch reduction with bound checks");
  exp_cmd->add_option("--kind", kind, "uniform | knapsack")
      ->check(CLI::IsMember({"uniform", "knapsack"}));
  exp_cmd->add_option("--dim", dim, "Lattice rank")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--bound", entry_bound, "Entry bound B")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--seed", seed, "Experiment seed");
  exp_cmd->add_option("--methods", methods, "Comma-separated subset of strong,hkz,lll");
  exp_cmd->add_option("--budget", budget, "Enumeration node budget");
  exp_cmd->add_flag("--csv", csv, "Per-trial comma-separated records");
  exp_cmd->add_flag("--allow-large", allow_large, "Permit dimensions above 12");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  EnumerationBudget const nodes{budget};
  try {
    if (*reduce_cmd) {
      Basis const basis = read_basis(in_path);
      ReductionReport const rep = reduce(basis, *parse_method(method_name), nodes);
      if (!out_path.empty()) write_basis(out_path, rep.output_basis);
      std::string const text = report_to_string(rep);
      if (!report_path.empty()) {
        write_text(report_path, text);
      } else {
        out << text;
      }
      bool const ok = rep.method != Method::strong || (rep.property1_ok && rep.property2_ok);
      return ok ? exit_ok : exit_check_failed;
    }
    if (*minima_cmd) {
      Basis const basis = read_basis(in_path);
      MinimaCertificate const cert = successive_minima(basis, nodes);
      out << certificate_to_string(cert);
      if (oracle) {
        ReducedBasis const pre = lll_reduce(basis);
        Integer const box = certified_box_bound(pre.basis, detail::max_row_norm_sq(pre.basis));
        MinimaCertificate const bf = brute_force_minima(pre.basis, box);
        bool const match = bf.lambda_sq == cert.lambda_sq;
        out << "oracle_box_bound: " << box << "\n"
            << "oracle_lambda_sq: " << join(bf.lambda_sq) << "\n"
            << "oracle_match: " << flag(match) << "\n";
        if (!match) return exit_check_failed;
      }
      return exit_ok;
    }
    if (*check_cmd) {
      Basis const basis = read_basis(in_path);
      StrongCheck const check = is_strongly_reduced(basis, nodes);
      out << "property1_ok: " << flag(check.property1_ok) << "\n"
          << "property2_ok: " << flag(check.property2_ok) << "\n"
          << certificate_to_string(check.witness);
      return (check.property1_ok && check.property2_ok) ? exit_ok : exit_check_failed;
    }
    if (*bounds_cmd) {
      auto const rows = bounds_table(parse_rank_list(ranks));
      out << (csv ? render_bounds_csv(rows) : render_bounds_text(rows));
      return exit_ok;
    }
    if (*exp_cmd) {
      ExperimentConfig config;
      config.spec = LatticeSpec{*parse_kind(kind), dim, entry_bound, seed};
      config.trials = trials;
      config.budget = nodes;
      config.allow_large = allow_large;
      config.methods.clear();
      std::stringstream ms(methods);
      std::string name;
      while (std::getline(ms, name, ',')) {
        auto const m = parse_method(name);
        if (!m || *m == Method::size) {
          err << "unknown method \"" << name << "\"\n";
          return exit_usage;
        }
        config.methods.push_back(*m);
      }
      if (config.methods.empty()) {
        err << "no methods given\n";
        return exit_usage;
      }
      if (dim > max_dim && !allow_large) {
        err << "dimension " << dim << " exceeds " << max_dim << "; pass --allow-large to run it\n";
        return exit_usage;
      }
      if (dim > warn_dim) {
        err << "warning: enumeration cost grows exponentially; dimension " << dim
            << " may take a long time\n";
      }
      ExperimentReport const rep = run_experiment(config);
      out << (csv ? experiment_to_csv(rep) : experiment_to_text(rep));
      return rep.violation_count() == 0 ? exit_ok : exit_check_failed;
    }
  } catch (Error const& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == Errc::budget_exceeded) return exit_check_failed;
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace latred
