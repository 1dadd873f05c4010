// Command-line front end: instance generation, solving in the full-matrix
// and query models, profile verification, and benchmark CSV emission.
//
// Exit codes: 0 success (certificate within the target), 1 malformed input
// or flags, 2 guarantee breach or solver failure (a bug signal).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wsne/algorithm.hpp"
#include "wsne/enumeration.hpp"
#include "wsne/generators.hpp"
#include "wsne/io.hpp"
#include "wsne/query.hpp"
#include "wsne/random.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitBreach = 2;

json vector_json(const wsne::Vector& v) {
  json arr = json::array();
  for (wsne::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json index_list_json(const std::vector<wsne::Index>& v) {
  json arr = json::array();
  for (wsne::Index i : v) arr.push_back(i);
  return arr;
}

json profile_json(const wsne::StrategyProfile& p) {
  return {{"x", vector_json(p.row.probs)}, {"y", vector_json(p.col.probs)}};
}

json report_json(const wsne::RegretReport& r) {
  return {{"row_best", r.row_best},
          {"row_worst_support", r.row_worst_support},
          {"row_regret", r.row_regret},
          {"col_best", r.col_best},
          {"col_worst_support", r.col_worst_support},
          {"col_regret", r.col_regret},
          {"wsne_epsilon", r.wsne_epsilon},
          {"ne_epsilon", r.ne_epsilon}};
}

json diagnostics_json(const wsne::AlgorithmDiagnostics& d) {
  return {{"row_zero_sum_value", d.row_zero_sum_value},
          {"col_zero_sum_value", d.col_zero_sum_value},
          {"row_support", index_list_json(d.row_support)},
          {"col_support", index_list_json(d.col_support)},
          {"kappa", d.kappa_used},
          {"profiles_enumerated", d.profiles_enumerated},
          {"full_space_fallback", d.full_space_fallback}};
}

json stats_json(const wsne::QueryStats& s) {
  return {{"total", s.total},
          {"zero_sum_r", s.phase_zero_sum_r},
          {"zero_sum_c", s.phase_zero_sum_c},
          {"subgame", s.phase_subgame},
          {"audit", s.phase_audit}};
}

json normalization_json(const wsne::NormalizationRecord& r) {
  return {{"row_shift", r.row_shift},
          {"row_scale", r.row_scale},
          {"col_shift", r.col_shift},
          {"col_scale", r.col_scale},
          {"row_degenerate", r.row_degenerate},
          {"col_degenerate", r.col_degenerate}};
}

std::string strategy_text(const wsne::Vector& v) {
  std::string out = "[";
  for (wsne::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += wsne::format_double(v[i]);
  }
  return out + "]";
}

void require_unit_interval(double v, const char* name) {
  if (!(v > 0.0) || !(v < 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie strictly in (0, 1)");
  }
}

void warn_if_grid_huge(wsne::Index m, wsne::Index n, double delta,
                       int kappa_override) {
  if (0.5 + delta > 1.0) return;  // degenerate shortcut, no grid search
  const int k = kappa_override > 0 ? kappa_override : wsne::kappa(delta);
  const double est = static_cast<double>(wsne::k_uniform_count(m, k)) *
                     static_cast<double>(wsne::k_uniform_count(n, k));
  if (est > 1e8) {
    std::cerr << "note: grid search may enumerate ~" << est
              << " profiles; consider a larger delta or --kappa-override\n";
  }
}

struct SolveArgs {
  std::string game_path;
  double delta = 0.5;
  double tolerance = 1e-6;
  int kappa_override = 0;
  bool json_out = false;
  std::string profile_out;
};

int run_solve(const SolveArgs& a) {
  require_unit_interval(a.delta, "--delta");
  const wsne::LoadedGame loaded = wsne::load_game(a.game_path);
  warn_if_grid_huge(loaded.game.rows(), loaded.game.cols(), a.delta,
                    a.kappa_override);

  const wsne::AlgorithmOutcome outcome =
      wsne::approximate_wsne(loaded.game, a.delta, {}, a.kappa_override);
  const double target = 0.5 + a.delta;

  if (!a.profile_out.empty()) {
    wsne::save_profile(a.profile_out, outcome.profile);
  }

  if (a.json_out) {
    json doc = {{"branch", wsne::branch_name(outcome.branch)},
                {"certified_epsilon", outcome.certified_epsilon},
                {"delta", a.delta},
                {"target_epsilon", target},
                {"profile", profile_json(outcome.profile)},
                {"report", report_json(outcome.report)},
                {"diagnostics", diagnostics_json(outcome.diagnostics)},
                {"normalized", loaded.normalization.has_value()}};
    if (loaded.normalization) {
      doc["normalization"] = normalization_json(*loaded.normalization);
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    if (loaded.normalization) {
      std::cout << "note: payoffs normalized onto [0, 1] per player\n";
    }
    std::cout << "branch: " << wsne::branch_name(outcome.branch) << "\n"
              << "certified epsilon: "
              << wsne::format_double(outcome.certified_epsilon) << "\n"
              << "target epsilon: " << wsne::format_double(target) << "\n"
              << "row zero-sum value: "
              << wsne::format_double(outcome.diagnostics.row_zero_sum_value)
              << "\n"
              << "col zero-sum value: "
              << wsne::format_double(outcome.diagnostics.col_zero_sum_value)
              << "\n"
              << "x: " << strategy_text(outcome.profile.row.probs) << "\n"
              << "y: " << strategy_text(outcome.profile.col.probs) << "\n";
  }
  return outcome.certified_epsilon <= target + a.tolerance ? kExitOk
                                                           : kExitBreach;
}

struct SolveQueryArgs {
  std::string game_path;
  double epsilon = 0.2;
  double delta = 0.5;
  std::uint64_t seed = 0;
  std::string solver = "exact";
  bool audit = false;
  bool memoize = false;
  double sampling_constant = 12.0;
  double tolerance = 1e-6;
  int kappa_override = 0;
  bool json_out = false;
  std::string profile_out;
};

int run_solve_query(const SolveQueryArgs& a) {
  require_unit_interval(a.epsilon, "--epsilon");
  require_unit_interval(a.delta, "--delta");
  const wsne::LoadedGame loaded = wsne::load_game(a.game_path);

  wsne::MatrixOracle base(loaded.game);
  wsne::QueryAlgorithmOptions opts;
  opts.impl = a.solver == "mwu" ? wsne::ZeroSumQueryImpl::kSampledMwu
                                : wsne::ZeroSumQueryImpl::kExactFull;
  opts.audit = a.audit;
  opts.memoize = a.memoize;
  opts.sampling_constant = a.sampling_constant;
  opts.kappa_override = a.kappa_override;

  const wsne::QueryAlgorithmResult result =
      wsne::approximate_wsne_query(base, a.epsilon, a.delta, a.seed, opts);

  if (!a.profile_out.empty()) {
    wsne::save_profile(a.profile_out, result.outcome.profile);
  }

  if (a.json_out) {
    json doc = {{"branch", wsne::branch_name(result.outcome.branch)},
                {"certified_epsilon",
                 result.audited ? json(result.outcome.certified_epsilon)
                                : json(nullptr)},
                {"audited", result.audited},
                {"attempts", result.attempts},
                {"low_confidence", result.low_confidence},
                {"guarantee_bound", result.guarantee_bound},
                {"epsilon", a.epsilon},
                {"delta", a.delta},
                {"seed", a.seed},
                {"sampled_support_size",
                 static_cast<std::uint64_t>(result.sampled_support.size())},
                {"queries", stats_json(result.stats)},
                {"profile", profile_json(result.outcome.profile)}};
    if (result.audited) {
      doc["report"] = report_json(result.outcome.report);
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "branch: " << wsne::branch_name(result.outcome.branch) << "\n"
              << "guarantee bound: "
              << wsne::format_double(result.guarantee_bound) << "\n";
    if (result.audited) {
      std::cout << "audited epsilon: "
                << wsne::format_double(result.outcome.certified_epsilon)
                << "\n";
    }
    std::cout << "queries: total="
              << result.stats.total << " zero_sum_r="
              << result.stats.phase_zero_sum_r << " zero_sum_c="
              << result.stats.phase_zero_sum_c << " subgame="
              << result.stats.phase_subgame << " audit="
              << result.stats.phase_audit << "\n"
              << "attempts: " << result.attempts << "\n"
              << "x: " << strategy_text(result.outcome.profile.row.probs)
              << "\n"
              << "y: " << strategy_text(result.outcome.profile.col.probs)
              << "\n";
  }
  if (result.audited &&
      result.outcome.certified_epsilon > result.guarantee_bound + a.tolerance) {
    return kExitBreach;
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string game_path;
  std::string profile_path;
  double delta = -1.0;  // < 0 means "no threshold check"
  double tolerance = 1e-6;
  bool json_out = false;
};

int run_verify(const VerifyArgs& a) {
  const wsne::LoadedGame loaded = wsne::load_game(a.game_path);
  const wsne::StrategyProfile profile = wsne::load_profile(a.profile_path);
  if (profile.row.dim() != loaded.game.rows() ||
      profile.col.dim() != loaded.game.cols()) {
    throw wsne::IoError("profile dimensions do not match the game");
  }
  const wsne::RegretReport report = wsne::wsne_report(loaded.game, profile);

  if (a.json_out) {
    json doc = {{"report", report_json(report)},
                {"wsne_epsilon", report.wsne_epsilon},
                {"ne_epsilon", report.ne_epsilon}};
    if (a.delta >= 0.0) doc["target_epsilon"] = 0.5 + a.delta;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "wsne epsilon: " << wsne::format_double(report.wsne_epsilon)
              << "\n"
              << "ne epsilon: " << wsne::format_double(report.ne_epsilon)
              << "\n"
              << "row: best=" << wsne::format_double(report.row_best)
              << " worst-in-support="
              << wsne::format_double(report.row_worst_support) << "\n"
              << "col: best=" << wsne::format_double(report.col_best)
              << " worst-in-support="
              << wsne::format_double(report.col_worst_support) << "\n";
  }
  if (a.delta >= 0.0) {
    require_unit_interval(a.delta, "--delta");
    return report.wsne_epsilon <= 0.5 + a.delta + a.tolerance ? kExitOk
                                                              : kExitBreach;
  }
  return kExitOk;
}

struct BenchArgs {
  std::string kind = "uniform";
  std::vector<int> sizes;
  int count = 10;
  double delta = 0.5;
  std::uint64_t seed = 1;
  std::string csv_path;
  std::string mode = "full";
  double epsilon = 0.2;
  std::string solver = "exact";
  bool audit = false;
  double sampling_constant = 12.0;
  double tolerance = 1e-6;
};

int run_bench(const BenchArgs& a) {
  require_unit_interval(a.delta, "--delta");
  if (a.mode != "full" && a.mode != "query") {
    throw std::invalid_argument("--mode must be full or query");
  }
  if (a.mode == "query") require_unit_interval(a.epsilon, "--epsilon");
  if (a.sizes.empty()) {
    throw std::invalid_argument("--sizes must list at least one size");
  }
  for (int s : a.sizes) {
    if (s < 1) throw std::invalid_argument("--sizes entries must be positive");
  }
  if (a.count < 1) throw std::invalid_argument("--count must be positive");
  const wsne::GameKind kind = wsne::parse_game_kind(a.kind);

  std::ostringstream csv;
  csv << "instance_id,m,n,delta,epsilon,branch,certified_epsilon,wall_ms,"
         "queries_total,queries_zero_sum_r,queries_zero_sum_c,"
         "queries_subgame,queries_audit,seed\n";

  bool breach = false;
  std::uint64_t instance_id = 0;
  std::map<std::string, int> branch_counts;
  double max_certified = 0.0;

  for (int s : a.sizes) {
    for (int i = 0; i < a.count; ++i, ++instance_id) {
      const std::uint64_t inst_seed = wsne::derive_seed(a.seed, instance_id);
      const wsne::BimatrixGame game =
          wsne::generate_game(kind, s, s, inst_seed);

      std::string branch;
      std::string certified;
      std::string epsilon_cell;
      wsne::QueryStats stats;
      const auto t0 = std::chrono::steady_clock::now();
      if (a.mode == "full") {
        const wsne::AlgorithmOutcome outcome =
            wsne::approximate_wsne(game, a.delta);
        branch = wsne::branch_name(outcome.branch);
        certified = wsne::format_double(outcome.certified_epsilon);
        max_certified = std::max(max_certified, outcome.certified_epsilon);
        if (outcome.certified_epsilon > 0.5 + a.delta + a.tolerance) {
          breach = true;
        }
      } else {
        wsne::MatrixOracle base(game);
        wsne::QueryAlgorithmOptions opts;
        opts.impl = a.solver == "mwu" ? wsne::ZeroSumQueryImpl::kSampledMwu
                                      : wsne::ZeroSumQueryImpl::kExactFull;
        opts.audit = a.audit;
        opts.sampling_constant = a.sampling_constant;
        const wsne::QueryAlgorithmResult result = wsne::approximate_wsne_query(
            base, a.epsilon, a.delta, inst_seed, opts);
        branch = wsne::branch_name(result.outcome.branch);
        epsilon_cell = wsne::format_double(a.epsilon);
        stats = result.stats;
        if (result.audited) {
          certified = wsne::format_double(result.outcome.certified_epsilon);
          max_certified =
              std::max(max_certified, result.outcome.certified_epsilon);
          if (result.outcome.certified_epsilon >
              result.guarantee_bound + a.tolerance) {
            breach = true;
          }
        }
      }
      const auto t1 = std::chrono::steady_clock::now();
      const double wall_ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count();

      ++branch_counts[branch];
      csv << instance_id << ',' << s << ',' << s << ','
          << wsne::format_double(a.delta) << ',' << epsilon_cell << ','
          << branch << ',' << certified << ','
          << wsne::format_double(wall_ms) << ',' << stats.total << ','
          << stats.phase_zero_sum_r << ',' << stats.phase_zero_sum_c << ','
          << stats.phase_subgame << ',' << stats.phase_audit << ','
          << inst_seed << "\n";
    }
  }

  if (a.csv_path.empty()) {
    std::cout << csv.str();
  } else {
    wsne::write_file(a.csv_path, csv.str());
    std::cout << "instances: " << instance_id << "\n";
    for (const auto& [name, n] : branch_counts) {
      std::cout << "branch " << name << ": " << n << "\n";
    }
    std::cout << "max certified epsilon: "
              << wsne::format_double(max_certified) << "\n";
  }
  return breach ? kExitBreach : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(1/2+delta)-well-supported Nash equilibrium solver"};
  app.require_subcommand(1);

  // generate
  std::string gen_kind = "uniform";
  int gen_rows = 2, gen_cols = 2;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Generate a game instance");
  gen->add_option("--kind", gen_kind, "uniform | zero-sum | constant | force-3c");
  gen->add_option("--rows", gen_rows, "Row count")->check(CLI::PositiveNumber);
  gen->add_option("--cols", gen_cols, "Column count")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "PRNG seed");
  gen->add_option("--out", gen_out, "Output path (stdout when omitted)");

  // solve
  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve with the full-matrix algorithm");
  solve->add_option("--game", solve_args.game_path, "Game JSON path")->required();
  solve->add_option("--delta", solve_args.delta, "Approximation slack, in (0, 1)");
  solve->add_option("--tolerance", solve_args.tolerance, "Certificate comparison slack");
  solve->add_option("--kappa-override", solve_args.kappa_override,
                    "Replace kappa(delta) for the grid search");
  solve->add_flag("--json", solve_args.json_out, "Machine-readable stdout");
  solve->add_option("--profile-out", solve_args.profile_out,
                    "Write the output profile to this path");

  // solve-query
  SolveQueryArgs query_args;
  auto* squery = app.add_subcommand("solve-query", "Solve in the payoff-query model");
  squery->add_option("--game", query_args.game_path, "Game JSON path")->required();
  squery->add_option("--epsilon", query_args.epsilon, "Query-model accuracy, in (0, 1)");
  squery->add_option("--delta", query_args.delta, "Approximation slack, in (0, 1)");
  squery->add_option("--seed", query_args.seed, "PRNG seed");
  squery->add_option("--zs-solver", query_args.solver, "exact | mwu")
      ->check(CLI::IsMember({"exact", "mwu"}));
  squery->add_flag("--audit", query_args.audit,
                   "Query the full matrix afterwards and certify the true regret");
  squery->add_flag("--memoize", query_args.memoize,
                   "Serve repeated queries from cache (changes the counting model)");
  squery->add_option("--sampling-constant", query_args.sampling_constant,
                     "c_s in the sampling size ceil(c_s ln(2n+2)/eps^2)");
  squery->add_option("--tolerance", query_args.tolerance, "Certificate comparison slack");
  squery->add_option("--kappa-override", query_args.kappa_override,
                     "Replace kappa(delta) for the grid search");
  squery->add_flag("--json", query_args.json_out, "Machine-readable stdout");
  squery->add_option("--profile-out", query_args.profile_out,
                     "Write the output profile to this path");

  // verify
  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Re-certify a profile against a game");
  verify->add_option("--game", verify_args.game_path, "Game JSON path")->required();
  verify->add_option("--profile", verify_args.profile_path, "Profile JSON path")->required();
  verify->add_option("--delta", verify_args.delta,
                     "When set, exit 2 unless epsilon <= 1/2 + delta + tolerance");
  verify->add_option("--tolerance", verify_args.tolerance, "Certificate comparison slack");
  verify->add_flag("--json", verify_args.json_out, "Machine-readable stdout");

  // bench
  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run a seeded sweep and emit CSV");
  bench->add_option("--kind", bench_args.kind, "uniform | zero-sum | constant | force-3c");
  bench->add_option("--sizes", bench_args.sizes, "Comma-separated square sizes")
      ->delimiter(',')->required();
  bench->add_option("--count", bench_args.count, "Instances per size");
  bench->add_option("--delta", bench_args.delta, "Approximation slack, in (0, 1)");
  bench->add_option("--seed", bench_args.seed, "Sweep seed; instances derive from it");
  bench->add_option("--csv", bench_args.csv_path, "CSV path (stdout when omitted)");
  bench->add_option("--mode", bench_args.mode, "full | query")
      ->check(CLI::IsMember({"full", "query"}));
  bench->add_option("--epsilon", bench_args.epsilon, "Query-model accuracy (query mode)");
  bench->add_option("--zs-solver", bench_args.solver, "exact | mwu (query mode)")
      ->check(CLI::IsMember({"exact", "mwu"}));
  bench->add_flag("--audit", bench_args.audit, "Audit every query-mode run");
  bench->add_option("--sampling-constant", bench_args.sampling_constant,
                    "c_s in the sampling size formula");
  bench->add_option("--tolerance", bench_args.tolerance, "Certificate comparison slack");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (gen->parsed()) {
      const wsne::BimatrixGame game = wsne::generate_game(
          wsne::parse_game_kind(gen_kind), gen_rows, gen_cols, gen_seed);
      const std::string text = wsne::game_to_json(game);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        wsne::write_file(gen_out, text);
      }
      return kExitOk;
    }
    if (solve->parsed()) return run_solve(solve_args);
    if (squery->parsed()) return run_solve_query(query_args);
    if (verify->parsed()) return run_verify(verify_args);
    if (bench->parsed()) return run_bench(bench_args);
  } catch (const wsne::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    // Solver failure, enumeration exhaustion, query failure: bug signals.
    std::cerr << "failure: " << e.what() << "\n";
    return kExitBreach;
  }
  return kExitBadInput;
}
