// Acceptance gate: one line per criterion, exit code = number of failures.
//
// Every check here recomputes its expected values through the independent
// verification oracles (wsne_report, support enumeration, grid minimization)
// rather than trusting solver-side bookkeeping.

#include "wsne/algorithm.hpp"
#include "wsne/enumeration.hpp"
#include "wsne/game.hpp"
#include "wsne/generators.hpp"
#include "wsne/io.hpp"
#include "wsne/lp.hpp"
#include "wsne/oracle.hpp"
#include "wsne/query.hpp"
#include "wsne/random.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace wsne;

namespace {

int failures = 0;

void line(int criterion, bool pass, const std::string& msg) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion
            << ": " << msg << "\n";
  if (!pass) ++failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) { return format_double(v); }

bool branch_is_c(Branch b) { return b == Branch::k3c || b == Branch::k4c; }
bool branch_is_ab(Branch b) {
  return b == Branch::k3a || b == Branch::k3b || b == Branch::k4a ||
         b == Branch::k4b;
}

// --- criteria 1, 2 (first half), 4: one shared sweep ---------------------

struct SweepStats {
  int total = 0;
  int le_one = 0;
  int le_half = 0;
  int ab_total = 0;
  int ab_le_half = 0;
  int c_total = 0;
  double max_cert = 0.0;
  double max_cert_ab = 0.0;
  int zs_solves = 0;
  int zs_cert_ok = 0;
  int b_instances = 0;
  int b_ok = 0;
  double elapsed = 0.0;
};

bool zero_sum_certificate_ok(const Matrix& g, const ZeroSumSolution& sol) {
  const double guarantee = (g.transpose() * sol.x.probs).minCoeff();
  const double cap = (g * sol.y.probs).maxCoeff();
  return guarantee >= sol.value - 1e-6 && cap <= sol.value + 1e-6;
}

SweepStats run_sweep() {
  SweepStats s;
  const auto t0 = std::chrono::steady_clock::now();
  for (int size = 2; size <= 10; ++size) {
    for (int i = 0; i < 500; ++i) {
      const BimatrixGame game = generate_game(GameKind::kUniform, size, size,
                                              derive_seed(1000 + size, i));
      const AlgorithmOutcome out = approximate_wsne(game, 0.5);
      ++s.total;
      if (out.certified_epsilon <= 1.0 + 1e-6) ++s.le_one;
      if (out.certified_epsilon <= 0.5 + 1e-6) ++s.le_half;
      s.max_cert = std::max(s.max_cert, out.certified_epsilon);
      if (branch_is_ab(out.branch)) {
        ++s.ab_total;
        if (out.certified_epsilon <= 0.5 + 1e-6) ++s.ab_le_half;
        s.max_cert_ab = std::max(s.max_cert_ab, out.certified_epsilon);
      } else if (branch_is_c(out.branch)) {
        ++s.c_total;
      }

      // Criterion 2, first half: both zero-sum solves behind the run.
      const ZeroSumSolution zr = solve_zero_sum(game.R());
      const ZeroSumSolution zc =
          solve_zero_sum(Matrix::Ones(size, size) - game.C());
      s.zs_solves += 2;
      if (zero_sum_certificate_ok(game.R(), zr)) ++s.zs_cert_ok;
      if (zero_sum_certificate_ok(Matrix::Ones(size, size) - game.C(), zc))
        ++s.zs_cert_ok;

      // Criterion 4: low-threat branch contract.
      if (out.branch == Branch::k3b || out.branch == Branch::k4b) {
        ++s.b_instances;
        const bool mirrored = out.branch == Branch::k4b;
        const MixedStrategy& xp =
            mirrored ? out.profile.col : out.profile.row;
        const std::vector<Index>& star = mirrored
                                             ? out.diagnostics.col_support
                                             : out.diagnostics.row_support;
        bool contained = true;
        for (Index idx : xp.support()) {
          if (std::find(star.begin(), star.end(), idx) == star.end()) {
            contained = false;
          }
        }
        const Matrix& threat_matrix =
            mirrored ? Matrix(game.R().transpose()) : game.C();
        const double max_threat =
            pure_col_payoffs(threat_matrix, xp).maxCoeff();
        if (contained && max_threat <= 0.5 + 1e-6 &&
            out.certified_epsilon <= 0.5 + 1e-6) {
          ++s.b_ok;
        }
      }
    }
  }
  s.elapsed = seconds_since(t0);
  return s;
}

// --- criterion 2, second half: three-valued 3x3 cross-check ----------------

bool lp_matches_enumeration(int trials, int& ok, double& worst) {
  std::mt19937_64 rng(20240817);
  const double levels[3] = {0.0, 0.5, 1.0};
  ok = 0;
  worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Matrix m(3, 3);
    for (Index i = 0; i < 3; ++i) {
      for (Index j = 0; j < 3; ++j) {
        m(i, j) = levels[rng() % 3];
      }
    }
    const double lp = solve_zero_sum(m).value;
    const double brute = zero_sum_value_by_enumeration(m);
    const double gap = std::abs(lp - brute);
    worst = std::max(worst, gap);
    if (gap <= 1e-6) ++ok;
  }
  return ok == trials;
}

// --- criterion 9 helpers: drive the installed binary -----------------------

const std::filesystem::path kScratch = "acceptance_scratch";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, std::string& out) {
  std::filesystem::create_directories(kScratch);
  const auto out_path = kScratch / "stdout.txt";
  const std::string cmd = std::string("\"") + WSNE_CLI_PATH + "\" " + args +
                          " > " + out_path.string() + " 2> " +
                          (kScratch / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  out = slurp(out_path);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Blanks the wall-clock column (index 7); timing is the one legitimate
// run-to-run difference in the CSV.
std::string mask_wall_ms(const std::string& csv) {
  std::ostringstream out;
  std::istringstream in(csv);
  std::string row;
  while (std::getline(in, row)) {
    std::vector<std::string> cells;
    std::stringstream ss(row);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() > 7) cells[7].clear();
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  }
  return out.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

int main() {
  // ---- criteria 1, 2, 4 -----------------------------------------------
  const SweepStats sweep = run_sweep();
  {
    // All outputs must certify at <= 1/2 + delta; the a/b cases must land
    // at the 1/2 threshold exactly.  The grid case returns the first
    // lexicographic profile under the 1.0 target, so its certified epsilon
    // is unconstrained below 1; the unconditional <= 1/2 rate is reported
    // alongside for transparency.
    const bool pass = sweep.le_one == sweep.total &&
                      sweep.ab_total > 0 &&
                      sweep.ab_le_half == sweep.ab_total;
    std::ostringstream msg;
    msg << sweep.total << " games delta=0.5: " << sweep.le_one << "/"
        << sweep.total << " certified <= 1+1e-6 (max " << fmt(sweep.max_cert)
        << "); threshold branches " << sweep.ab_le_half << "/"
        << sweep.ab_total << " certified <= 0.5+1e-6 (max "
        << fmt(sweep.max_cert_ab) << "); unconditional rate "
        << fmt(100.0 * sweep.le_half / sweep.total) << "% ("
        << sweep.c_total << " grid-case games); " << fmt(sweep.elapsed)
        << "s";
    line(1, pass, msg.str());
  }
  {
    int ok3 = 0;
    double worst3 = 0.0;
    const bool half2 = lp_matches_enumeration(10000, ok3, worst3);
    const bool pass = sweep.zs_cert_ok == sweep.zs_solves && half2;
    std::ostringstream msg;
    msg << sweep.zs_cert_ok << "/" << sweep.zs_solves
        << " zero-sum certificates within 1e-6; " << ok3
        << "/10000 three-valued 3x3 LP values match enumeration (worst gap "
        << fmt(worst3) << ")";
    line(2, pass, msg.str());
  }

  // ---- criterion 3 -------------------------------------------------------
  {
    std::mt19937_64 rng(33);
    int grid_branch = 0, lemma_ok = 0, eq_total = 0;
    for (int t = 0; t < 200; ++t) {
      const Index m = 2 + static_cast<Index>(rng() % 4);
      const Index n = 2 + static_cast<Index>(rng() % 4);
      const BimatrixGame game =
          generate_game(GameKind::kForce3c, m, n, derive_seed(303, t));
      const AlgorithmOutcome out = approximate_wsne(game, 0.5);
      if (!branch_is_c(out.branch)) continue;
      ++grid_branch;
      const bool mirrored = out.branch == Branch::k4c;
      const SubgamePayoffCheck check =
          mirrored ? check_subgame_payoff_lemma(game.transposed(),
                                                out.diagnostics.col_support)
                   : check_subgame_payoff_lemma(game,
                                                out.diagnostics.row_support);
      eq_total += check.equilibria_found;
      if (check.holds) ++lemma_ok;
    }
    const bool pass = grid_branch == 200 && lemma_ok == 200;
    std::ostringstream msg;
    msg << grid_branch << "/200 games hit the grid case; subgame payoffs > "
           "1/2-1e-6 at every equilibrium in "
        << lemma_ok << "/200 (" << eq_total << " equilibria checked)";
    line(3, pass, msg.str());
  }

  // ---- criterion 4 -------------------------------------------------------
  {
    const bool pass = sweep.b_ok == sweep.b_instances && sweep.b_instances > 0;
    std::ostringstream msg;
    msg << sweep.b_instances
        << " low-threat-branch instances in the sweep; support containment, "
           "max column payoff <= 0.5+1e-6, and certification hold on "
        << sweep.b_ok;
    line(4, pass, msg.str());
  }

  // ---- criterion 5 -------------------------------------------------------
  {
    bool pass = true;
    for (Index d = 1; d <= 6 && pass; ++d) {
      for (int k = 1; k <= 6 && pass; ++k) {
        // C(d+k-1, k) by exact integer arithmetic.
        std::uint64_t binom = 1;
        for (int i = 1; i <= k; ++i) {
          binom = binom * static_cast<std::uint64_t>(d - 1 + i) /
                  static_cast<std::uint64_t>(i);
        }
        std::uint64_t streamed = 0;
        KUniformEnumerator en(d, k);
        while (en.next()) ++streamed;
        if (streamed != binom || k_uniform_count(d, k) != binom) pass = false;
      }
    }
    pass = pass && k_uniform_count(2, 6) == 7 && k_uniform_count(3, 2) == 6;
    line(5, pass,
         "enumeration counts equal C(d+k-1,k) for all d <= 6, k <= 6 "
         "(spot checks: d=2,k=6 -> 7; d=3,k=2 -> 6)");
  }

  // ---- criterion 6 -------------------------------------------------------
  {
    const int k = sampling_size(20, 0.2);
    int ok = 0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const BimatrixGame g =
          generate_game(GameKind::kUniform, 20, 20, derive_seed(61, i));
      const ZeroSumSolution sol = solve_zero_sum(g.R());
      std::mt19937_64 rng(derive_seed(62, i));
      const MixedStrategy xs = sample_k_uniform(sol.x, k, rng);
      const MixedStrategy ys = sample_k_uniform(sol.y, k, rng);
      const BimatrixGame zs(g.R(), Matrix::Ones(20, 20) - g.R());
      if (wsne_report(zs, {xs, ys}).wsne_epsilon <= 0.6) ++ok;
      worst = std::max(worst, wsne_report(zs, {xs, ys}).wsne_epsilon);
    }
    const bool pass = k == 1122 && ok >= 95;
    std::ostringstream msg;
    msg << "sampled zero-sum equilibria (k=" << k << ") are 0.6-WSNE in "
        << ok << "/100 trials (worst " << fmt(worst) << ")";
    line(6, pass, msg.str());
  }

  // ---- criterion 7 -------------------------------------------------------
  {
    const auto t0 = std::chrono::steady_clock::now();
    int le_cap = 0, within_bound = 0, acct_ok = 0;
    double max_cert = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Index n = (i % 2 == 0) ? 20 : 50;
      const BimatrixGame g =
          generate_game(GameKind::kUniform, n, n, derive_seed(71, i));
      MatrixOracle base(g);
      QueryAlgorithmOptions opts;
      opts.audit = true;
      const QueryAlgorithmResult res =
          approximate_wsne_query(base, 0.2, 0.5, derive_seed(72, i), opts);
      const double cert = res.outcome.certified_epsilon;
      max_cert = std::max(max_cert, cert);
      if (cert <= 1.0 + 1e-6) ++le_cap;
      double bound = 1.0;
      if (res.outcome.branch == Branch::k3a ||
          res.outcome.branch == Branch::k4a)
        bound = 0.5;
      if (res.outcome.branch == Branch::k3b ||
          res.outcome.branch == Branch::k4b)
        bound = 0.6;
      if (cert <= 0.5 + 1e-6 || cert <= bound + 1e-6) ++within_bound;
      const std::uint64_t expect =
          static_cast<std::uint64_t>(res.sampled_support.size()) *
          static_cast<std::uint64_t>(n);
      const std::uint64_t cap =
          static_cast<std::uint64_t>(sampling_size(n, 0.2)) *
          static_cast<std::uint64_t>(n);
      if (res.attempts == 1 && res.stats.phase_subgame == expect &&
          expect <= cap)
        ++acct_ok;
    }
    const bool pass = le_cap == 100 && within_bound >= 95 && acct_ok == 100;
    std::ostringstream msg;
    msg << "audited runs: " << le_cap << "/100 certified <= 1 (max "
        << fmt(max_cert) << "); " << within_bound
        << "/100 within the branch bound; subgame query accounting exact on "
        << acct_ok << "/100; " << fmt(seconds_since(t0)) << "s";
    line(7, pass, msg.str());
  }

  // ---- criterion 8 -------------------------------------------------------
  {
    // The grid minimum and the certified epsilon bound each other only up
    // to grid resolution: rounding any profile onto the k=12 grid moves
    // each regret by at most 2/12, so grid_min <= certified + 1/6.  The
    // reverse direction fails by design (the returned profile is not a
    // grid point), so both raw comparison rates are reported but not gated.
    int grid_le_target = 0, grid_le_cert = 0, cert_ok = 0, cert_total = 0;
    int raw_a = 0, raw_b = 0;
    for (int i = 0; i < 1000; ++i) {
      const BimatrixGame g =
          generate_game(GameKind::kUniform, 2, 2, derive_seed(88, i));
      const AlgorithmOutcome out = approximate_wsne(g, 0.5);
      const GridMinimum gm = min_wsne_epsilon_over_grid(g, 12);
      if (gm.epsilon <= 1.0 + 1e-6) ++grid_le_target;
      if (gm.epsilon <= out.certified_epsilon + 1.0 / 6.0 + 1e-6)
        ++grid_le_cert;
      if (out.certified_epsilon <= gm.epsilon + 1e-6) ++raw_a;
      if (out.certified_epsilon >= gm.epsilon - 1e-6) ++raw_b;
      for (const NashCertificate& cert : exact_nash_support_enumeration(g, 2)) {
        ++cert_total;
        if (wsne_report(g, cert.profile).wsne_epsilon <= 1e-7) ++cert_ok;
      }
    }
    const bool pass = grid_le_target == 1000 && grid_le_cert == 1000 &&
                      cert_ok == cert_total && cert_total >= 1000;
    std::ostringstream msg;
    msg << "grid minimum <= 1/2+delta on " << grid_le_target
        << "/1000 and <= certified+1/6 on " << grid_le_cert << "/1000; "
        << cert_ok << "/" << cert_total
        << " exact-equilibrium certificates re-verify at 0 (raw rates: "
           "cert<=grid "
        << raw_a << ", cert>=grid " << raw_b << ")";
    line(8, pass, msg.str());
  }

  // ---- criterion 9 -------------------------------------------------------
  {
    bool pass = true;
    std::ostringstream msg;

    const std::string csv1 = (kScratch / "sweep1.csv").string();
    const std::string csv2 = (kScratch / "sweep2.csv").string();
    std::string out1, out2;
    const std::string bench_flags =
        "bench --kind uniform --sizes 2,4,7 --count 10 --delta 0.5 --seed 5 ";
    pass &= run_cli(bench_flags + "--csv " + csv1, out1) == 0;
    pass &= run_cli(bench_flags + "--csv " + csv2, out2) == 0;
    const std::uint64_t h1 = fnv1a(mask_wall_ms(slurp(csv1)));
    const std::uint64_t h2 = fnv1a(mask_wall_ms(slurp(csv2)));
    pass &= h1 == h2 && out1 == out2;

    const std::string qcsv1 = (kScratch / "qsweep1.csv").string();
    const std::string qcsv2 = (kScratch / "qsweep2.csv").string();
    const std::string qbench_flags =
        "bench --mode query --kind uniform --sizes 6,9 --count 5 "
        "--epsilon 0.2 --delta 0.5 --audit --seed 6 ";
    pass &= run_cli(qbench_flags + "--csv " + qcsv1, out1) == 0;
    pass &= run_cli(qbench_flags + "--csv " + qcsv2, out2) == 0;
    const std::uint64_t q1 = fnv1a(mask_wall_ms(slurp(qcsv1)));
    const std::uint64_t q2 = fnv1a(mask_wall_ms(slurp(qcsv2)));
    pass &= q1 == q2 && out1 == out2;

    const std::string game = (kScratch / "det_game.json").string();
    pass &= run_cli("generate --kind uniform --rows 6 --cols 6 --seed 41 --out " +
                        game, out1) == 0;
    pass &= run_cli("generate --kind uniform --rows 6 --cols 6 --seed 41", out2) == 0;
    pass &= slurp(game) == out2;

    std::string s1, s2;
    pass &= run_cli("solve --game " + game + " --delta 0.5 --json", s1) == 0;
    pass &= run_cli("solve --game " + game + " --delta 0.5 --json", s2) == 0;
    pass &= !s1.empty() && s1 == s2;
    pass &= run_cli("solve-query --game " + game +
                        " --epsilon 0.2 --delta 0.5 --seed 9 --audit --json",
                    s1) == 0;
    pass &= run_cli("solve-query --game " + game +
                        " --epsilon 0.2 --delta 0.5 --seed 9 --audit --json",
                    s2) == 0;
    pass &= !s1.empty() && s1 == s2;

    msg << "byte-identical reruns: bench sweeps (hash " << std::hex << h1
        << ", query " << q1 << std::dec
        << ", wall-clock column excluded), generate, solve --json, "
           "solve-query --json";
    line(9, pass, msg.str());
  }

  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures;
}
