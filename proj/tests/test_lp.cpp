#include "doctest.h"

#include "wsne/game.hpp"
#include "wsne/generators.hpp"
#include "wsne/lp.hpp"
#include "wsne/oracle.hpp"
#include "wsne/random.hpp"

#include <cmath>

using namespace wsne;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix random_matrix(Index m, Index n, std::mt19937_64& rng) {
  Matrix out(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = uniform01(rng);
  return out;
}

void check_certificates(const Matrix& m, const ZeroSumSolution& sol,
                        double tol) {
  const Vector row_guarantee = m.transpose() * sol.x.probs;  // x^T M
  const Vector col_exposure = m * sol.y.probs;               // M y
  CHECK(row_guarantee.minCoeff() >= sol.value - tol);
  CHECK(col_exposure.maxCoeff() <= sol.value + tol);
}

}  // namespace

TEST_CASE("matching pennies value and strategies") {
  const ZeroSumSolution sol = solve_zero_sum(mat2(1, 0, 0, 1));
  CHECK(sol.value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.x.probs[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.y.probs[0] == doctest::Approx(0.5).epsilon(1e-9));
  check_certificates(mat2(1, 0, 0, 1), sol, 1e-9);
}

TEST_CASE("2x2 game with interior equilibrium") {
  const Matrix m = mat2(0.9, 0.4, 0.2, 0.8);
  const ZeroSumSolution sol = solve_zero_sum(m);
  CHECK(sol.value == doctest::Approx(32.0 / 55).epsilon(1e-9));
  CHECK(sol.x.probs[0] == doctest::Approx(6.0 / 11).epsilon(1e-9));
  CHECK(sol.x.probs[1] == doctest::Approx(5.0 / 11).epsilon(1e-9));
  CHECK(sol.y.probs[0] == doctest::Approx(4.0 / 11).epsilon(1e-9));
  CHECK(sol.y.probs[1] == doctest::Approx(7.0 / 11).epsilon(1e-9));
  check_certificates(m, sol, 1e-9);
}

TEST_CASE("constant matrix returns uniform strategies") {
  const ZeroSumSolution sol = solve_zero_sum(Matrix::Constant(3, 2, 0.7));
  CHECK(sol.value == doctest::Approx(0.7));
  for (Index i = 0; i < 3; ++i)
    CHECK(sol.x.probs[i] == doctest::Approx(1.0 / 3));
  for (Index j = 0; j < 2; ++j)
    CHECK(sol.y.probs[j] == doctest::Approx(0.5));
}

TEST_CASE("certificates and duality on random matrices") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const Index m = 1 + static_cast<Index>(rng() % 8);
    const Index n = 1 + static_cast<Index>(rng() % 8);
    const Matrix mm = random_matrix(m, n, rng);
    const ZeroSumSolution sol = solve_zero_sum(mm);
    check_certificates(mm, sol, 1e-6);
    CHECK(sol.value >= -1e-9);
    CHECK(sol.value <= 1.0 + 1e-9);

    // Duality: the guaranteed floor and ceiling meet at the value.
    const double floor = (mm.transpose() * sol.x.probs).minCoeff();
    const double ceiling = (mm * sol.y.probs).maxCoeff();
    CHECK(std::abs(floor - ceiling) <= 2e-6);
  }
}

TEST_CASE("negative and shifted entries are handled") {
  // Same game as matching pennies shifted to [-3, -1]: value shifts along.
  const Matrix m = (2.0 * mat2(1, 0, 0, 1).array() - 3.0).matrix();
  const ZeroSumSolution sol = solve_zero_sum(m);
  CHECK(sol.value == doctest::Approx(-2.0).epsilon(1e-9));
  check_certificates(m, sol, 1e-9);
}

TEST_CASE("LP value matches enumeration on three-valued games") {
  std::mt19937_64 rng(202);
  const double levels[3] = {0.0, 0.5, 1.0};
  for (int trial = 0; trial < 400; ++trial) {
    const Index size = 2 + static_cast<Index>(rng() % 2);
    Matrix m(size, size);
    for (Index i = 0; i < size; ++i)
      for (Index j = 0; j < size; ++j) m(i, j) = levels[rng() % 3];
    const double lp = solve_zero_sum(m).value;
    const double brute = zero_sum_value_by_enumeration(m);
    CHECK(lp == doctest::Approx(brute).epsilon(1e-6));
  }
}

TEST_CASE("low-threat mixture on the pinned 2x2 instance") {
  const Matrix c = mat2(0.6, 0.4, 0.4, 0.6);
  const auto x = find_low_threat_mixture(c, {0, 1}, 0.5);
  REQUIRE(x.has_value());
  const Vector pay = c.transpose() * x->probs;
  CHECK(pay.maxCoeff() <= 0.5 + 1e-9);
  // The two column constraints pin the mixture to (1/2, 1/2).
  CHECK(x->probs[0] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("low-threat mixture infeasible on all-ones") {
  CHECK_FALSE(find_low_threat_mixture(Matrix::Ones(3, 3), {0, 1, 2}, 0.5));
  CHECK_FALSE(find_low_threat_mixture(Matrix::Ones(3, 3), {1}, 0.5));
}

TEST_CASE("low-threat mixture trivial on all-zeros") {
  const auto x = find_low_threat_mixture(Matrix::Zero(3, 2), {0}, 0.5);
  REQUIRE(x.has_value());
  CHECK(x->probs[0] == doctest::Approx(1.0));
  CHECK(x->support() == std::vector<Index>{0});
}

TEST_CASE("low-threat mixture respects the allowed rows") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix c = random_matrix(4, 3, rng);
    const std::vector<Index> allowed = {0, 2};
    const auto x = find_low_threat_mixture(c, allowed, 0.55);
    if (!x) continue;
    CHECK(x->probs[1] == 0.0);
    CHECK(x->probs[3] == 0.0);
    CHECK((c.transpose() * x->probs).maxCoeff() <= 0.55 + 1e-6);
  }
}

TEST_CASE("low-threat feasibility is monotone in the threshold") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    const Matrix c = random_matrix(3, 3, rng);
    const std::vector<Index> allowed = {0, 1, 2};
    bool was_feasible = false;
    for (double threshold : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      const bool feasible =
          find_low_threat_mixture(c, allowed, threshold).has_value();
      if (was_feasible) CHECK(feasible);
      was_feasible = feasible;
    }
    // Threshold 1.0 is always feasible for payoffs in [0, 1].
    CHECK(was_feasible);
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(find_low_threat_mixture(Matrix::Zero(2, 2), {}, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(find_low_threat_mixture(Matrix::Zero(2, 2), {5}, 0.5),
                  std::invalid_argument);
  Matrix nan = Matrix::Zero(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(solve_zero_sum(nan), std::invalid_argument);
}
