#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pcmri/completion.hpp"
#include "pcmri/spectral.hpp"

using namespace pcmri;

namespace {

IncompletePCM motivating_matrix() {
  return parse_pcm(std::string_view(
      "4\n"
      "1   2   *   5\n"
      "1/2 1   4   *\n"
      "*   1/4 1   2\n"
      "1/5 *   1/2 1\n"));
}

}  // namespace

TEST_SUITE("completion") {

TEST_CASE("method parsing") {
  CHECK(CompletionMethod::parse("method1") == CompletionMethod::unconstrained());
  CHECK(CompletionMethod::parse("method2") == CompletionMethod::saaty_bounded());
  CHECK_THROWS_AS(CompletionMethod::parse("method3"), std::invalid_argument);
  CHECK(CompletionMethod::saaty_bounded().lower() == doctest::Approx(1.0 / 9.0));
  CHECK(CompletionMethod::saaty_bounded().upper() == 9.0);
}

TEST_CASE("four-alternative example against the grid oracle") {
  const IncompletePCM pcm = motivating_matrix();
  const double oracle_lambda = oracle::grid_minimum(pcm, 1.0 / 9.0, 9.0, 41, 12);
  for (auto solver : {CompletionSolver::kNewton, CompletionSolver::kCoordinateDescent}) {
    CompletionOptions opts;
    opts.solver = solver;
    const CompletionResult r = minimize_lambda_max(pcm, CompletionMethod::saaty_bounded(), opts);
    CHECK(r.converged);
    CHECK(r.lambda_star == doctest::Approx(oracle_lambda).epsilon(1e-9));
    CHECK(r.lambda_star <= oracle_lambda + 1e-9);
    CHECK(r.lambda_star == doctest::Approx(4.0851550).epsilon(1e-7));
    CHECK(consistency_index(r.lambda_star, 4) == doctest::Approx(0.0283850).epsilon(1e-5));
    REQUIRE(r.x_star.size() == 2);
    // Both missing entries settle at sqrt(20).
    CHECK(r.x_star[0] == doctest::Approx(std::sqrt(20.0)).epsilon(1e-5));
    CHECK(r.x_star[1] == doctest::Approx(std::sqrt(20.0)).epsilon(1e-5));
  }
}

TEST_CASE("completed matrix keeps known entries and reciprocity") {
  const IncompletePCM pcm = motivating_matrix();
  const CompletionResult r = minimize_lambda_max(pcm, CompletionMethod::saaty_bounded());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(r.completed(i, j) * r.completed(j, i) == doctest::Approx(1.0));
      if (auto v = pcm.at(i, j)) CHECK(r.completed(i, j) == *v);
    }
  CHECK(dominant_eigenvalue(r.completed).lambda_max ==
        doctest::Approx(r.lambda_star).epsilon(1e-10));
  const double at = lambda_at(pcm, r.x_star);
  CHECK(at == doctest::Approx(r.lambda_star).epsilon(1e-10));
}

TEST_CASE("disconnected graphs have no unique completion") {
  IncompletePCM pcm(4);
  pcm.set_comparison(0, 1, 3);
  pcm.set_comparison(2, 3, 5);
  CHECK_THROWS_AS(minimize_lambda_max(pcm, CompletionMethod::saaty_bounded()),
                  DisconnectedGraphError);
}

TEST_CASE("complete matrices are returned unchanged") {
  std::mt19937_64 rng(4);
  const IncompletePCM pcm = oracle::random_connected_pcm(5, 0, rng);
  const CompletionResult r = minimize_lambda_max(pcm, CompletionMethod::unconstrained());
  CHECK(r.x_star.empty());
  CHECK(r.converged);
  CHECK(r.lambda_star == doctest::Approx(oracle::lambda_max_qr(pcm.filled(1.0))).epsilon(1e-10));
}

TEST_CASE("Newton and coordinate descent agree") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 4 + trial % 3;
    const int m = 1 + static_cast<int>(rng() % (n - 1));
    const IncompletePCM pcm = oracle::random_connected_pcm(n, m, rng);
    const CompletionMethod method =
        trial % 2 ? CompletionMethod::unconstrained() : CompletionMethod::saaty_bounded();
    CompletionOptions cd;
    cd.solver = CompletionSolver::kCoordinateDescent;
    const auto a = minimize_lambda_max(pcm, method);
    const auto b = minimize_lambda_max(pcm, method, cd);
    CHECK(a.converged);
    CHECK(b.converged);
    CHECK(std::abs(a.lambda_star - b.lambda_star) < 1e-8);
  }
}

TEST_CASE("grid oracle agreement for one and two missing entries") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 3;
    const int m = n == 3 ? 1 : 1 + trial % 2;
    const IncompletePCM pcm = oracle::random_connected_pcm(n, m, rng);
    const bool bounded = trial % 4 < 2;
    const CompletionMethod method =
        bounded ? CompletionMethod::saaty_bounded() : CompletionMethod::unconstrained();
    const double lo = bounded ? 1.0 / 9.0 : 1e-4;
    const double hi = bounded ? 9.0 : 1e4;
    const double grid = oracle::grid_minimum(pcm, lo, hi, 41, 12);
    const double lambda = minimize_lambda_max(pcm, method).lambda_star;
    CHECK(std::abs(lambda - grid) < 1e-6);
    CHECK(lambda <= grid + 1e-9);
  }
}

TEST_CASE("library brute force agrees with the optimizer") {
  const IncompletePCM pcm = motivating_matrix();
  const double brute = brute_force_lambda(pcm, CompletionMethod::saaty_bounded(), 41, 8);
  CHECK(brute == doctest::Approx(4.0851550).epsilon(1e-8));
  IncompletePCM many(5);
  many.set_comparison(0, 1, 2);
  CHECK_THROWS_AS(brute_force_lambda(many, CompletionMethod::saaty_bounded(), 5),
                  std::invalid_argument);
}

TEST_CASE("spanning trees complete consistently without bounds") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 5;
    const IncompletePCM pcm = oracle::random_connected_pcm(n, n * (n - 1) / 2 - (n - 1), rng);
    const auto r = minimize_lambda_max(pcm, CompletionMethod::unconstrained());
    CHECK(consistency_index(r.lambda_star, n) <= 1e-8);
  }
}

TEST_CASE("consistent incomplete matrices complete to lambda = n") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + trial % 4;
    std::vector<double> weights(n);
    for (auto& x : weights) x = w(rng);
    IncompletePCM shape =
        oracle::random_connected_pcm(n, std::min(2 + trial % 3, (n - 1) * (n - 2) / 2), rng);
    IncompletePCM pcm(n);
    for (const Slot& e : shape.known_slots())
      pcm.set_comparison(e.i, e.j, weights[e.i] / weights[e.j]);
    for (auto method : {CompletionMethod::unconstrained(), CompletionMethod::saaty_bounded()})
      CHECK(minimize_lambda_max(pcm, method).lambda_star == doctest::Approx(n).epsilon(1e-10));
  }
}

TEST_CASE("unconstrained optimum is invariant under rescaling the alternatives") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> w(0.2, 5.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + trial % 3;
    const IncompletePCM pcm = oracle::random_connected_pcm(n, 2, rng);
    std::vector<double> d(n);
    for (auto& x : d) x = w(rng);
    IncompletePCM scaled(n);
    for (const Slot& e : pcm.known_slots())
      scaled.set_comparison(e.i, e.j, *pcm.at(e.i, e.j) * d[e.i] / d[e.j]);
    const double a = minimize_lambda_max(pcm, CompletionMethod::unconstrained()).lambda_star;
    const double b = minimize_lambda_max(scaled, CompletionMethod::unconstrained()).lambda_star;
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("less information or looser bounds never raise the optimum") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 4 + trial % 4;
    const IncompletePCM pcm = oracle::random_connected_pcm(n, 1 + trial % 3, rng);
    const double bounded = minimize_lambda_max(pcm, CompletionMethod::saaty_bounded()).lambda_star;
    const double free = minimize_lambda_max(pcm, CompletionMethod::unconstrained()).lambda_star;
    CHECK(free <= bounded + 1e-9);

    for (const Slot& e : pcm.known_slots()) {
      IncompletePCM fewer = pcm;
      fewer.clear_comparison(e.i, e.j);
      if (!is_connected(representing_graph(fewer))) continue;
      for (auto method : {CompletionMethod::unconstrained(), CompletionMethod::saaty_bounded()}) {
        const double before = minimize_lambda_max(pcm, method).lambda_star;
        const double after = minimize_lambda_max(fewer, method).lambda_star;
        CHECK(after <= before + 1e-9);
      }
      break;
    }
  }
}

TEST_CASE("lambda_max is convex along segments in log coordinates") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> t(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + trial % 4;
    const int m = 1 + trial % 4;
    const IncompletePCM pcm = oracle::random_connected_pcm(n, m, rng);
    std::vector<double> a(m), b(m), mid(m);
    for (int k = 0; k < m; ++k) {
      const double ta = t(rng), tb = t(rng);
      a[k] = std::exp(ta);
      b[k] = std::exp(tb);
      mid[k] = std::exp(0.5 * (ta + tb));
    }
    CHECK(lambda_at(pcm, mid) <= 0.5 * (lambda_at(pcm, a) + lambda_at(pcm, b)) + 1e-9);
  }
}

TEST_CASE("bounded solutions stay inside the scale") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const IncompletePCM pcm = oracle::random_connected_pcm(6, 4, rng);
    const auto r = minimize_lambda_max(pcm, CompletionMethod::saaty_bounded());
    for (double x : r.x_star) {
      CHECK(x >= 1.0 / 9.0 - 1e-12);
      CHECK(x <= 9.0 + 1e-12);
    }
  }
}

TEST_CASE("CI is non-negative on random instances") {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 3 + trial % 5;
    const int max_m = n * (n - 1) / 2 - (n - 1);
    const IncompletePCM pcm = oracle::random_connected_pcm(n, trial % (max_m + 1), rng);
    const auto r = minimize_lambda_max(pcm, CompletionMethod::saaty_bounded());
    CHECK(consistency_index(r.lambda_star, n) >= 0.0);
    ++checked;
  }
  CHECK(checked == 2000);
}

}
