#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pcmri/spectral.hpp"

using namespace pcmri;

namespace {

Matrix random_reciprocal(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 16);
  Matrix a = Matrix::Ones(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = saaty_values()[pick(rng)];
      a(j, i) = 1.0 / a(i, j);
    }
  return a;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("3x3 lambda_max matches the closed form") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix a = random_reciprocal(3, rng);
    CHECK(dominant_eigenvalue(a).lambda_max ==
          doctest::Approx(oracle::lambda_max_3x3(a(0, 1), a(0, 2), a(1, 2))).epsilon(1e-10));
  }
}

TEST_CASE("lambda_max matches the QR spectrum for n = 4..10") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 4 + trial % 7;
    const Matrix a = random_reciprocal(n, rng);
    const EigenResult r = dominant_eigenvalue(a);
    CHECK(r.lambda_max == doctest::Approx(oracle::lambda_max_qr(a)).epsilon(1e-10));
    CHECK(r.residual <= 1e-9);
    CHECK(r.lambda_max >= n - 1e-9);
  }
}

TEST_CASE("consistent matrices have lambda_max = n") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> w(0.1, 10.0);
  for (int n = 2; n <= 10; ++n) {
    std::vector<double> weights(n);
    for (auto& x : weights) x = w(rng);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = weights[i] / weights[j];
    const double lambda = dominant_eigenvalue(a).lambda_max;
    CHECK(lambda == doctest::Approx(n).epsilon(1e-12));
    CHECK(consistency_index(lambda, n) <= 1e-9);
  }
}

TEST_CASE("warm start returns the Perron vector") {
  std::mt19937_64 rng(1);
  const Matrix a = random_reciprocal(6, rng);
  Vector v;
  const double cold = dominant_eigenvalue(a, v).lambda_max;
  CHECK(v.size() == 6);
  CHECK(v.sum() == doctest::Approx(1.0));
  CHECK((a * v - cold * v).cwiseAbs().maxCoeff() < 1e-9);
  const EigenResult warm = dominant_eigenvalue(a, v);
  CHECK(warm.lambda_max == doctest::Approx(cold).epsilon(1e-12));
  CHECK(warm.iterations <= 3);
}

TEST_CASE("iteration budget is enforced") {
  std::mt19937_64 rng(2);
  const Matrix a = random_reciprocal(7, rng);
  PowerIterationOptions opts;
  opts.max_iter = 1;
  CHECK_THROWS_AS(dominant_eigenvalue(a, opts), ConvergenceError);
}

TEST_CASE("consistency index and ratio") {
  CHECK(consistency_index(4.0851550, 4) == doctest::Approx(0.028385).epsilon(1e-4));
  CHECK(consistency_index(3.0, 3) == 0.0);
  CHECK(consistency_index(3.0 - 1e-12, 3) == 0.0);
  CHECK_THROWS_AS(consistency_index(2.5, 3), std::domain_error);
  CHECK_THROWS_AS(consistency_index(1.0, 1), std::domain_error);
  CHECK(consistency_ratio(0.0284, 0.2646) == doctest::Approx(0.10733).epsilon(1e-4));
  CHECK_THROWS_AS(consistency_ratio(0.1, 0.0), std::domain_error);
  CHECK(is_acceptable(0.1));
  CHECK(is_acceptable(0.1 + 5e-10));
  CHECK_FALSE(is_acceptable(0.1 + 1e-8));
}

}
