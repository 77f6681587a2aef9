#include "pcmri/spectral.hpp"

#include <cmath>
#include <string>

namespace pcmri {

EigenResult dominant_eigenvalue(const Matrix& a, Vector& x,
                                const PowerIterationOptions& options) {
  const int n = static_cast<int>(a.rows());
  if (x.size() != n || !(x.minCoeff() > 0.0)) x = Vector::Ones(n);
  x /= x.sum();

  Vector y(n);
  double previous = 0.0;
  for (int it = 1; it <= options.max_iter; ++it) {
    y.noalias() = a * x;
    const double lambda = y.sum();
    const double residual = (y - lambda * x).lpNorm<Eigen::Infinity>();
    if (it > 1 && std::abs(lambda - previous) < options.tol &&
        residual <= options.tol) {
      return {lambda, it, residual};
    }
    previous = lambda;
    x = y / lambda;
  }
  throw ConvergenceError("power iteration did not converge in " +
                         std::to_string(options.max_iter) + " iterations");
}

EigenResult dominant_eigenvalue(const Matrix& a,
                                const PowerIterationOptions& options) {
  Vector x;
  return dominant_eigenvalue(a, x, options);
}

double consistency_index(double lambda_max, int n) {
  if (n < 2) throw std::domain_error("consistency index needs n >= 2");
  if (lambda_max < n - 1e-9)
    throw std::domain_error("lambda_max " + std::to_string(lambda_max) +
                            " is below the matrix order " + std::to_string(n));
  const double ci = (lambda_max - n) / (n - 1);
  return ci < 0.0 ? 0.0 : ci;
}

double consistency_ratio(double ci, double ri) {
  if (!(ri > 0.0)) throw std::domain_error("random index must be positive");
  return ci / ri;
}

double spectral_radius(const ComparisonGraph& graph) {
  const int n = graph.size();
  if (graph.edge_count() == 0) return 0.0;
  Matrix shifted = graph.adjacency_matrix();
  shifted.diagonal().array() += 1.0;

  Vector x = Vector::Ones(n).normalized();
  Vector y(n);
  double previous = 0.0;
  for (int it = 1; it <= 1'000'000; ++it) {
    y.noalias() = shifted * x;
    const double rayleigh = x.dot(y);
    if (it > 1 && std::abs(rayleigh - previous) < 1e-14 * rayleigh) {
      return rayleigh - 1.0;
    }
    previous = rayleigh;
    x = y.normalized();
  }
  throw ConvergenceError("adjacency power iteration did not converge");
}

}  // namespace pcmri
