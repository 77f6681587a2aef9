#pragma once

#include <stdexcept>

#include "pcmri/graph.hpp"
#include "pcmri/linalg.hpp"

namespace pcmri {

/// Power iteration did not settle within the iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EigenResult {
  double lambda_max = 0.0;
  int iterations = 0;
  /// Infinity norm of A v - lambda v for the 1-normalized iterate v.
  double residual = 0.0;
};

struct PowerIterationOptions {
  /// Stop once successive eigenvalue estimates differ by less than this.
  double tol = 1e-11;
  int max_iter = 100'000;
};

/// Perron root of a matrix with strictly positive entries.
///
/// Power iteration with 1-normalized iterates. If `vector` is non-empty and
/// of the right size it seeds the iteration; on return it holds the
/// 1-normalized Perron vector. Throws ConvergenceError.
EigenResult dominant_eigenvalue(const Matrix& a, Vector& vector,
                                const PowerIterationOptions& options = {});
/// Starts from the all-ones vector.
EigenResult dominant_eigenvalue(const Matrix& a,
                                const PowerIterationOptions& options = {});

/// (lambda_max - n) / (n - 1). Tiny negative values caused by rounding are
/// clamped to zero; lambda_max below n - 1e-9 throws std::domain_error, as
/// does n < 2.
double consistency_index(double lambda_max, int n);

/// ci / ri. Throws std::domain_error unless ri > 0.
double consistency_ratio(double ci, double ri);

/// Saaty's threshold on the consistency ratio.
inline constexpr double kAcceptableRatio = 0.1;
/// Ratios within this distance of the threshold count as acceptable.
inline constexpr double kRatioTieTolerance = 1e-9;

inline bool is_acceptable(double cr) {
  return cr <= kAcceptableRatio + kRatioTieTolerance;
}

/// Largest absolute adjacency eigenvalue, accurate to about 1e-12.
///
/// Power iteration on B + I with a Rayleigh quotient estimate; the shift
/// keeps bipartite graphs from oscillating between +rho and -rho.
double spectral_radius(const ComparisonGraph& graph);

}  // namespace pcmri
