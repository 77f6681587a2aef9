#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcmri/linalg.hpp"
#include "pcmri/pcm.hpp"

namespace pcmri {

/// Admissible range of the completion variables.
///
/// kUnconstrained lets every missing entry take any positive value;
/// kSaatyBounded keeps each one inside [1/9, 9].
class CompletionMethod {
 public:
  enum class Kind { kUnconstrained, kSaatyBounded };

  static CompletionMethod unconstrained() { return CompletionMethod(Kind::kUnconstrained); }
  static CompletionMethod saaty_bounded() { return CompletionMethod(Kind::kSaatyBounded); }
  /// "method1" or "method2"; throws std::invalid_argument otherwise.
  static CompletionMethod parse(std::string_view name);

  Kind kind() const { return kind_; }
  bool bounded() const { return kind_ == Kind::kSaatyBounded; }
  /// 1/9 and 9 when bounded, 0 and +inf otherwise.
  double lower() const;
  double upper() const;
  std::string name() const;

  friend bool operator==(CompletionMethod, CompletionMethod) = default;

 private:
  explicit CompletionMethod(Kind kind) : kind_(kind) {}
  Kind kind_;
};

enum class CompletionSolver {
  /// Projected Newton in log coordinates, exact gradient and Hessian of
  /// lambda_max from the left and right Perron vectors.
  kNewton,
  /// Cyclic coordinate descent in log coordinates with a golden-section
  /// line search per variable.
  kCoordinateDescent,
};

struct CompletionOptions {
  /// Stop once an outer iteration improves lambda by less than this.
  double tol = 1e-10;
  /// Outer iterations: Newton steps or coordinate sweeps.
  int max_sweeps = 500;
  CompletionSolver solver = CompletionSolver::kNewton;
};

struct CompletionResult {
  Matrix completed;
  double lambda_star = 0.0;
  /// One value per missing pair, in row-major order of the upper triangle.
  std::vector<double> x_star;
  int sweeps = 0;
  bool converged = false;
};

/// The known comparisons do not connect all alternatives, so the optimal
/// completion is not unique.
class DisconnectedGraphError : public std::invalid_argument {
 public:
  DisconnectedGraphError()
      : std::invalid_argument(
            "representing graph is disconnected: no unique completion") {}
};

/// Fills the missing comparisons so that lambda_max of the completed matrix
/// is minimal.
///
/// lambda_max is convex in the logarithms of the missing entries, so the
/// local optimum found is global. Throws DisconnectedGraphError; a run that
/// exhausts max_sweeps is returned with converged == false.
CompletionResult minimize_lambda_max(const IncompletePCM& pcm,
                                     CompletionMethod method,
                                     const CompletionOptions& options = {});

/// lambda_max of pcm with its missing pairs (row-major) set to x.
double lambda_at(const IncompletePCM& pcm, std::span<const double> x);

/// Test oracle: minimum of lambda_max over a log-uniform grid with
/// grid_points per missing pair. The box is [1/9, 9] when bounded and
/// [1e-4, 1e4] otherwise.
///
/// With zoom_levels > 0 the grid is re-laid zoom_levels more times on a
/// window of +-4 cells around the incumbent. Throws std::invalid_argument
/// for more than 3 missing pairs.
double brute_force_lambda(const IncompletePCM& pcm, CompletionMethod method,
                          int grid_points, int zoom_levels = 0);

}  // namespace pcmri
