#include "pcmri/completion.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "pcmri/graph.hpp"
#include "pcmri/spectral.hpp"

namespace pcmri {

double CompletionMethod::lower() const { return bounded() ? 1.0 / 9.0 : 0.0; }

double CompletionMethod::upper() const {
  return bounded() ? 9.0 : std::numeric_limits<double>::infinity();
}

std::string CompletionMethod::name() const {
  return bounded() ? "method2" : "method1";
}

CompletionMethod CompletionMethod::parse(std::string_view name) {
  if (name == "method1") return unconstrained();
  if (name == "method2") return saaty_bounded();
  throw std::invalid_argument("unknown completion method '" +
                              std::string(name) + "'");
}

namespace {

const double kLogNine = std::log(9.0);
// Cap on |ln x| for unconstrained completions.
const double kLogCap = std::log(1e6);

using Bordered = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::ColMajor, kMaxOrder + 1, kMaxOrder + 1>;
using BorderedVector = Eigen::Matrix<double, Eigen::Dynamic, 1,
                                     Eigen::ColMajor, kMaxOrder + 1, 1>;

// Eigenvalue solves inside the optimizers run tighter than the public
// default so that line searches see differences well below the stopping
// tolerance.
constexpr PowerIterationOptions kInnerPower{1e-12, 100'000};

struct Problem {
  Matrix base;
  std::vector<Slot> slots;
  double lo = 0.0;  // box in log coordinates
  double hi = 0.0;

  Problem(const IncompletePCM& pcm, CompletionMethod method)
      : base(pcm.filled(1.0)), slots(pcm.missing_slots()) {
    lo = method.bounded() ? -kLogNine : -kLogCap;
    hi = method.bounded() ? kLogNine : kLogCap;
  }

  int dim() const { return static_cast<int>(slots.size()); }

  void apply(std::span<const double> t, Matrix& a) const {
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const double x = std::exp(t[k]);
      a(slots[k].i, slots[k].j) = x;
      a(slots[k].j, slots[k].i) = 1.0 / x;
    }
  }
};

// lambda_max as a function of the log variables, with warm-started Perron
// vectors.
class Objective {
 public:
  explicit Objective(const Problem& p) : p_(p), a_(p.base) {}

  double operator()(std::span<const double> t) {
    p_.apply(t, a_);
    return dominant_eigenvalue(a_, right_, kInnerPower).lambda_max;
  }

  const Matrix& matrix() const { return a_; }
  Vector& right() { return right_; }
  Vector& left() { return left_; }

 private:
  const Problem& p_;
  Matrix a_;
  Vector right_;
  Vector left_;
};

CompletionResult finish(const Problem& p, std::span<const double> t,
                        double lambda, int sweeps, bool converged) {
  CompletionResult r;
  r.completed = p.base;
  p.apply(t, r.completed);
  r.lambda_star = lambda;
  r.x_star.resize(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) r.x_star[k] = std::exp(t[k]);
  r.sweeps = sweeps;
  r.converged = converged;
  return r;
}

// ---------------------------------------------------------------------------
// Projected Newton.
//
// With A w = lambda w, v^T A = lambda v^T and v^T w = 1, the derivative of
// lambda along A_k = dA/dt_k is v^T A_k w. The second derivative uses the
// eigenvector derivative w_k, obtained from the bordered system
//   [lambda I - A  w] [w_k]   [(A_k - lambda_k I) w]
//   [v^T           0] [ mu] = [0                   ]
// as H_kl = delta_kl v^T A_kk w + v^T A_k w_l + v^T A_l w_k.

struct LocalModel {
  double lambda = 0.0;
  Vector w;
  Vector v;
  Eigen::VectorXd grad;
};

LocalModel local_model(const Problem& p, Objective& f,
                       std::span<const double> t) {
  LocalModel lm;
  lm.lambda = f(t);
  lm.w = f.right();
  const Matrix at = f.matrix().transpose();
  dominant_eigenvalue(at, f.left(), kInnerPower);
  lm.v = f.left() / f.left().dot(lm.w);

  lm.grad.resize(p.dim());
  for (int k = 0; k < p.dim(); ++k) {
    const auto [i, j] = p.slots[k];
    const double x = std::exp(t[k]);
    lm.grad[k] = lm.v[i] * lm.w[j] * x - lm.v[j] * lm.w[i] / x;
  }
  return lm;
}

Eigen::MatrixXd hessian(const Problem& p, const Matrix& a,
                        const LocalModel& lm, std::span<const double> t,
                        const std::vector<int>& free) {
  const int n = static_cast<int>(a.rows());
  Bordered border(n + 1, n + 1);
  border.topLeftCorner(n, n) = -a;
  border.topLeftCorner(n, n).diagonal().array() += lm.lambda;
  border.col(n).head(n) = lm.w;
  border.row(n).head(n) = lm.v.transpose();
  border(n, n) = 0.0;
  const Eigen::PartialPivLU<Bordered> lu(border);

  const int f = static_cast<int>(free.size());
  std::vector<Vector> dw(f);
  std::vector<double> xs(f);
  for (int q = 0; q < f; ++q) {
    const int k = free[q];
    const auto [i, j] = p.slots[k];
    const double x = std::exp(t[k]);
    xs[q] = x;
    BorderedVector rhs = BorderedVector::Zero(n + 1);
    rhs.head(n) = -lm.grad[k] * lm.w;
    rhs[i] += x * lm.w[j];
    rhs[j] -= lm.w[i] / x;
    dw[q] = lu.solve(rhs).head(n);
  }

  // v^T A_k u
  auto directional = [&](int q, const Vector& u) {
    const auto [i, j] = p.slots[free[q]];
    return lm.v[i] * xs[q] * u[j] - lm.v[j] * u[i] / xs[q];
  };

  Eigen::MatrixXd h(f, f);
  for (int q = 0; q < f; ++q) {
    const auto [i, j] = p.slots[free[q]];
    for (int r = q; r < f; ++r) {
      double value = directional(q, dw[r]) + directional(r, dw[q]);
      if (q == r)
        value += lm.v[i] * lm.w[j] * xs[q] + lm.v[j] * lm.w[i] / xs[q];
      h(q, r) = h(r, q) = value;
    }
  }
  return h;
}

Eigen::VectorXd newton_direction(const Eigen::MatrixXd& h,
                                 const Eigen::VectorXd& g) {
  const int f = static_cast<int>(h.rows());
  double shift = 0.0;
  for (int attempt = 0; attempt < 30; ++attempt) {
    Eigen::MatrixXd shifted = h;
    shifted.diagonal().array() += shift;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success) return llt.solve(-g);
    shift = shift == 0.0 ? 1e-10 * std::max(1.0, h.diagonal().cwiseAbs().maxCoeff())
                         : shift * 10.0;
  }
  return -g / std::max(1.0, h.diagonal().cwiseAbs().maxCoeff() + f);
}

CompletionResult solve_newton(const Problem& p,
                              const CompletionOptions& options) {
  const int m = p.dim();
  Objective f(p);
  std::vector<double> t(m, 0.0), trial(m);
  LocalModel lm = local_model(p, f, t);

  for (int it = 1; it <= options.max_sweeps; ++it) {
    // Projected gradient and the epsilon-active set.
    double pg = 0.0;
    for (int k = 0; k < m; ++k) {
      const double moved = std::clamp(t[k] - lm.grad[k], p.lo, p.hi);
      pg = std::max(pg, std::abs(moved - t[k]));
    }
    if (pg <= 1e-10) return finish(p, t, lm.lambda, it - 1, true);

    const double eps = std::min(1e-6, pg);
    std::vector<int> free;
    for (int k = 0; k < m; ++k) {
      const bool at_lower = t[k] <= p.lo + eps && lm.grad[k] > 0.0;
      const bool at_upper = t[k] >= p.hi - eps && lm.grad[k] < 0.0;
      if (!at_lower && !at_upper) free.push_back(k);
    }

    Eigen::VectorXd direction = Eigen::VectorXd::Zero(m);
    if (!free.empty()) {
      const Eigen::MatrixXd h = hessian(p, f.matrix(), lm, t, free);
      Eigen::VectorXd g(static_cast<int>(free.size()));
      for (std::size_t q = 0; q < free.size(); ++q) g[q] = lm.grad[free[q]];
      const Eigen::VectorXd d = newton_direction(h, g);
      for (std::size_t q = 0; q < free.size(); ++q) direction[free[q]] = d[q];
    }

    // Armijo search along the projection arc.
    double alpha = 1.0;
    double trial_lambda = lm.lambda;
    bool accepted = false;
    for (int ls = 0; ls < 50 && !accepted; ++ls, alpha *= 0.5) {
      double predicted = 0.0;
      for (int k = 0; k < m; ++k) {
        trial[k] = std::clamp(t[k] + alpha * direction[k], p.lo, p.hi);
        predicted += lm.grad[k] * (trial[k] - t[k]);
      }
      trial_lambda = f(trial);
      accepted = trial_lambda <= lm.lambda + 1e-4 * predicted + 1e-13;
    }
    if (!accepted) return finish(p, t, lm.lambda, it, pg <= 1e-6);

    double step = 0.0;
    for (int k = 0; k < m; ++k) step = std::max(step, std::abs(trial[k] - t[k]));
    const double improvement = lm.lambda - trial_lambda;
    t = trial;
    lm = local_model(p, f, t);
    if (improvement < options.tol && step < 1e-7)
      return finish(p, t, lm.lambda, it, true);
  }
  return finish(p, t, lm.lambda, options.max_sweeps, false);
}

// ---------------------------------------------------------------------------
// Cyclic coordinate descent with golden-section line searches.

constexpr double kGoldenTol = 1e-12;

// Minimizes g over [a, b]; returns the abscissa, writes the value.
template <typename F>
double golden_section(F&& g, double a, double b, double& value) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double gc = g(c);
  double gd = g(d);
  while (b - a > kGoldenTol) {
    if (gc <= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - r * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + r * (b - a);
      gd = g(d);
    }
  }
  if (gc <= gd) {
    value = gc;
    return c;
  }
  value = gd;
  return d;
}

CompletionResult solve_coordinate_descent(const Problem& p,
                                          CompletionMethod method,
                                          const CompletionOptions& options) {
  const int m = p.dim();
  Objective f(p);
  std::vector<double> t(m, 0.0);
  double lambda = f(t);

  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    const double before = lambda;
    for (int k = 0; k < m; ++k) {
      auto along = [&](double s) {
        const double saved = t[k];
        t[k] = s;
        const double value = f(t);
        t[k] = saved;
        return value;
      };
      double a = -kLogNine, b = kLogNine, value = 0.0;
      double best = golden_section(along, a, b, value);
      if (!method.bounded()) {
        // Grow the bracket while the minimum sits on one of its edges.
        while (true) {
          const double width = b - a;
          if (best - a < 1e-6 && a > -kLogCap) {
            a = std::max(-kLogCap, a - width);
          } else if (b - best < 1e-6 && b < kLogCap) {
            b = std::min(kLogCap, b + width);
          } else {
            break;
          }
          best = golden_section(along, a, b, value);
        }
      }
      if (value < lambda) {
        t[k] = best;
        lambda = value;
      }
    }
    if (before - lambda < options.tol) return finish(p, t, f(t), sweep, true);
  }
  return finish(p, t, f(t), options.max_sweeps, false);
}

void brute_force_recurse(const Problem& p, Objective& f, int grid_points,
                         const std::vector<double>& lo,
                         const std::vector<double>& hi, int axis,
                         std::vector<double>& t, std::vector<double>& best_t,
                         double& best) {
  if (axis == p.dim()) {
    const double value = f(t);
    if (value < best) {
      best = value;
      best_t = t;
    }
    return;
  }
  for (int g = 0; g < grid_points; ++g) {
    t[axis] = lo[axis] + (hi[axis] - lo[axis]) * g / (grid_points - 1);
    brute_force_recurse(p, f, grid_points, lo, hi, axis + 1, t, best_t, best);
  }
}

}  // namespace

CompletionResult minimize_lambda_max(const IncompletePCM& pcm,
                                     CompletionMethod method,
                                     const CompletionOptions& options) {
  if (!is_connected(representing_graph(pcm))) throw DisconnectedGraphError();
  const Problem problem(pcm, method);
  if (problem.dim() == 0) {
    CompletionResult r;
    r.completed = problem.base;
    r.lambda_star = dominant_eigenvalue(problem.base).lambda_max;
    r.converged = true;
    return r;
  }
  if (options.solver == CompletionSolver::kCoordinateDescent)
    return solve_coordinate_descent(problem, method, options);
  return solve_newton(problem, options);
}

double lambda_at(const IncompletePCM& pcm, std::span<const double> x) {
  const auto slots = pcm.missing_slots();
  if (x.size() != slots.size())
    throw std::invalid_argument("expected one value per missing pair");
  Matrix a = pcm.filled(1.0);
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (!(x[k] > 0.0))
      throw std::invalid_argument("completion values must be positive");
    a(slots[k].i, slots[k].j) = x[k];
    a(slots[k].j, slots[k].i) = 1.0 / x[k];
  }
  return dominant_eigenvalue(a).lambda_max;
}

double brute_force_lambda(const IncompletePCM& pcm, CompletionMethod method,
                          int grid_points, int zoom_levels) {
  const Problem problem(pcm, method);
  const int m = problem.dim();
  if (m > 3)
    throw std::invalid_argument("brute force supports at most 3 missing pairs");
  if (grid_points < 2) throw std::invalid_argument("need at least 2 grid points");
  if (m == 0) return dominant_eigenvalue(problem.base).lambda_max;

  const double box = method.bounded() ? kLogNine : std::log(1e4);
  std::vector<double> lo(m, -box), hi(m, box), t(m), best_t(m);
  Objective f(problem);
  double best = std::numeric_limits<double>::infinity();
  for (int level = 0; level <= zoom_levels; ++level) {
    brute_force_recurse(problem, f, grid_points, lo, hi, 0, t, best_t, best);
    for (int k = 0; k < m; ++k) {
      const double cell = (hi[k] - lo[k]) / (grid_points - 1);
      lo[k] = std::max(-box, best_t[k] - 4.0 * cell);
      hi[k] = std::min(box, best_t[k] + 4.0 * cell);
    }
  }
  return best;
}

}  // namespace pcmri
