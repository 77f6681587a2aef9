#include "pcmri/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "pcmri/rng.hpp"
#include "pcmri/saaty.hpp"
#include "pcmri/spectral.hpp"

namespace pcmri {

namespace {

double completed_ci(const IncompletePCM& pcm, CompletionMethod method,
                    std::uint64_t index) {
  const CompletionResult r = minimize_lambda_max(pcm, method);
  if (!r.converged) throw SampleError(index, "completion did not converge");
  return consistency_index(r.lambda_star, pcm.size());
}

// Runs body(i) for i < count and stores results; the first failing index
// (smallest) is rethrown after the loop.
template <typename Body>
std::vector<double> parallel_map(std::uint64_t count, Body&& body) {
  std::vector<double> out(count);
  const auto total = static_cast<std::int64_t>(count);
  std::uint64_t failed = std::numeric_limits<std::uint64_t>::max();
  std::string message;
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < total; ++i) {
    try {
      out[i] = body(static_cast<std::uint64_t>(i));
    } catch (const std::exception& e) {
#pragma omp critical(pcmri_kernel_failure)
      if (static_cast<std::uint64_t>(i) < failed) {
        failed = static_cast<std::uint64_t>(i);
        message = e.what();
      }
    }
  }
  if (failed != std::numeric_limits<std::uint64_t>::max())
    throw SampleError(failed, message);
  return out;
}

template <typename Body>
std::vector<double> serial_map(std::uint64_t count, Body&& body) {
  std::vector<double> out(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    try {
      out[i] = body(i);
    } catch (const SampleError&) {
      throw;
    } catch (const std::exception& e) {
      throw SampleError(i, e.what());
    }
  }
  return out;
}

double blocked_sum(const double* p, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += p[k];
    return s;
  }
  const std::size_t half = n / 2;
  return blocked_sum(p, half) + blocked_sum(p + half, n - half);
}

}  // namespace

IncompletePCM sample_pcm(const GraphClass& cls, std::uint64_t seed,
                         std::uint64_t sample_index) {
  const auto& values = saaty_values();
  IncompletePCM pcm(cls.n);
  CounterRng rng(seed, sample_index);
  const ComparisonGraph g = cls.representative();
  for (const Slot& e : g.edges())
    pcm.set_comparison(e.i, e.j, values[rng.below(SaatyValue::kCount)]);
  return pcm;
}

IncompletePCM enumerated_pcm(const GraphClass& cls, std::uint64_t assignment) {
  const auto& values = saaty_values();
  IncompletePCM pcm(cls.n);
  const ComparisonGraph g = cls.representative();
  for (const Slot& e : g.edges()) {
    pcm.set_comparison(e.i, e.j, values[assignment % SaatyValue::kCount]);
    assignment /= SaatyValue::kCount;
  }
  return pcm;
}

std::uint64_t assignment_count(const GraphClass& cls) {
  const int edges = pair_count(cls.n) - cls.m;
  std::uint64_t total = 1;
  for (int k = 0; k < edges; ++k) {
    if (total > std::numeric_limits<std::int64_t>::max() / SaatyValue::kCount)
      throw std::overflow_error("assignment count overflows");
    total *= SaatyValue::kCount;
  }
  return total;
}

namespace kernels {

std::vector<double> sampled_ci_serial(const GraphClass& cls, CompletionMethod method,
                                      std::uint64_t seed, std::uint64_t samples) {
  return serial_map(samples, [&](std::uint64_t s) {
    return completed_ci(sample_pcm(cls, seed, s), method, s);
  });
}

std::vector<double> sampled_ci_parallel(const GraphClass& cls, CompletionMethod method,
                                        std::uint64_t seed, std::uint64_t samples) {
  return parallel_map(samples, [&](std::uint64_t s) {
    return completed_ci(sample_pcm(cls, seed, s), method, s);
  });
}

std::vector<double> enumerated_ci_serial(const GraphClass& cls, CompletionMethod method) {
  return serial_map(assignment_count(cls), [&](std::uint64_t a) {
    return completed_ci(enumerated_pcm(cls, a), method, a);
  });
}

std::vector<double> enumerated_ci_parallel(const GraphClass& cls,
                                           CompletionMethod method) {
  return parallel_map(assignment_count(cls), [&](std::uint64_t a) {
    return completed_ci(enumerated_pcm(cls, a), method, a);
  });
}

std::uint64_t count_acceptable_serial(std::span<const double> ci, double ri) {
  std::uint64_t count = 0;
  for (double c : ci) count += is_acceptable(consistency_ratio(c, ri)) ? 1 : 0;
  return count;
}

std::uint64_t count_acceptable_parallel(std::span<const double> ci, double ri) {
  if (!(ri > 0.0)) throw std::domain_error("random index must be positive");
  std::uint64_t count = 0;
  const auto total = static_cast<std::int64_t>(ci.size());
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (std::int64_t i = 0; i < total; ++i)
    count += is_acceptable(ci[i] / ri) ? 1 : 0;
  return count;
}

}  // namespace kernels

double pairwise_sum(std::span<const double> values) {
  return blocked_sum(values.data(), values.size());
}

int apply_thread_limit_from_env() {
  if (const char* env = std::getenv("PCM_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1)
      omp_set_num_threads(static_cast<int>(std::min<long>(cap, omp_get_max_threads())));
  }
  return omp_get_max_threads();
}

}  // namespace pcmri
