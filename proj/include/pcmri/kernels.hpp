#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pcmri/completion.hpp"
#include "pcmri/graph_enum.hpp"
#include "pcmri/pcm.hpp"

// Data-parallel inner loops of the random-index computation.
//
// Every kernel comes as an OpenMP version and a plain serial reference.
// Per-item results depend only on (class, seed, index), so both versions
// return bit-identical vectors; reductions go through pairwise_sum, whose
// summation tree depends only on the input length.

namespace pcmri {

/// A completion failed inside a kernel. Carries the sample (or assignment)
/// index.
class SampleError : public std::runtime_error {
 public:
  SampleError(std::uint64_t index, const std::string& what)
      : std::runtime_error("sample " + std::to_string(index) + ": " + what),
        index_(index) {}
  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t index_;
};

/// Matrix with the graph of cls (representative labeling) whose known
/// upper-triangle entries, in row-major order, are drawn i.i.d. uniformly
/// from the 17 Saaty values using CounterRng(seed, sample_index).
IncompletePCM sample_pcm(const GraphClass& cls, std::uint64_t seed,
                         std::uint64_t sample_index);

/// Matrix number `assignment` in the enumeration of all 17^e Saaty
/// assignments: known edge k (row-major) takes value index
/// (assignment / 17^k) % 17.
IncompletePCM enumerated_pcm(const GraphClass& cls, std::uint64_t assignment);

/// 17^(known edges) of the class. Throws std::overflow_error past 2^63.
std::uint64_t assignment_count(const GraphClass& cls);

namespace kernels {

/// CI of the optimal completion of sample_pcm(cls, seed, s) for s < samples.
std::vector<double> sampled_ci_serial(const GraphClass& cls, CompletionMethod method,
                                      std::uint64_t seed, std::uint64_t samples);
std::vector<double> sampled_ci_parallel(const GraphClass& cls, CompletionMethod method,
                                        std::uint64_t seed, std::uint64_t samples);

/// CI of the optimal completion of every enumerated_pcm(cls, a).
std::vector<double> enumerated_ci_serial(const GraphClass& cls, CompletionMethod method);
std::vector<double> enumerated_ci_parallel(const GraphClass& cls, CompletionMethod method);

/// Number of values with consistency_ratio(ci, ri) acceptable.
std::uint64_t count_acceptable_serial(std::span<const double> ci, double ri);
std::uint64_t count_acceptable_parallel(std::span<const double> ci, double ri);

}  // namespace kernels

/// Sum by recursive halving: [0, n/2) and [n/2, n), blocks of at most 8
/// summed left to right.
double pairwise_sum(std::span<const double> values);

/// Caps the OpenMP worker count at the value of PCM_THREADS, if set.
/// Returns the resulting maximum thread count.
int apply_thread_limit_from_env();

}  // namespace pcmri
