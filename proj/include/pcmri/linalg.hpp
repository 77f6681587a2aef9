#pragma once

#include <Eigen/Core>

namespace pcmri {

/// Largest matrix order handled by the library. Storage for every
/// matrix and vector below lives inline, so the hot loops never allocate.
inline constexpr int kMaxOrder = 10;

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::ColMajor, kMaxOrder, kMaxOrder>;
using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor,
                             kMaxOrder, 1>;

}  // namespace pcmri
