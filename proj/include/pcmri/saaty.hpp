#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace pcmri {

/// One of the 17 ratios {1/9, ..., 1/2, 1, 2, ..., 9} of the Saaty scale.
///
/// Values are held as an exact integer ratio; value() is the closest double
/// to that rational.
class SaatyValue {
 public:
  static constexpr std::size_t kCount = 17;

  /// Index 0 is 1/9, index 8 is 1, index 16 is 9.
  static constexpr SaatyValue from_index(std::size_t index) {
    return index < 8 ? SaatyValue(1, static_cast<int>(9 - index))
                     : SaatyValue(static_cast<int>(index - 7), 1);
  }

  static constexpr std::array<SaatyValue, kCount> all() {
    std::array<SaatyValue, kCount> out{};
    for (std::size_t k = 0; k < kCount; ++k) out[k] = from_index(k);
    return out;
  }

  constexpr SaatyValue() = default;

  constexpr int numerator() const { return num_; }
  constexpr int denominator() const { return den_; }
  constexpr std::size_t index() const {
    return den_ == 1 ? static_cast<std::size_t>(num_ + 7)
                     : static_cast<std::size_t>(9 - den_);
  }
  constexpr SaatyValue reciprocal() const { return SaatyValue(den_, num_); }

  double value() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// "3", "1/7", ...
  std::string to_string() const;

  friend constexpr bool operator==(SaatyValue, SaatyValue) = default;

 private:
  constexpr SaatyValue(int num, int den) : num_(num), den_(den) {}

  int num_ = 1;
  int den_ = 1;
};

/// Double values of the scale in index order.
const std::array<double, SaatyValue::kCount>& saaty_values();

}  // namespace pcmri
