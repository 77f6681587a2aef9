#include "pcmri/saaty.hpp"

namespace pcmri {

std::string SaatyValue::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

const std::array<double, SaatyValue::kCount>& saaty_values() {
  static const std::array<double, SaatyValue::kCount> values = [] {
    std::array<double, SaatyValue::kCount> out{};
    for (std::size_t k = 0; k < SaatyValue::kCount; ++k)
      out[k] = SaatyValue::from_index(k).value();
    return out;
  }();
  return values;
}

}  // namespace pcmri
