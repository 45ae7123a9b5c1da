#include "trotterion/types.hpp"

#include <bit>

namespace trotterion {

void require_spin_count(std::size_t n) {
  if (n == 0 || n > kMaxSpins) {
    throw DimensionError("spin count " + std::to_string(n) + " outside 1.." + std::to_string(kMaxSpins));
  }
}

std::size_t spins_for_dimension(Eigen::Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  const auto n = static_cast<std::size_t>(std::countr_zero(static_cast<std::uint64_t>(dim)));
  require_spin_count(n);
  return n;
}

}  // namespace trotterion
