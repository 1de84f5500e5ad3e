#include "cascade/shell_state.hpp"

#include <cmath>
#include <string>

#include "cascade/errors.hpp"

namespace cascade {

ShellState::ShellState(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("shell state component V_" + std::to_string(i) + " is not finite");
    }
  }
}

ShellState ShellState::padded(int new_r) const {
  if (new_r < r()) throw RangeError("padded: new r is smaller than current r");
  std::vector<double> v(values_);
  v.resize(static_cast<std::size_t>(new_r) + 1, 0.0);
  return ShellState(std::move(v));
}

}  // namespace cascade
