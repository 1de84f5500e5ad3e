#pragma once

#include <span>
#include <vector>

namespace cascade {

/// Shell amplitudes V_0..V_r. Reads outside [0, r] return zero.
class ShellState {
 public:
  ShellState() = default;
  /// Throws DomainError if any component is not finite.
  explicit ShellState(std::vector<double> values);

  static ShellState zeros(int r) { return ShellState(std::vector<double>(r + 1, 0.0)); }

  int r() const noexcept { return static_cast<int>(values_.size()) - 1; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](int i) const noexcept {
    return (i < 0 || i > r()) ? 0.0 : values_[static_cast<std::size_t>(i)];
  }

  std::span<const double> values() const noexcept { return values_; }

  /// Copy extended with zero shells up to `new_r` (>= r()).
  ShellState padded(int new_r) const;

  friend bool operator==(const ShellState&, const ShellState&) = default;

 private:
  std::vector<double> values_;
};

}  // namespace cascade
