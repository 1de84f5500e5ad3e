#include "cascade/banded_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <utility>
#include <string>

#include "cascade/errors.hpp"
#include "numeric.hpp"

namespace cascade {

SymmetricBandedMatrix::SymmetricBandedMatrix(int r, int bandwidth)
    : r_(r), bandwidth_(bandwidth) {
  if (r < 0) throw RangeError("matrix order must be >= 1");
  if (bandwidth < 0) throw RangeError("bandwidth must be >= 0");
  diagonals_.resize(static_cast<std::size_t>(bandwidth) + 1);
  for (int d = 0; d <= bandwidth; ++d) {
    diagonals_[d].assign(static_cast<std::size_t>(std::max(r + 1 - d, 0)), 0.0);
  }
}

double SymmetricBandedMatrix::operator()(int i, int j) const noexcept {
  if (i > j) std::swap(i, j);
  const int d = j - i;
  if (i < 0 || j > r_ || d > bandwidth_) return 0.0;
  return diagonals_[d][i];
}

void SymmetricBandedMatrix::set(int i, int j, double value) {
  if (i > j) std::swap(i, j);
  const int d = j - i;
  if (i < 0 || j > r_ || d > bandwidth_) {
    throw RangeError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") is outside the band");
  }
  diagonals_[d][i] = value;
}

int SymmetricBandedMatrix::effective_bandwidth() const noexcept {
  for (int d = bandwidth_; d >= 0; --d) {
    for (double x : diagonals_[d]) {
      if (x != 0.0) return d;
    }
  }
  return -1;
}

double SymmetricBandedMatrix::quadratic_form(const std::vector<double>& x) const {
  double sum = 0.0;
  for (int d = 0; d <= bandwidth_; ++d) {
    const double factor = d == 0 ? 1.0 : 2.0;
    for (std::size_t i = 0; i < diagonals_[d].size(); ++i) {
      sum += factor * diagonals_[d][i] * x[i] * x[i + d];
    }
  }
  return sum;
}

WeightMatrix diagonal_weights(const std::vector<double>& diag) {
  WeightMatrix w{SymmetricBandedMatrix(static_cast<int>(diag.size()) - 1, 0)};
  for (std::size_t i = 0; i < diag.size(); ++i) w.w.set(int(i), int(i), diag[i]);
  return w;
}

WeightMatrix energy_weights(double p, int r) {
  std::vector<double> d(r + 1);
  for (int i = 0; i <= r; ++i) d[i] = (1.0 - 1.0 / p) * detail::pow_int(p, i);
  return diagonal_weights(d);
}

WeightMatrix power_weights(double base, double exponent, int r) {
  std::vector<double> d(r + 1);
  for (int i = 0; i <= r; ++i) d[i] = std::pow(base, exponent * i);
  return diagonal_weights(d);
}

WeightMatrix helicity_weights(const HMatrix& h, double p) {
  const int r = h.h.r();
  const int band = h.h.bandwidth();
  const double q = (1.0 - 1.0 / p) * (1.0 - 1.0 / p);
  WeightMatrix w{SymmetricBandedMatrix(r, band)};
  for (int i = 0; i <= r; ++i) {
    for (int j = i; j <= std::min(r, i + band); ++j) {
      w.w.set(i, j, q * detail::pow_int(p, i) * detail::pow_int(p, j) * h.h(i, j));
    }
  }
  return w;
}

}  // namespace cascade
