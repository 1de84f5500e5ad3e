#pragma once

#include <vector>

namespace cascade {

/// Symmetric matrix over shells 0..r storing only the diagonals inside the
/// band. Entries outside the band read as zero and cannot be written.
class SymmetricBandedMatrix {
 public:
  SymmetricBandedMatrix() = default;
  SymmetricBandedMatrix(int r, int bandwidth);

  int r() const noexcept { return r_; }
  int bandwidth() const noexcept { return bandwidth_; }

  double operator()(int i, int j) const noexcept;
  /// Sets (i, j) and (j, i). Throws RangeError outside the band.
  void set(int i, int j, double value);

  /// Largest |i - j| holding a nonzero entry.
  int effective_bandwidth() const noexcept;
  bool is_zero() const noexcept { return effective_bandwidth() < 0; }

  /// Sum_{i,j} M_ij x_i x_j over the stored band.
  double quadratic_form(const std::vector<double>& x) const;

  friend bool operator==(const SymmetricBandedMatrix&, const SymmetricBandedMatrix&) = default;

 private:
  int r_ = -1;
  int bandwidth_ = 0;
  // diagonals_[d][i] holds entry (i, i + d).
  std::vector<std::vector<double>> diagonals_;
};

/// Coupling matrix h_ij of the second invariant.
struct HMatrix {
  SymmetricBandedMatrix h;
};

/// Quadratic-form weights W_ij of Q(V) = sum W_ij V_i V_j.
struct WeightMatrix {
  SymmetricBandedMatrix w;

  double operator()(int i, int j) const noexcept { return w(i, j); }
  int r() const noexcept { return w.r(); }
};

/// Diagonal weights w_i.
WeightMatrix diagonal_weights(const std::vector<double>& diag);
/// Energy weights (1 - 1/p) p^i.
WeightMatrix energy_weights(double p, int r);
/// Diagonal weights base^(exponent * i); the building block for power-law
/// invariants p^(beta i).
WeightMatrix power_weights(double base, double exponent, int r);
/// W_ij = (1 - 1/p)^2 p^i p^j h_ij, the weights that turn h into the second
/// invariant.
WeightMatrix helicity_weights(const HMatrix& h, double p);

}  // namespace cascade
