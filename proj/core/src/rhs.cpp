#include "cascade/rhs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cascade/errors.hpp"
#include "numeric.hpp"

namespace cascade {

Dissipation Dissipation::none(int r) {
  Dissipation d;
  d.r_ = r;
  d.diag_.assign(static_cast<std::size_t>(r) + 1, 0.0);
  return d;
}

Dissipation Dissipation::diagonal_law(double nu0, double p, int r) {
  if (!(nu0 >= 0.0) || !std::isfinite(nu0)) throw ConfigError("nu0 must be finite and >= 0");
  Dissipation d;
  d.r_ = r;
  d.nu0_ = nu0;
  d.diag_.resize(static_cast<std::size_t>(r) + 1);
  for (int i = 0; i <= r; ++i) d.diag_[i] = nu0 * detail::pow_int(p, 2 * i);
  for (double x : d.diag_) {
    if (!std::isfinite(x)) throw ConfigError("dissipation law overflows at r = " + std::to_string(r));
  }
  return d;
}

Dissipation Dissipation::matrix(int r, std::vector<double> row_major) {
  const auto n = static_cast<std::size_t>(r) + 1;
  if (row_major.size() != n * n) {
    throw ConfigError("dissipation matrix has " + std::to_string(row_major.size()) +
                      " entries, expected " + std::to_string(n * n));
  }
  for (double x : row_major) {
    if (!std::isfinite(x)) throw ConfigError("dissipation matrix entry is not finite");
  }
  Dissipation d;
  d.r_ = r;
  d.dense_ = std::move(row_major);
  return d;
}

bool Dissipation::is_zero() const noexcept {
  auto zero = [](double x) { return x == 0.0; };
  return std::all_of(diag_.begin(), diag_.end(), zero) &&
         std::all_of(dense_.begin(), dense_.end(), zero);
}

double Dissipation::operator()(int i, int j) const noexcept {
  if (i < 0 || j < 0 || i > r_ || j > r_) return 0.0;
  if (!dense_.empty()) return dense_[static_cast<std::size_t>(i) * (r_ + 1) + j];
  return i == j ? diag_[i] : 0.0;
}

std::vector<double> Dissipation::full_matrix() const {
  const int n = r_ + 1;
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = (*this)(i, j);
  }
  return out;
}

double Dissipation::max_diagonal() const noexcept {
  double m = 0.0;
  for (int i = 0; i <= r_; ++i) m = std::max(m, (*this)(i, i));
  return m;
}

void Dissipation::subtract_from(const std::vector<double>& v, std::vector<double>& out) const {
  const auto n = static_cast<std::size_t>(r_) + 1;
  if (!dense_.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += dense_[i * n + j] * v[j];
      out[i] -= acc;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] -= diag_[i] * v[i];
  }
}

CascadeSystem CascadeSystem::inviscid(CouplingTable table) {
  const int r = table.r();
  return CascadeSystem{std::move(table), Dissipation::none(r), Forcing::none(r)};
}

std::vector<double> quadratic_rhs(const CouplingTable& table, const std::vector<double>& v) {
  std::vector<double> out(static_cast<std::size_t>(table.r()) + 1, 0.0);
  for (const auto& e : table.entries()) {
    out[e.shell] += e.c * v[e.shell + e.a] * v[e.shell + e.b];
  }
  return out;
}

void eval_rhs_into(const CascadeSystem& system, const std::vector<double>& v,
                   std::vector<double>& out) {
  out.assign(v.size(), 0.0);
  for (const auto& e : system.table.entries()) {
    out[e.shell] += e.c * v[e.shell + e.a] * v[e.shell + e.b];
  }
  system.nu.subtract_from(v, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += system.forcing.f[i];
}

namespace {

void check_dimensions(const CouplingTable& table, const Dissipation& nu, const Forcing& f,
                      const ShellState& state) {
  const int r = table.r();
  if (state.r() != r || nu.r() != r || static_cast<int>(f.f.size()) != r + 1) {
    throw ConfigError("eval_rhs: dimension mismatch (table r = " + std::to_string(r) +
                      ", state r = " + std::to_string(state.r()) + ", dissipation r = " +
                      std::to_string(nu.r()) + ", forcing size = " +
                      std::to_string(f.f.size()) + ")");
  }
}

}  // namespace

std::vector<double> eval_rhs(const CouplingTable& table, const Dissipation& nu, const Forcing& f,
                             const ShellState& state) {
  check_dimensions(table, nu, f, state);
  std::vector<double> v(state.values().begin(), state.values().end());
  std::vector<double> out(v.size(), 0.0);
  for (const auto& e : table.entries()) {
    out[e.shell] += e.c * v[e.shell + e.a] * v[e.shell + e.b];
  }
  nu.subtract_from(v, out);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += f.f[i];
    if (!std::isfinite(out[i])) {
      throw NumericError("right-hand side overflow at shell " + std::to_string(i), int(i));
    }
  }
  return out;
}

std::vector<double> eval_rhs(const CascadeSystem& system, const ShellState& state) {
  return eval_rhs(system.table, system.nu, system.forcing, state);
}

}  // namespace cascade
