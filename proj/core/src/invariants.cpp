#include "cascade/invariants.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>

#include <Eigen/SVD>

#include "cascade/errors.hpp"
#include "cascade/random.hpp"
#include "cascade/rhs.hpp"
#include "numeric.hpp"

namespace cascade {

EnergyResult energy(const ShellState& state, double p) {
  EnergyResult out;
  out.per_shell.resize(state.size());
  const double q = 1.0 - 1.0 / p;
  for (int i = 0; i <= state.r(); ++i) {
    out.per_shell[i] = q * detail::pow_int(p, i) * state[i] * state[i];
    out.total += out.per_shell[i];
  }
  return out;
}

double quadratic_form(const WeightMatrix& w, const ShellState& state) {
  if (w.r() != state.r()) throw ConfigError("quadratic_form: dimension mismatch");
  return w.w.quadratic_form(std::vector<double>(state.values().begin(), state.values().end()));
}

double helicity(const ShellState& state, const HMatrix& h, double p) {
  return quadratic_form(helicity_weights(h, p), state);
}

namespace {

using Monomial = std::tuple<int, int, int>;

Monomial sorted_monomial(int x, int y, int z) {
  if (x > y) std::swap(x, y);
  if (y > z) std::swap(y, z);
  if (x > y) std::swap(x, y);
  return {x, y, z};
}

int checked_bandwidth(const WeightMatrix& w) {
  const int band = w.w.effective_bandwidth();
  if (band > 1) {
    throw UnsupportedError("weight matrix bandwidth " + std::to_string(band) +
                           " is not supported (at most 1)");
  }
  return band;
}

}  // namespace

std::vector<MonomialResidual> expand_quadratic_derivative(const CouplingTable& table,
                                                          const WeightMatrix& w) {
  if (w.r() != table.r()) throw ConfigError("quadratic_derivative: dimension mismatch");
  const int band = checked_bandwidth(w);
  std::map<Monomial, MonomialResidual> acc;
  if (band < 0) return {};
  const int r = table.r();
  for (const auto& e : table.entries()) {
    for (int j = std::max(0, e.shell - band); j <= std::min(r, e.shell + band); ++j) {
      const double wij = w(e.shell, j);
      if (wij == 0.0) continue;
      const double term = 2.0 * wij * e.c;
      auto key = sorted_monomial(j, e.shell + e.a, e.shell + e.b);
      auto& m = acc[key];
      std::tie(m.n1, m.n2, m.n3) = key;
      m.coefficient += term;
      m.magnitude += std::abs(term);
    }
  }
  std::vector<MonomialResidual> out;
  out.reserve(acc.size());
  for (auto& [key, m] : acc) out.push_back(m);
  return out;
}

std::vector<MonomialResidual> quadratic_derivative(const CouplingTable& table,
                                                   const WeightMatrix& w, double tol) {
  auto all = expand_quadratic_derivative(table, w);
  std::erase_if(all, [tol](const MonomialResidual& m) { return m.relative() <= tol; });
  return all;
}

std::string to_string(Verdict v) { return v == Verdict::Conserved ? "conserved" : "violated"; }

AuditReport audit_conservation(const CouplingTable& table, const WeightMatrix& w, int n_samples,
                               std::uint64_t seed, double tol, std::string quantity) {
  if (n_samples < 1) throw ConfigError("audit_conservation: n_samples must be >= 1");
  if (w.r() != table.r()) throw ConfigError("audit_conservation: dimension mismatch");
  const int band = std::max(checked_bandwidth(w), 0);
  const int r = table.r();

  AuditReport report;
  report.quantity = std::move(quantity);
  report.seed = seed;
  report.n_samples = n_samples;
  report.tol = tol;

  const auto system = CascadeSystem::inviscid(table);
  for (int k = 0; k < n_samples; ++k) {
    UniformSampler sampler(seed, static_cast<std::uint64_t>(k));
    const ShellState state(sampler.uniform_vector(static_cast<std::size_t>(r) + 1, -1.0, 1.0));
    const auto rhs = eval_rhs(system, state);

    double derivative = 0.0;
    for (int i = 0; i <= r; ++i) {
      for (int j = std::max(0, i - band); j <= std::min(r, i + band); ++j) {
        derivative += 2.0 * w(i, j) * state[j] * rhs[i];
      }
    }
    double magnitude = 0.0;
    for (const auto& e : table.entries()) {
      const double vv = std::abs(e.c * state[e.shell + e.a] * state[e.shell + e.b]);
      for (int j = std::max(0, e.shell - band); j <= std::min(r, e.shell + band); ++j) {
        magnitude += 2.0 * std::abs(w(e.shell, j) * state[j]) * vv;
      }
    }
    report.max_sampled_derivative = std::max(report.max_sampled_derivative, std::abs(derivative));
    if (magnitude > 0.0) {
      report.max_sampled_relative =
          std::max(report.max_sampled_relative, std::abs(derivative) / magnitude);
    }
  }

  report.symbolic_residuals = quadratic_derivative(table, w, tol);
  report.verdict = (report.max_sampled_relative <= tol && report.symbolic_residuals.empty())
                       ? Verdict::Conserved
                       : Verdict::Violated;
  return report;
}

nlohmann::json to_json(const AuditReport& report) {
  nlohmann::json residuals = nlohmann::json::array();
  for (const auto& m : report.symbolic_residuals) {
    residuals.push_back({{"monomial", {m.n1, m.n2, m.n3}},
                         {"coefficient", m.coefficient},
                         {"relative", m.relative()}});
  }
  return {{"quantity", report.quantity},
          {"seed", report.seed},
          {"n_samples", report.n_samples},
          {"tol", report.tol},
          {"max_sampled_derivative", report.max_sampled_derivative},
          {"max_sampled_relative", report.max_sampled_relative},
          {"symbolic_residuals", residuals},
          {"verdict", to_string(report.verdict)}};
}

namespace {
constexpr double kBasisNoise = 1e-13;

Eigen::MatrixXd normalized_rows(Eigen::MatrixXd a) {
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const double scale = a.row(r).cwiseAbs().maxCoeff();
    if (scale > 0.0) a.row(r) /= scale;
  }
  return a;
}

struct NullSpace {
  std::vector<double> singular_values;
  std::vector<Eigen::VectorXd> vectors;
};

// Null space of raw * diag(d), mapped back to the original unknowns.
NullSpace null_vectors(const Eigen::MatrixXd& raw, const Eigen::VectorXd& d) {
  const Eigen::MatrixXd a = normalized_rows(raw * d.asDiagonal());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  NullSpace out;
  out.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
  const double cutoff = kRankTolerance * (sigma.size() > 0 ? sigma(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  const Eigen::MatrixXd& v = svd.matrixV();
  for (Eigen::Index k = rank; k < v.cols(); ++k) {
    Eigen::VectorXd y = v.col(k);
    // Scaled coordinates are comparable, so tiny entries are roundoff.
    const double noise = kBasisNoise * y.cwiseAbs().maxCoeff();
    for (Eigen::Index c = 0; c < y.size(); ++c) {
      if (std::abs(y(c)) <= noise) y(c) = 0.0;
    }
    out.vectors.push_back(y.cwiseProduct(d));
  }
  return out;
}

}  // namespace

InvariantBasis solve_invariant_weights(const CouplingTable& table, int bandwidth) {
  if (bandwidth != 0 && bandwidth != 1) {
    throw UnsupportedError("solve_invariant_weights: bandwidth must be 0 or 1");
  }
  const int r = table.r();
  const int n_diag = r + 1;
  const int n_unknowns = n_diag + (bandwidth == 1 ? r : 0);
  auto unknown = [n_diag](int i, int j) { return i == j ? i : n_diag + std::min(i, j); };

  // Row per cubic monomial, column per free entry of W.
  std::map<Monomial, std::map<int, double>> rows;
  for (const auto& e : table.entries()) {
    for (int j = std::max(0, e.shell - bandwidth); j <= std::min(r, e.shell + bandwidth); ++j) {
      auto& row = rows[sorted_monomial(j, e.shell + e.a, e.shell + e.b)];
      row[unknown(e.shell, j)] += 2.0 * e.c;
    }
  }

  InvariantBasis out;
  out.bandwidth = bandwidth;
  out.rank_cutoff = kRankTolerance;

  auto to_weights = [&](const Eigen::VectorXd& x) {
    WeightMatrix w{SymmetricBandedMatrix(r, bandwidth)};
    for (int i = 0; i <= r; ++i) w.w.set(i, i, x(i));
    if (bandwidth == 1) {
      for (int i = 0; i < r; ++i) w.w.set(i, i + 1, x(n_diag + i));
    }
    return w;
  };

  if (rows.empty()) {
    out.degenerate = true;
    for (int k = 0; k < n_unknowns; ++k) {
      out.basis.push_back(to_weights(Eigen::VectorXd::Unit(n_unknowns, k)));
    }
    return out;
  }

  Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), n_unknowns);
  Eigen::Index row_index = 0;
  for (const auto& [monomial, coeffs] : rows) {
    for (const auto& [col, value] : coeffs) raw(row_index, col) = value;
    ++row_index;
  }

  // First pass: unknowns equilibrated by column magnitude.
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n_unknowns);
  {
    const Eigen::MatrixXd a = normalized_rows(raw);
    for (int c = 0; c < n_unknowns; ++c) {
      const double m = a.col(c).cwiseAbs().maxCoeff();
      if (m > 0.0) d(c) = 1.0 / m;
    }
  }
  auto first = null_vectors(raw, d);
  out.singular_values = first.singular_values;

  // Second pass: unknowns rescaled by the size of the first-pass solution, so
  // weights spanning many decades keep their relative accuracy.
  Eigen::VectorXd size = Eigen::VectorXd::Zero(n_unknowns);
  for (const auto& x : first.vectors) size = size.cwiseMax(x.cwiseAbs());
  for (int c = 0; c < n_unknowns; ++c) {
    if (size(c) == 0.0) size(c) = 1.0;
  }
  auto second = null_vectors(raw, size);
  const auto& chosen = second.vectors.size() == first.vectors.size() ? second : first;

  for (Eigen::VectorXd x : chosen.vectors) {
    Eigen::Index arg = 0;
    x.cwiseAbs().maxCoeff(&arg);
    x /= x(arg);
    out.basis.push_back(to_weights(x));
  }

  for (const auto& w : out.basis) {
    for (const auto& m : expand_quadratic_derivative(table, w)) {
      out.max_basis_residual = std::max(out.max_basis_residual, m.relative());
    }
  }
  return out;
}

nlohmann::json to_json(const InvariantBasis& basis) {
  nlohmann::json vectors = nlohmann::json::array();
  for (const auto& w : basis.basis) {
    std::vector<double> diag;
    std::vector<double> off;
    for (int i = 0; i <= w.r(); ++i) diag.push_back(w(i, i));
    if (basis.bandwidth == 1) {
      for (int i = 0; i < w.r(); ++i) off.push_back(w(i, i + 1));
    }
    nlohmann::json entry = {{"diagonal", diag}};
    if (basis.bandwidth == 1) entry["off_diagonal"] = off;
    vectors.push_back(entry);
  }
  return {{"bandwidth", basis.bandwidth},
          {"dimension", basis.dimension()},
          {"degenerate", basis.degenerate},
          {"rank_cutoff", basis.rank_cutoff},
          {"singular_values", basis.singular_values},
          {"max_basis_residual", basis.max_basis_residual},
          {"basis", vectors}};
}

}  // namespace cascade
