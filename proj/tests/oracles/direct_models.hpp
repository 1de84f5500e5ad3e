#pragma once

// Test-only reference implementations. Each evaluates a model's quadratic
// right-hand side straight from its closed-form expression, term by term,
// with V_i = 0 outside [0, r]. Nothing here goes through CouplingTable.

#include <cmath>
#include <functional>
#include <vector>

namespace cascade::oracle {

using Vec = std::vector<double>;

inline double at(const Vec& v, int i) {
  return (i < 0 || i >= static_cast<int>(v.size())) ? 0.0 : v[static_cast<std::size_t>(i)];
}

inline Vec s2_diag_rhs(double p, double g, double h0, const Vec& v) {
  const int r = static_cast<int>(v.size()) - 1;
  Vec out(v.size());
  for (int i = 0; i <= r; ++i) {
    const double pre = h0 * std::pow(1 - 1 / p, 3) * std::pow(p, (g + 2) * i);
    out[i] = pre * (std::pow(p, 3) * (std::pow(p, g) - std::pow(p, 2 * g)) * at(v, i + 1) * at(v, i + 2) +
                    (std::pow(p, g) - std::pow(p, -g)) * at(v, i - 1) * at(v, i + 1) +
                    std::pow(p, -3) * (std::pow(p, -2 * g) - std::pow(p, -g)) * at(v, i - 2) * at(v, i - 1));
  }
  return out;
}

inline Vec s3_diag_rhs(double p, double g, double h0, const Vec& v) {
  const int r = static_cast<int>(v.size()) - 1;
  auto P = [p](double e) { return std::pow(p, e); };
  Vec out(v.size());
  for (int i = 0; i <= r; ++i) {
    auto V = [&](int k) { return at(v, k); };
    const double pre = h0 * std::pow(1 - 1 / p, 3) * P((g + 2) * i);
    out[i] = pre * (P(5) * (P(3 * g) - P(2 * g)) * V(i + 3) * V(i + 2) +
                    P(4) * (P(3 * g) - P(g)) * V(i + 3) * V(i + 1) +
                    P(3) * (P(2 * g) - P(g)) * V(i + 2) * V(i + 1) +
                    p * (P(-g) - P(2 * g)) * V(i - 1) * V(i + 2) +
                    (P(-g) - P(g)) * V(i - 1) * V(i + 1) +
                    P(-1) * (P(-2 * g) - P(g)) * V(i - 2) * V(i + 1) +
                    P(-3) * (P(-g) - P(-2 * g)) * V(i - 1) * V(i - 2) +
                    P(-4) * (P(-g) - P(-3 * g)) * V(i - 1) * V(i - 3) +
                    P(-5) * (P(-2 * g) - P(-3 * g)) * V(i - 2) * V(i - 3));
  }
  return out;
}

inline Vec s2_offdiag_rhs(double p, double g, double h0, const Vec& v) {
  const int r = static_cast<int>(v.size()) - 1;
  const int n = r;
  auto P = [p](double e) { return std::pow(p, e); };
  auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  Vec out(v.size());
  for (int i = 0; i <= r; ++i) {
    auto V = [&](int k) { return at(v, k); };
    const double pre = h0 * std::pow(1 - 1 / p, 3) * P((g + 3) * i);
    out[i] = pre * (P(-3) * (P(-g - 2) * V(i - 2) * V(i - 2) + V(i - 2) * V(i) -
                             P(-2 * g - 3) * V(i - 1) * V(i - 3) -
                             (1 - d(i, 1)) * P(-g - 1) * V(i - 1) * V(i - 1)) +
                    P(-g - 2) * V(i + 1) * V(i - 2) + (1 - d(i, 0)) * V(i + 1) * V(i) -
                    (1 - d(i, n)) * P(g) * V(i - 1) * V(i) - P(2 * g + 2) * V(i - 1) * V(i + 2) +
                    P(3) * ((1 - d(i, n - 1)) * P(2 * g + 1) * V(i + 1) * V(i + 1) +
                            P(3 * g + 3) * V(i + 1) * V(i + 3) - P(g) * V(i + 2) * V(i) -
                            P(2 * g + 2) * V(i + 2) * V(i + 2)));
  }
  return out;
}

inline Vec goy_rhs(double lambda, double eps, double a, const Vec& v) {
  const int r = static_cast<int>(v.size()) - 1;
  Vec out(v.size());
  for (int i = 0; i <= r; ++i) {
    out[i] = a * std::pow(lambda, i) *
             (at(v, i + 1) * at(v, i + 2) - eps / lambda * at(v, i - 1) * at(v, i + 1) +
              (eps - 1) / (lambda * lambda) * at(v, i - 2) * at(v, i - 1));
  }
  return out;
}

// The general range-s sum, evaluated literally over every (j, k, l) in
// [0, 2s]^3 and every m in [0, r] with a dense h.
inline Vec general_rhs(double p, int s, double alpha, const std::vector<Vec>& h, const Vec& v) {
  const int r = static_cast<int>(v.size()) - 1;
  auto theta = [](int x, int y) { return x > y ? 1.0 : (x < y ? -1.0 : 0.0); };
  auto H = [&](int x, int y) {
    return (x < 0 || y < 0 || x > r || y > r) ? 0.0 : h[x][y];
  };
  Vec out(v.size(), 0.0);
  for (int i = 0; i <= r; ++i) {
    double sum = 0.0;
    for (int j = 0; j <= 2 * s; ++j)
      for (int k = 0; k <= 2 * s; ++k)
        for (int l = 0; l <= 2 * s; ++l) {
          if (j + k + l != 3 * s) continue;
          const double t = theta(s, j) * theta(s, k) * theta(s, l);
          if (t == 0.0) continue;
          const double e = -alpha * (std::max(s, j) + std::max(s, k) + std::max(s, l)) - j - k;
          double inner = 0.0;
          for (int m = 0; m <= r; ++m) inner += H(i - k + s, m) * std::pow(p, m) * at(v, m);
          sum += t * std::pow(p, e) * at(v, i + j - s) * inner;
        }
    out[i] = std::pow(1 - 1 / p, 3) * std::pow(p, 2 * i) * sum;
  }
  return out;
}

// Relative distance scaled by the larger magnitude (absolute below `floor`).
inline double rel_diff(double a, double b, double floor = 1e-300) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace cascade::oracle
