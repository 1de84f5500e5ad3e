#include "cascade/builders.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cascade/errors.hpp"
#include "numeric.hpp"

namespace cascade {
namespace {

using detail::pow_int;
using detail::pow_mixed;

ModelSpec closed_form_spec(Family family, int p, int r, double gamma, double h0) {
  ModelSpec spec;
  spec.family = family;
  spec.p = p;
  spec.r = r;
  spec.gamma = gamma;
  spec.h0 = h0;
  spec.s = family == Family::S3Diag ? 3 : 2;
  spec.alpha = 0.0;
  spec.validate();
  return spec;
}

struct Term {
  int a;
  int b;
  double c;
};

}  // namespace

CouplingTable build_s2_diag(int p, int r, double gamma, double h0) {
  CouplingTableBuilder builder(closed_form_spec(Family::S2Diag, p, r, gamma, h0));
  const double q = 1.0 - 1.0 / p;
  const double pg = std::pow(double(p), gamma);
  const double pg2 = std::pow(double(p), 2.0 * gamma);
  const std::array<Term, 3> terms{{
      {1, 2, pow_int(p, 3) * (pg - pg2)},
      {-1, 1, pg - 1.0 / pg},
      {-2, -1, pow_int(p, -3) * (1.0 / pg2 - 1.0 / pg)},
  }};
  for (int i = 0; i <= r; ++i) {
    const double prefactor = h0 * q * q * q * pow_mixed(p, 2 * i, gamma * i);
    for (const auto& t : terms) builder.add(i, t.a, t.b, prefactor * t.c);
  }
  return std::move(builder).build();
}

CouplingTable build_s3_diag(int p, int r, double gamma, double h0) {
  CouplingTableBuilder builder(closed_form_spec(Family::S3Diag, p, r, gamma, h0));
  const double q = 1.0 - 1.0 / p;
  const double g1 = std::pow(double(p), gamma);
  const double g2 = std::pow(double(p), 2.0 * gamma);
  const double g3 = std::pow(double(p), 3.0 * gamma);
  const std::array<Term, 9> terms{{
      {3, 2, pow_int(p, 5) * (g3 - g2)},
      {3, 1, pow_int(p, 4) * (g3 - g1)},
      {2, 1, pow_int(p, 3) * (g2 - g1)},
      {-1, 2, double(p) * (1.0 / g1 - g2)},
      {-1, 1, 1.0 / g1 - g1},
      {-2, 1, (1.0 / g2 - g1) / p},
      {-2, -1, pow_int(p, -3) * (1.0 / g1 - 1.0 / g2)},
      {-3, -1, pow_int(p, -4) * (1.0 / g1 - 1.0 / g3)},
      {-3, -2, pow_int(p, -5) * (1.0 / g2 - 1.0 / g3)},
  }};
  for (int i = 0; i <= r; ++i) {
    const double prefactor = h0 * q * q * q * pow_mixed(p, 2 * i, gamma * i);
    for (const auto& t : terms) builder.add(i, t.a, t.b, prefactor * t.c);
  }
  return std::move(builder).build();
}

CouplingTable build_s2_offdiag(int p, int r, double gamma, double h0) {
  CouplingTableBuilder builder(closed_form_spec(Family::S2OffDiag, p, r, gamma, h0));
  const double q = 1.0 - 1.0 / p;
  const double pp = p;
  auto pw = [pp](double e) { return std::pow(pp, e); };
  const double p3 = pow_int(p, 3);
  const double pm3 = pow_int(p, -3);

  for (int i = 0; i <= r; ++i) {
    const double prefactor = h0 * q * q * q * pow_mixed(p, 3 * i, gamma * i);
    const double not_i0 = i == 0 ? 0.0 : 1.0;
    const double not_i1 = i == 1 ? 0.0 : 1.0;
    const double not_top = i == r ? 0.0 : 1.0;
    const double not_below_top = i == r - 1 ? 0.0 : 1.0;
    const std::array<Term, 12> terms{{
        {-2, -2, pm3 * pw(-gamma - 2.0)},
        {-2, 0, pm3},
        {-1, -3, -pm3 * pw(-2.0 * gamma - 3.0)},
        {-1, -1, -pm3 * not_i1 * pw(-gamma - 1.0)},
        {1, -2, pw(-gamma - 2.0)},
        {1, 0, not_i0},
        {-1, 0, -not_top * pw(gamma)},
        {-1, 2, -pw(2.0 * gamma + 2.0)},
        {1, 1, p3 * not_below_top * pw(2.0 * gamma + 1.0)},
        {1, 3, p3 * pw(3.0 * gamma + 3.0)},
        {2, 0, -p3 * pw(gamma)},
        {2, 2, -p3 * pw(2.0 * gamma + 2.0)},
    }};
    for (const auto& t : terms) builder.add(i, t.a, t.b, prefactor * t.c);
  }
  return std::move(builder).build();
}

CouplingTable build_goy(double lambda, double eps, double a, int r) {
  ModelSpec spec;
  spec.family = Family::GOY;
  spec.p = lambda;
  spec.r = r;
  spec.eps = eps;
  spec.a = a;
  spec.h0 = a;
  spec.s = 2;
  spec.validate();

  CouplingTableBuilder builder(spec);
  for (int i = 0; i <= r; ++i) {
    const double k = a * std::pow(lambda, i);
    builder.add(i, 1, 2, k);
    builder.add(i, -1, 1, -k * eps / lambda);
    builder.add(i, -2, -1, k * (eps - 1.0) / (lambda * lambda));
  }
  return std::move(builder).build();
}

HMatrix h_diag(int p, int r, double gamma, double h0) {
  integer_base(p);
  HMatrix h{SymmetricBandedMatrix(r, 0)};
  for (int i = 0; i <= r; ++i) h.h.set(i, i, h0 * std::pow(double(p), gamma * i));
  return h;
}

HMatrix h_offdiag(int p, int r, double gamma, double h0) {
  integer_base(p);
  const double q = 1.0 - 1.0 / p;
  HMatrix h{SymmetricBandedMatrix(r, 1)};
  for (int i = 1; i <= r; ++i) {
    h.h.set(i, i - 1, h0 * std::pow(double(p), gamma * i) / (2.0 * q * q));
  }
  return h;
}

CouplingTable build_general(int p, int r, int s, double alpha, const HMatrix& h) {
  ModelSpec spec;
  spec.family = Family::General;
  spec.p = p;
  spec.r = r;
  spec.s = s;
  spec.alpha = alpha;
  spec.validate();
  if (h.h.r() != r) {
    throw ConfigError("build_general: h has order " + std::to_string(h.h.r() + 1) +
                      ", expected " + std::to_string(r + 1));
  }
  const int band = h.h.effective_bandwidth();
  if (band > 1) {
    throw UnsupportedError("build_general: h bandwidth " + std::to_string(band) +
                           " is not supported (at most 1)");
  }

  CouplingTableBuilder builder(spec);
  if (band < 0) return std::move(builder).build();

  auto theta = [s](int j) { return j < s ? 1 : (j > s ? -1 : 0); };
  const double q = 1.0 - 1.0 / p;
  const double q3 = q * q * q;

  for (int j = 0; j <= 2 * s; ++j) {
    for (int k = 0; k <= 2 * s; ++k) {
      const int l = 3 * s - j - k;
      if (l < 0 || l > 2 * s) continue;
      const int sign = theta(j) * theta(k) * theta(l);
      if (sign == 0) continue;
      const int maxes = std::max(s, j) + std::max(s, k) + std::max(s, l);
      const double weight =
          sign * pow_int(p, -j - k) * (alpha == 0.0 ? 1.0 : std::pow(double(p), -alpha * maxes));
      for (int i = 0; i <= r; ++i) {
        const int row = i - k + s;
        if (row < 0 || row > r) continue;
        const double base = q3 * pow_int(p, 2 * i) * weight;
        for (int m = std::max(0, row - band); m <= std::min(r, row + band); ++m) {
          const double hm = h.h(row, m);
          if (hm == 0.0) continue;
          builder.add(i, j - s, m - i, base * hm * pow_int(p, m));
        }
      }
    }
  }
  return std::move(builder).build(1e-13);
}

CouplingTable build(const ModelSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::S2Diag:
      return build_s2_diag(integer_base(spec.p), spec.r, spec.gamma, spec.h0);
    case Family::S3Diag:
      return build_s3_diag(integer_base(spec.p), spec.r, spec.gamma, spec.h0);
    case Family::S2OffDiag:
      return build_s2_offdiag(integer_base(spec.p), spec.r, spec.gamma, spec.h0);
    case Family::GOY:
      return build_goy(spec.p, spec.eps, spec.a, spec.r);
    case Family::General: {
      const int p = integer_base(spec.p);
      return build_general(p, spec.r, spec.s, spec.alpha, h_diag(p, spec.r, spec.gamma, spec.h0));
    }
  }
  throw ConfigError("unknown family");
}

WeightMatrix second_invariant_weights(const ModelSpec& spec) {
  switch (spec.family) {
    case Family::GOY: {
      if (spec.eps == 1.0) throw DomainError("GOY second invariant undefined for eps = 1");
      return power_weights(spec.eps - 1.0, -1.0, spec.r);
    }
    case Family::S2OffDiag: {
      const int p = integer_base(spec.p);
      return helicity_weights(h_offdiag(p, spec.r, spec.gamma, spec.h0), p);
    }
    default: {
      const int p = integer_base(spec.p);
      return helicity_weights(h_diag(p, spec.r, spec.gamma, spec.h0), p);
    }
  }
}

WeightMatrix natural_energy_weights(const ModelSpec& spec) {
  if (spec.family == Family::GOY) return diagonal_weights(std::vector<double>(spec.r + 1, 1.0));
  return energy_weights(spec.p, spec.r);
}

}  // namespace cascade
