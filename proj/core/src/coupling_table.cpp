#include "cascade/coupling_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <fmt/format.h>

#include "cascade/errors.hpp"

namespace cascade {

std::vector<CouplingEntry> CouplingTable::at_shell(int shell) const {
  std::vector<CouplingEntry> out;
  auto first = std::lower_bound(entries_.begin(), entries_.end(), shell,
                                [](const CouplingEntry& e, int s) { return e.shell < s; });
  for (auto it = first; it != entries_.end() && it->shell == shell; ++it) out.push_back(*it);
  return out;
}

double CouplingTable::coefficient(int shell, int a, int b) const {
  if (a > b) std::swap(a, b);
  CouplingEntry probe{shell, a, b, 0.0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe,
                             [](const CouplingEntry& x, const CouplingEntry& y) {
                               return x.key() < y.key();
                             });
  if (it != entries_.end() && it->key() == probe.key()) return it->c;
  return 0.0;
}

int CouplingTable::max_offset() const noexcept {
  int m = 0;
  for (const auto& e : entries_) m = std::max({m, std::abs(e.a), std::abs(e.b)});
  return m;
}

CouplingTable CouplingTable::scaled(double factor) const {
  CouplingTable t = *this;
  if (factor == 0.0) {
    t.entries_.clear();
    return t;
  }
  for (auto& e : t.entries_) e.c *= factor;
  return t;
}

std::string CouplingTable::to_text() const {
  std::string out;
  for (const auto& e : entries_) {
    out += fmt::format("{}\t{}\t{}\t{:.17g}\n", e.shell, e.a, e.b, e.c);
  }
  return out;
}

CouplingTableBuilder::CouplingTableBuilder(ModelSpec spec) : spec_(std::move(spec)) {}

void CouplingTableBuilder::add(int shell, int a, int b, double c) {
  const int r = spec_.r;
  if (shell < 0 || shell > r) return;
  if (shell + a < 0 || shell + a > r || shell + b < 0 || shell + b > r) return;
  if (c == 0.0) return;
  if (a > b) std::swap(a, b);
  auto& acc = terms_[{shell, a, b}];
  acc.sum += c;
  acc.magnitude += std::abs(c);
}

CouplingTable CouplingTableBuilder::build(double cancel_tol) && {
  CouplingTable t;
  t.spec_ = std::move(spec_);
  t.entries_.reserve(terms_.size());
  for (const auto& [key, acc] : terms_) {
    if (acc.sum == 0.0 || std::abs(acc.sum) <= cancel_tol * acc.magnitude) continue;
    const auto [shell, a, b] = key;
    t.entries_.push_back({shell, a, b, acc.sum});
  }
  return t;
}

double CouplingMismatch::ratio() const {
  if (only_in_lhs || only_in_rhs) return std::numeric_limits<double>::quiet_NaN();
  return lhs / rhs;
}

std::string CouplingComparison::to_text() const {
  std::string out = fmt::format("# lhs_entries={} rhs_entries={} tol={:.3g} mismatches={}\n",
                                lhs_entries, rhs_entries, tol, mismatches.size());
  out += "i\ta\tb\tlhs\trhs\tratio\tstatus\n";
  for (const auto& m : mismatches) {
    const char* status = m.only_in_lhs ? "lhs_only" : m.only_in_rhs ? "rhs_only" : "differs";
    out += fmt::format("{}\t{}\t{}\t{:.17g}\t{:.17g}\t{:.17g}\t{}\n", m.shell, m.a, m.b, m.lhs,
                       m.rhs, m.ratio(), status);
  }
  return out;
}

CouplingComparison compare_couplings(const CouplingTable& lhs, const CouplingTable& rhs,
                                     double tol) {
  if (lhs.r() != rhs.r()) {
    throw ConfigError(fmt::format("compare_couplings: r differs ({} vs {})", lhs.r(), rhs.r()));
  }
  CouplingComparison report;
  report.tol = tol;
  report.lhs_entries = lhs.size();
  report.rhs_entries = rhs.size();

  const auto& x = lhs.entries();
  const auto& y = rhs.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].key() < y[j].key())) {
      report.mismatches.push_back({x[i].shell, x[i].a, x[i].b, x[i].c, 0.0, true, false});
      ++i;
    } else if (i == x.size() || y[j].key() < x[i].key()) {
      report.mismatches.push_back({y[j].shell, y[j].a, y[j].b, 0.0, y[j].c, false, true});
      ++j;
    } else {
      const double scale = std::max(std::abs(x[i].c), std::abs(y[j].c));
      if (std::abs(x[i].c - y[j].c) > tol * scale) {
        report.mismatches.push_back({x[i].shell, x[i].a, x[i].b, x[i].c, y[j].c, false, false});
      }
      ++i;
      ++j;
    }
  }
  return report;
}

}  // namespace cascade
