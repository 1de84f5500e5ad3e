#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cascade/builders.hpp"
#include "cascade/coupling_table.hpp"
#include "cascade/errors.hpp"

namespace cascade {
namespace {

ModelSpec spec_with_r(int r) {
  ModelSpec s;
  s.r = r;
  return s;
}

TEST(CouplingTableBuilder, CanonicalizesAndMerges) {
  CouplingTableBuilder b(spec_with_r(6));
  b.add(3, 2, 1, 1.5);
  b.add(3, 1, 2, 0.5);
  b.add(3, -1, 1, 2.0);
  b.add(3, 1, -1, -2.0);  // cancels exactly
  b.add(5, 1, 2, 9.0);    // shell 7 is outside [0, 6]
  b.add(0, -1, 1, 9.0);   // shell -1
  b.add(2, 0, 0, 0.0);
  const auto t = std::move(b).build();
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.entries()[0], (CouplingEntry{3, 1, 2, 2.0}));
}

TEST(CouplingTableBuilder, CancelToleranceDropsRoundoff) {
  CouplingTableBuilder b(spec_with_r(6));
  b.add(2, 1, 2, 0.1 + 0.2);
  b.add(2, 1, 2, -0.3);
  auto exact = b;
  EXPECT_EQ(std::move(exact).build().size(), 1u);
  EXPECT_TRUE(std::move(b).build(1e-13).empty());
}

TEST(CouplingTable, TextFormIsSortedWithFullPrecision) {
  CouplingTableBuilder b(spec_with_r(6));
  b.add(4, -2, -1, -1.0 / 3.0);
  b.add(1, 1, 2, 0.1);
  b.add(1, -1, 1, 2.0);
  const auto t = std::move(b).build();
  EXPECT_EQ(t.to_text(),
            "1\t-1\t1\t2\n"
            "1\t1\t2\t0.10000000000000001\n"
            "4\t-2\t-1\t-0.33333333333333331\n");
}

TEST(CouplingTable, GoldenS2DiagText) {
  // Correctly rounded reference values from a 50-digit evaluation of the
  // closed form (p = 2, r = 4, gamma = -1/2, h0 = 1).
  struct Line {
    int i, a, b;
    double c;
  };
  const std::vector<Line> golden{
      {0, 1, 2, 0.20710678118654752},    {1, -1, 1, -0.25},
      {1, 1, 2, 0.58578643762690497},    {2, -2, -1, 0.073223304703363121},
      {2, -1, 1, -0.70710678118654757},  {2, 1, 2, 1.6568542494923801},
      {3, -2, -1, 0.20710678118654752},  {3, -1, 1, -2.0},
      {4, -2, -1, 0.58578643762690497},
  };
  const auto text = build_s2_diag(2, 4, -0.5, 1.0).to_text();
  std::istringstream in(text);
  std::string line;
  std::size_t k = 0;
  while (std::getline(in, line)) {
    ASSERT_LT(k, golden.size());
    int i = 0, a = 0, b = 0;
    char rest[64] = {};
    ASSERT_EQ(std::sscanf(line.c_str(), "%d\t%d\t%d\t%63s", &i, &a, &b, rest), 4) << line;
    EXPECT_EQ(i, golden[k].i);
    EXPECT_EQ(a, golden[k].a);
    EXPECT_EQ(b, golden[k].b);
    EXPECT_NEAR(std::strtod(rest, nullptr), golden[k].c, 4e-16 * std::abs(golden[k].c)) << line;
    ++k;
  }
  EXPECT_EQ(k, golden.size());
}

TEST(CouplingTable, TextRoundTripsEveryCoefficient) {
  const auto t = build_s3_diag(3, 9, -0.37, 1.3);
  std::istringstream in(t.to_text());
  std::string line;
  std::size_t k = 0;
  while (std::getline(in, line)) {
    const auto tab = line.rfind('\t');
    EXPECT_EQ(std::strtod(line.c_str() + tab + 1, nullptr), t.entries()[k].c);
    ++k;
  }
  EXPECT_EQ(k, t.size());
}

TEST(CompareCouplings, IdenticalTablesGiveEmptyReport) {
  const auto t = build_s3_diag(2, 8, 0.4, 1.0);
  const auto cmp = compare_couplings(t, t, 1e-12);
  EXPECT_TRUE(cmp.identical());
  EXPECT_EQ(cmp.lhs_entries, t.size());
}

TEST(CompareCouplings, DoubledAmplitudeReportsRatioTwo) {
  const auto a = build_s2_diag(3, 8, -0.5, 2.0);
  const auto b = build_s2_diag(3, 8, -0.5, 1.0);
  const auto cmp = compare_couplings(a, b, 1e-12);
  ASSERT_EQ(cmp.mismatches.size(), a.size());
  for (const auto& m : cmp.mismatches) {
    EXPECT_FALSE(m.only_in_lhs || m.only_in_rhs);
    EXPECT_NEAR(m.ratio(), 2.0, 1e-14);
  }
}

TEST(CompareCouplings, ReportsOneSidedEntries) {
  const auto a = build_goy(2.0, 0.5, 1.0, 8);
  const auto b = build_goy(2.0, 1.0, 1.0, 8);  // eps = 1 drops (-2, -1)
  const auto cmp = compare_couplings(a, b, 1e-12);
  int lhs_only = 0;
  for (const auto& m : cmp.mismatches) {
    if (m.only_in_lhs) {
      ++lhs_only;
      EXPECT_EQ(m.a, -2);
      EXPECT_TRUE(std::isnan(m.ratio()));
    }
  }
  EXPECT_EQ(lhs_only, 7);
}

TEST(CompareCouplings, GeneralExpansionAgainstClosedForm) {
  const int p = 2;
  const int r = 10;
  const auto general = build_general(p, r, 2, 0.0, h_diag(p, r, -0.5, 1.0));
  const auto closed = build_s2_diag(p, r, -0.5, 1.0);
  const auto cmp = compare_couplings(general, closed, 1e-12);
  // Same offset structure on the interior; coefficient ratios are recorded
  // by the report rather than asserted.
  for (const auto& m : cmp.mismatches) {
    if (m.shell >= 4 && m.shell <= r - 4) {
      EXPECT_FALSE(m.only_in_lhs || m.only_in_rhs) << m.shell << " " << m.a << " " << m.b;
    }
  }
  EXPECT_NE(cmp.to_text().find("mismatches="), std::string::npos);
}

TEST(CompareCouplings, RejectsDifferentOrders) {
  EXPECT_THROW(compare_couplings(build_s2_diag(2, 6, 1, 1), build_s2_diag(2, 7, 1, 1), 1e-12),
               ConfigError);
}

}  // namespace
}  // namespace cascade
