#include <gtest/gtest.h>

#include <set>

#include "hclab/enumeration.hpp"

using namespace hclab;

namespace {
std::vector<Scalar> coeffs(const Vector& v) { return {v.coeffs().begin(), v.coeffs().end()}; }
}  // namespace

TEST(Enumeration, LevelOneIsPlusMinusE1) {
  const auto v = canonical_dense_sequence(SpaceTag::lp(2.0), 2);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(coeffs(v[0]), std::vector<Scalar>{-1.0});
  EXPECT_EQ(coeffs(v[1]), std::vector<Scalar>{1.0});
}

TEST(Enumeration, LevelTwoLexicographicSkippingDuplicates) {
  const auto v = canonical_dense_sequence(SpaceTag::lp(2.0), 8);
  // level 2 tuples (x1, x2) over {-1, -1/2, 0, 1/2, 1}; first is (-1, -1)
  EXPECT_EQ(coeffs(v[2]), (std::vector<Scalar>{-1.0, -1.0}));
  EXPECT_EQ(coeffs(v[3]), (std::vector<Scalar>{-1.0, -0.5}));
  // (-1, 0) equals level-1 vector -e1 and is skipped
  EXPECT_EQ(coeffs(v[4]), (std::vector<Scalar>{-1.0, 0.5}));
}

TEST(Enumeration, DeterministicDistinctNonzero) {
  for (const SpaceTag& s : {SpaceTag::c0(), SpaceTag::poly(0.0, 1.0)}) {
    const auto a = canonical_dense_sequence(s, 300);
    const auto b = canonical_dense_sequence(s, 300);
    ASSERT_EQ(a.size(), 300u);
    EXPECT_EQ(a, b);
    std::set<std::vector<std::pair<double, double>>> seen;
    for (const auto& v : a) {
      EXPECT_FALSE(v.is_zero());
      EXPECT_EQ(v.space(), s);
      std::vector<std::pair<double, double>> key;
      for (auto z : v.coeffs()) key.emplace_back(z.real(), z.imag());
      EXPECT_TRUE(seen.insert(key).second);
    }
  }
}

TEST(Enumeration, EmptyRequest) { EXPECT_TRUE(canonical_dense_sequence(SpaceTag::lp(1.0), 0).empty()); }
