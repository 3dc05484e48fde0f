#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "npk/poisson.hpp"
#include "npk/random.hpp"

using namespace npk;

namespace {

Polynomial x(int u) { return Polynomial::variable(u); }

PolyMultivectorField d(int m, std::initializer_list<int> idx, Polynomial c = Polynomial(1)) {
  return PolyMultivectorField::basis(m, idx, c);
}

int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 ? -1 : 1;
}

long fact(int k) { return k <= 1 ? 1 : k * fact(k - 1); }

// Alternated sum over all of S_n divided by h!(n-h)!.
PolyMultivectorField semidecomposable_oracle(const std::vector<VectorField>& v, const std::vector<VectorField>& w,
                                             int h) {
  const int n = static_cast<int>(w.size());
  const int m = w.front().dim();
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  PolyMultivectorField total(m, n);
  do {
    std::vector<VectorField> factors;
    for (int i = 0; i < h; ++i) factors.push_back(v[s[i]]);
    for (int i = h; i < n; ++i) factors.push_back(w[s[i]]);
    auto term = wedge_all(m, factors);
    total += perm_sign(s) > 0 ? term : -term;
  } while (std::next_permutation(s.begin(), s.end()));
  return total * Polynomial(rational(1, static_cast<int>(fact(h) * fact(n - h))));
}

// (N1) straight from the component formula, every index tuple.
bool n1_oracle(const PolyMultivectorField& p) {
  const int m = p.dim(), n = p.grade();
  std::vector<int> a(n - 2, 1), b(n, 1);
  auto next = [m](std::vector<int>& t) {
    for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
      if (t[i] < m) {
        ++t[i];
        return true;
      }
      t[i] = 1;
    }
    return false;
  };
  auto term = [&](int u, int v) {
    Polynomial s;
    for (int k = 0; k < n; ++k) {
      std::vector<int> first = b;
      first[k] = u;
      std::vector<int> second{v};
      second.insert(second.end(), a.begin(), a.end());
      second.push_back(b[k]);
      s += component(p, std::span<const int>(first)) * component(p, std::span<const int>(second));
    }
    return s;
  };
  for (int u = 1; u <= m; ++u)
    for (int v = 1; v <= m; ++v) {
      std::fill(a.begin(), a.end(), 1);
      do {
        std::fill(b.begin(), b.end(), 1);
        do {
          if (!(term(u, v) + term(v, u)).is_zero()) return false;
        } while (next(b));
      } while (next(a));
    }
  return true;
}

}  // namespace

TEST(ConditionA, Examples) {
  EXPECT_TRUE(condition_A(d(5, {1, 2, 3})).holds);
  auto bad = condition_A(d(5, {1, 2, 3}) + d(5, {1, 4, 5}));
  EXPECT_FALSE(bad.holds);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_EQ(*bad.witness, std::make_pair(1, 1));
  auto c1 = contract_basis(1, d(5, {1, 2, 3}) + d(5, {1, 4, 5}));
  EXPECT_EQ(wedge(c1, c1), d(5, {2, 3, 4, 5}, Polynomial(2)));
  EXPECT_FALSE(condition_A(example_16(2, 2, 8)).holds);
  EXPECT_THROW(condition_A(d(4, {1, 2})), std::invalid_argument);
}

TEST(ConditionA, HoldsForArbitraryCovectorPairs) {
  Generator g(51);
  for (int t = 0; t < 30; ++t) {
    auto p = t % 2 ? g.decomposable_field(5, 3, 5) : g.field(5, 3, 1, 4);
    bool holds = condition_A(p).holds;
    if (!holds) continue;
    for (int s = 0; s < 5; ++s) {
      Covector<Polynomial> a(5), b(5);
      auto ca = g.covector(5), cb = g.covector(5);
      for (int u = 1; u <= 5; ++u) a[u] = ca[u], b[u] = cb[u];
      EXPECT_TRUE(wedge(contract(a, p), contract(b, p)).is_zero());
    }
  }
}

TEST(Classify, SemidecomposableCoordinates) {
  auto v = classify_poisson(example_15(10, 1, 5));
  EXPECT_TRUE(v.is_poisson);
  EXPECT_EQ(v.parity, Parity::odd);
  for (const auto& s : v.rank_at_samples) EXPECT_EQ(s.rank, 10);
  EXPECT_FALSE(v.nambu_algebraic);
}

TEST(Classify, TwoBlocksSharingAnIndex) {
  auto v = classify_poisson(d(5, {1, 2, 3}) + d(5, {1, 4, 5}));
  EXPECT_FALSE(v.is_poisson);
  EXPECT_FALSE(v.condition_A.holds);
  EXPECT_TRUE(v.condition_D);
}

TEST(Classify, ReducibleBlockSum) {
  auto v = classify_poisson(example_16(2, 2, 8));
  EXPECT_TRUE(v.is_poisson);
  EXPECT_EQ(v.parity, Parity::even);
  EXPECT_FALSE(v.condition_A.holds);
  EXPECT_TRUE(v.condition_D);
  for (const auto& s : v.rank_at_samples) EXPECT_EQ(s.rank, 8);
}

TEST(Classify, DefaultSamplePoints) {
  auto pts = default_sample_points(4, {8, 3});
  ASSERT_EQ(pts.size(), 13u);
  EXPECT_EQ(pts[0], Point(4, Rational(0)));
  EXPECT_EQ(pts[2], (Point{0, 1, 0, 0}));
  EXPECT_EQ(pts, default_sample_points(4, {8, 3}));
  EXPECT_NE(pts, default_sample_points(4, {8, 4}));
}

TEST(Classify, UserSuppliedPoints) {
  auto v = classify_poisson(d(5, {1, 2, 3}, x(1)), {}, {Point{0, 0, 0, 0, 0}, Point{2, 1, 1, 1, 1}});
  ASSERT_EQ(v.rank_at_samples.size(), 2u);
  EXPECT_EQ(v.rank_at_samples[0].rank, 0);
  EXPECT_EQ(v.rank_at_samples[1].rank, 3);
}

TEST(Classify, VerdictInvariants) {
  Generator g(52);
  for (int t = 0; t < 40; ++t) {
    const int n = t % 2 ? 3 : 4, m = n == 3 ? 5 : 7;
    auto p = t % 4 < 2 ? g.field(m, n, 1, 6) : g.decomposable_field(m, n, 5);
    auto v = classify_poisson(p);
    EXPECT_EQ(v.is_poisson, n % 2 == 0 ? v.condition_D : v.condition_A.holds && v.condition_D);
    EXPECT_TRUE(!v.nambu_algebraic || v.pointwise_decomposable);
    EXPECT_TRUE(!v.pointwise_decomposable || v.condition_A.holds);
    EXPECT_EQ(v.is_poisson, jacobi_oracle(p));
  }
}

TEST(Classify, OrderBelowThreeRejected) {
  EXPECT_THROW(classify_poisson(d(3, {1, 2})), std::invalid_argument);
}

TEST(RankSemicontinuity, GenericPointsOnALineDominate) {
  Generator g(53);
  for (int t = 0; t < 30; ++t) {
    auto p = g.field(5, 3, 1, 6);
    Point a = g.point(5), b = g.point(5);
    int special = rank_of(evaluate_at(p, a));
    int best = 0;
    for (int k = 1; k <= 4; ++k) {
      Rational s = rational(k, 17);
      Point near(5);
      for (int i = 0; i < 5; ++i) near[i] = a[i] + s * (b[i] - a[i]);
      best = std::max(best, rank_of(evaluate_at(p, near)));
    }
    EXPECT_GE(best, special);
  }
}

TEST(Nambu, Examples) {
  EXPECT_TRUE(is_nambu_algebraic(d(5, {1, 2, 3})));
  EXPECT_TRUE(is_nambu_algebraic(d(6, {1, 2, 3, 4, 5, 6})));
  EXPECT_FALSE(is_nambu_algebraic(example_15(10, 1, 5)));
  EXPECT_FALSE(is_nambu_algebraic(d(6, {1, 2, 3}) + d(6, {4, 5, 6})));
  EXPECT_THROW(is_nambu_algebraic(d(4, {1, 2})), std::invalid_argument);
}

TEST(Nambu, ThreeRoutesAgreeWithFullIndexOracle) {
  Generator g(54);
  for (int t = 0; t < 30; ++t) {
    const int n = t % 3 == 0 ? 4 : 3, m = n + 2;
    auto p = t % 2 ? g.decomposable_field(m, n, 4) : g.field(m, n, 1, 4);
    bool oracle = n1_oracle(p);
    EXPECT_EQ(nambu_component_holds(p), oracle);
    EXPECT_EQ(nambu_polarized_holds(p), oracle);
    EXPECT_EQ(is_decomposable(p), oracle);
  }
}

TEST(Builder, OrderThreeDecomposable) {
  std::vector<VectorField> w{coordinate_field(3, 1), coordinate_field(3, 2), coordinate_field(3, 3)};
  auto p = build_semidecomposable({}, w, 0);
  EXPECT_EQ(p, d(3, {1, 2, 3}));
  EXPECT_EQ(rank_of(evaluate_at(p, Point(3, Rational(0)))), 3);
}

TEST(Builder, MatchesFullPermutationFormula) {
  Generator g(55);
  for (int t = 0; t < 4; ++t) {
    auto fr = g.constant_frame(10);
    std::vector<VectorField> v(fr.begin(), fr.begin() + 5), w(fr.begin() + 5, fr.end());
    EXPECT_EQ(build_semidecomposable(v, w, 1), semidecomposable_oracle(v, w, 1));
  }
  auto fr = g.polynomial_frame(4);
  std::vector<VectorField> w(fr.begin(), fr.begin() + 3);
  EXPECT_EQ(build_semidecomposable({}, w, 0), semidecomposable_oracle({}, w, 0));
}

TEST(Builder, RangeErrors) {
  std::vector<VectorField> w4(4, coordinate_field(8, 1)), v4 = w4;
  try {
    build_semidecomposable(v4, w4, 1);
    FAIL();
  } catch (const std::invalid_argument& ex) {
    EXPECT_STREQ(ex.what(), "h out of Prop. 2 range");
  }
  EXPECT_THROW(build_semidecomposable({}, w4, -1), std::invalid_argument);
  std::vector<VectorField> w2(2, coordinate_field(4, 1));
  EXPECT_THROW(build_semidecomposable({}, w2, 0), std::invalid_argument);
  EXPECT_THROW(example_15(10, 1, 4), std::invalid_argument);
}

TEST(Builder, SemidecomposableRankAndNambu) {
  auto p = example_15(10, 1, 5);
  std::vector<VectorField> v, w;
  for (int i = 1; i <= 5; ++i) {
    v.push_back(coordinate_field(10, i));
    w.push_back(coordinate_field(10, 5 + i));
  }
  EXPECT_EQ(p, build_semidecomposable(v, w, 1));
  auto verdict = classify_poisson(p);
  EXPECT_TRUE(verdict.is_poisson);
  EXPECT_FALSE(verdict.nambu_algebraic);
  for (const auto& s : verdict.rank_at_samples) EXPECT_EQ(s.rank, 10);
}

TEST(Examples, BlockSumShapes) {
  EXPECT_EQ(example_16(1, 1, 2), d(2, {1, 2}));
  EXPECT_EQ(example_16(2, 2, 8), d(8, {1, 2, 3, 4}) + d(8, {5, 6, 7, 8}));
  EXPECT_THROW(example_16(2, 2, 7), std::invalid_argument);
}

TEST(Involutivity, CoordinateDistribution) {
  auto r = involutivity_sample(d(5, {1, 2, 3}), default_sample_points(5));
  EXPECT_TRUE(r.involutive);
  EXPECT_TRUE(r.skipped.empty());
}

TEST(Involutivity, ShearedFrameFails) {
  auto p = d(5, {1, 2, 3}) + d(5, {1, 2, 4}, x(1));
  EXPECT_EQ(lie_bracket(d(5, {1}), d(5, {3}) + d(5, {4}, x(1))), d(5, {4}));
  auto r = involutivity_sample(p, default_sample_points(5));
  EXPECT_FALSE(r.involutive);
  ASSERT_TRUE(r.failing_point.has_value());
  EXPECT_EQ(*r.failing_point, 0u);
}

TEST(Involutivity, ScaledCoordinateFrameSkipsZeros) {
  auto p = d(5, {1, 2, 3}, x(1) + 1);
  std::vector<Point> pts{Point{0, 0, 0, 0, 0}, Point{-1, 2, 0, 0, 0}, Point{3, 1, 1, 1, 1}};
  auto r = involutivity_sample(p, pts);
  EXPECT_TRUE(r.involutive);
  ASSERT_EQ(r.skipped.size(), 1u);
  EXPECT_EQ(r.skipped[0], 1u);
  EXPECT_EQ(r.notices.size(), 1u);
}

TEST(Involutivity, NonDecomposableSampleRejected) {
  auto p = d(6, {1, 2, 3}) + d(6, {4, 5, 6});
  EXPECT_THROW(involutivity_sample(p, {Point(6, Rational(0))}), std::invalid_argument);
}
