#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "npk/exterior.hpp"
#include "npk/random.hpp"

using namespace npk;

namespace {

using MV = Multivector<Rational>;

MV e(int m, std::initializer_list<int> idx, Rational c = 1) { return MV::basis(m, idx, c); }

// Sign of sorting `v` by adjacent swaps; 0 on a repeated entry.
int sort_sign(std::vector<int> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j + 1 < v.size() - i; ++j) {
      if (v[j] == v[j + 1]) return 0;
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        sign = -sign;
      }
    }
  return sign;
}

// Wedge by concatenating index lists and sorting.
MV wedge_oracle(const MV& a, const MV& b) {
  MV out(a.dim(), a.grade() + b.grade());
  for (const auto& [ba, ca] : a.terms())
    for (const auto& [bb, cb] : b.terms()) {
      auto idx = ba.indices();
      auto tail = bb.indices();
      idx.insert(idx.end(), tail.begin(), tail.end());
      int s = sort_sign(idx);
      if (s == 0) continue;
      std::sort(idx.begin(), idx.end());
      out.accumulate(Blade::from_indices(std::span<const int>(idx)), Rational(s * ca * cb));
    }
  return out;
}

// (i(alpha)P)^{a_2..a_n} = sum_u alpha_u P^{u a_2..a_n}.
MV contract_oracle(const Covector<Rational>& alpha, const MV& p) {
  MV out(p.dim(), p.grade() - 1);
  for (Blade rest : blades_of_grade(p.dim(), p.grade() - 1)) {
    Rational sum = 0;
    for (int u = 1; u <= p.dim(); ++u) {
      std::vector<int> idx{u};
      auto r = rest.indices();
      idx.insert(idx.end(), r.begin(), r.end());
      sum += alpha[u] * component(p, std::span<const int>(idx));
    }
    out.accumulate(rest, sum);
  }
  return out;
}

}  // namespace

TEST(Blade, RejectsNonIncreasingIndices) {
  try {
    Blade::from_indices({2, 1, 3});
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& ex) {
    EXPECT_STREQ(ex.what(), "indices must be strictly increasing");
  }
  EXPECT_THROW(Blade::from_indices({1, 1}), std::invalid_argument);
  EXPECT_THROW(Blade::from_indices({0, 1}), std::invalid_argument);
}

TEST(Blade, ScalarBladeAndIndices) {
  Blade s;
  EXPECT_EQ(s.grade(), 0);
  EXPECT_TRUE(s.indices().empty());
  Blade b = Blade::from_indices({2, 5, 7});
  EXPECT_EQ(b.indices(), (std::vector<int>{2, 5, 7}));
  EXPECT_EQ(b.max_index(), 7);
  EXPECT_EQ(b.to_string(), "{2,5,7}");
}

TEST(Blade, OrderIsGradeThenLexicographic) {
  BladeLess less;
  EXPECT_TRUE(less(Blade::from_indices({3}), Blade::from_indices({1, 2})));
  EXPECT_TRUE(less(Blade::from_indices({1, 3}), Blade::from_indices({2, 3})));
  EXPECT_TRUE(less(Blade::from_indices({1, 2, 6}), Blade::from_indices({1, 3, 4})));
  EXPECT_FALSE(less(Blade::from_indices({1, 3}), Blade::from_indices({1, 3})));
}

TEST(Multivector, CanonicalSparseForm) {
  MV p(4, 2);
  p.add_term(Blade::from_indices({1, 2}), Rational(3));
  p.add_term(Blade::from_indices({1, 2}), Rational(-3));
  EXPECT_TRUE(p.is_zero());
  p.add_term(Blade::from_indices({1, 2}), Rational(0));
  EXPECT_EQ(p.size(), 0u);
  EXPECT_THROW(p.add_term(Blade::from_indices({1, 2, 3}), Rational(1)), std::invalid_argument);
  EXPECT_THROW(p.add_term(Blade::from_indices({1, 5}), Rational(1)), std::invalid_argument);
}

TEST(Wedge, BasisProducts) {
  EXPECT_EQ(wedge(e(3, {1}), e(3, {2})), e(3, {1, 2}));
  EXPECT_TRUE(wedge(e(3, {1}), e(3, {1})).is_zero());
  EXPECT_EQ(wedge(e(3, {2}), e(3, {1})), e(3, {1, 2}, -1));
}

TEST(Wedge, CrossTermsDouble) {
  MV a = e(4, {1, 2}) + e(4, {3, 4});
  EXPECT_EQ(wedge(a, a), e(4, {1, 2, 3, 4}, 2));
}

TEST(Wedge, BeyondDimensionIsCanonicalZero) {
  MV w = wedge(e(3, {1, 2}), e(3, {2, 3}));
  EXPECT_TRUE(w.is_zero());
  EXPECT_EQ(w.grade(), 4);
  MV big = wedge(e(3, {1, 2, 3}), e(3, {1, 2, 3}));
  EXPECT_EQ(big.grade(), 4);
}

TEST(Wedge, IncompatibleSpaces) {
  try {
    wedge(e(3, {1}), e(4, {2}));
    FAIL();
  } catch (const std::invalid_argument& ex) {
    EXPECT_STREQ(ex.what(), "incompatible spaces");
  }
}

TEST(Wedge, MatchesConcatenationOracle) {
  Generator g(11);
  for (int t = 0; t < 200; ++t) {
    int m = g.uniform(2, 6);
    int p = g.uniform(0, m), q = g.uniform(0, m - p);
    MV a = g.multivector(m, p, 4), b = g.multivector(m, q, 4);
    EXPECT_EQ(wedge(a, b), wedge_oracle(a, b));
  }
}

TEST(Wedge, AssociativeAndGradedCommutative) {
  Generator g(12);
  for (int t = 0; t < 200; ++t) {
    int m = g.uniform(2, 6);
    int p = g.uniform(1, 3), q = g.uniform(1, 3), r = g.uniform(1, 2);
    MV a = g.multivector(m, std::min(p, m), 4), b = g.multivector(m, std::min(q, m), 4),
       c = g.multivector(m, std::min(r, m), 3);
    if (a.grade() + b.grade() + c.grade() > m) continue;
    EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
    Rational s = (a.grade() * b.grade()) % 2 == 0 ? 1 : -1;
    EXPECT_EQ(wedge(a, b), wedge(b, a) * s);
  }
}

TEST(Contract, DualPairingExamples) {
  auto eps = [](int m, int u) { return Covector<Rational>::basis(m, u); };
  EXPECT_EQ(contract(eps(3, 1), e(3, {1, 2, 3})), e(3, {2, 3}));
  EXPECT_TRUE(contract(eps(5, 4), e(5, {1, 2, 3})).is_zero());
  EXPECT_EQ(contract(eps(5, 1), e(5, {1, 2, 3}) + e(5, {1, 4, 5})), e(5, {2, 3}) + e(5, {4, 5}));
  EXPECT_EQ(contract(eps(3, 2), e(3, {1, 2, 3})), e(3, {1, 3}, -1));
}

TEST(Contract, ScalarRejected) {
  try {
    contract(Covector<Rational>::basis(2, 1), MV::scalar(2, Rational(1)));
    FAIL();
  } catch (const std::invalid_argument& ex) {
    EXPECT_STREQ(ex.what(), "cannot contract a scalar");
  }
}

TEST(Contract, MatchesComponentFormula) {
  Generator g(13);
  for (int t = 0; t < 200; ++t) {
    int m = g.uniform(1, 6);
    int n = g.uniform(1, m);
    MV p = g.multivector(m, n, 5);
    auto alpha = g.covector(m);
    EXPECT_EQ(contract(alpha, p), contract_oracle(alpha, p));
  }
}

TEST(Contract, Antiderivation) {
  Generator g(14);
  for (int t = 0; t < 200; ++t) {
    int m = g.uniform(2, 6);
    int p = g.uniform(1, m - 1), q = g.uniform(1, m - p);
    MV a = g.multivector(m, p, 4), b = g.multivector(m, q, 4);
    auto alpha = g.covector(m);
    Rational s = p % 2 == 0 ? 1 : -1;
    EXPECT_EQ(contract(alpha, wedge(a, b)), wedge(contract(alpha, a), b) + wedge(a, contract(alpha, b)) * s);
  }
}

TEST(Contract, TwiceIsZero) {
  Generator g(15);
  for (int t = 0; t < 200; ++t) {
    int m = g.uniform(2, 6);
    MV p = g.multivector(m, g.uniform(2, m), 5);
    auto alpha = g.covector(m);
    EXPECT_TRUE(contract(alpha, contract(alpha, p)).is_zero());
  }
}

TEST(ContractForm, CommittedConvention) {
  MultiCovector<Rational> l = MultiCovector<Rational>::basis(3, {1, 2});
  EXPECT_EQ(contract(l, e(3, {1, 2, 3})), e(3, {3}));
  // i(eps^2) o i(eps^1)
  auto eps = [](int u) { return Covector<Rational>::basis(3, u); };
  EXPECT_EQ(contract(l, e(3, {1, 2, 3})), contract(eps(2), contract(eps(1), e(3, {1, 2, 3}))));
}

TEST(ContractForm, AllButLastIndex) {
  for (int n = 2; n <= 6; ++n) {
    std::vector<int> all(n), head(n - 1);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    for (int i = 0; i < n - 1; ++i) head[i] = i + 1;
    auto l = MultiCovector<Rational>::basis(n, Blade::from_indices(std::span<const int>(head)));
    MV r = contract(l, MV::basis(n, Blade::from_indices(std::span<const int>(all))));
    // peeling e1, e2, ... from the front each time gives +e_n
    EXPECT_EQ(r, e(n, {n}));
  }
}

TEST(ContractForm, SkipTwoIndices) {
  // lambda omits a and b; applied to i(eps^a)P for P = e1^...^e5 it leaves +-e_b
  const int n = 5;
  MV p = e(n, {1, 2, 3, 4, 5});
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      if (a == b) continue;
      std::uint64_t mask = 0;
      for (int i = 1; i <= n; ++i)
        if (i != a && i != b) mask |= std::uint64_t{1} << i;
      auto lam = MultiCovector<Rational>::basis(n, Blade::from_mask(mask));
      MV r = contract(lam, contract(Covector<Rational>::basis(n, a), p));
      ASSERT_EQ(r.size(), 1u);
      EXPECT_EQ(r.terms().begin()->first, Blade::single(b));
      Rational c = r.terms().begin()->second;
      EXPECT_TRUE(c == 1 || c == -1);
    }
}

TEST(ContractForm, ExceedsGrade) {
  try {
    contract(MultiCovector<Rational>::basis(4, {1, 2, 3}), e(4, {1, 2}));
    FAIL();
  } catch (const std::invalid_argument& ex) {
    EXPECT_STREQ(ex.what(), "contraction exceeds grade");
  }
}

TEST(ContractForm, AgreesWithIteratedCovectors) {
  Generator g(16);
  for (int t = 0; t < 100; ++t) {
    int m = g.uniform(2, 6);
    int n = g.uniform(1, m);
    int k = g.uniform(1, n);
    MV p = g.multivector(m, n, 5);
    std::vector<Covector<Rational>> alphas;
    MultiCovector<Rational> lam = MultiCovector<Rational>::scalar(m, Rational(1));
    MV iterated = p;
    for (int j = 0; j < k; ++j) {
      alphas.push_back(g.covector(m));
      lam = wedge(lam, alphas.back().as_form());
      iterated = contract(alphas.back(), iterated);
    }
    EXPECT_EQ(contract(lam, p), iterated);
  }
}

TEST(Component, SignedLookup) {
  MV p = e(4, {1, 2, 3}, 5);
  EXPECT_EQ(component(p, std::vector<int>{1, 2, 3}), 5);
  EXPECT_EQ(component(p, std::vector<int>{2, 1, 3}), -5);
  EXPECT_EQ(component(p, std::vector<int>{3, 1, 2}), 5);
  EXPECT_EQ(component(p, std::vector<int>{1, 1, 3}), 0);
}
