#include <gtest/gtest.h>

#include "npk/poisson.hpp"
#include "npk/random.hpp"
#include "npk/sigma_delta.hpp"

using namespace npk;

namespace {

Polynomial x(int u) { return Polynomial::variable(u); }

PolyMultivectorField d(int m, std::initializer_list<int> idx, Polynomial c = Polynomial(1)) {
  return PolyMultivectorField::basis(m, idx, c);
}

// Membership read off directly: (i(alpha)P) ^ (i(alpha)U) for dense sampled alpha.
bool membership_oracle(const PolyMultivectorField& p, const PolyMultivectorField& u, Generator& g, int tries) {
  for (int t = 0; t < tries; ++t) {
    Covector<Polynomial> a(p.dim());
    for (int k = 1; k <= p.dim(); ++k) a[k] = Polynomial(g.small_rational(true));
    if (!wedge(contract(a, p), contract(a, u)).is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST(SigmaMembership, TensorItselfAndScalars) {
  auto p = d(5, {1, 2, 3});
  EXPECT_TRUE(sigma_membership(p, p).holds);
  EXPECT_TRUE(sigma_membership(p, PolyMultivectorField::scalar(5, x(1) * x(4))).holds);
}

TEST(SigmaMembership, DisjointBivector) {
  auto r = sigma_membership(d(5, {1, 2, 3}), d(5, {4, 5}));
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, std::make_pair(1, 4));
  Covector<Polynomial> a(5);
  a[1] = Polynomial(1);
  a[4] = Polynomial(1);
  EXPECT_EQ(wedge(contract(a, d(5, {1, 2, 3})), contract(a, d(5, {4, 5}))), d(5, {2, 3, 5}));
}

TEST(SigmaMembership, AgreesWithSampledCovectors) {
  Generator g(61);
  int in = 0, out = 0;
  for (int t = 0; t < 60; ++t) {
    auto p = g.decomposable_field(5, 3, 4);
    auto u = t % 3 == 0 ? p * g.nonzero_polynomial(5, 1, 2) : g.field(5, 1 + t % 3, 1, 3);
    bool member = sigma_membership(p, u).holds;
    EXPECT_EQ(member, membership_oracle(p, u, g, 6));
    (member ? in : out)++;
  }
  EXPECT_GT(in, 10);
  EXPECT_GT(out, 10);
}

TEST(Delta, CoordinateFunction) {
  auto p = d(5, {1, 2, 3});
  EXPECT_EQ(delta(p, PolyMultivectorField::scalar(5, x(1))), d(5, {2, 3}));
  EXPECT_EQ(delta(p, PolyMultivectorField::scalar(5, x(4))), PolyMultivectorField(5, 2));
}

TEST(Delta, ConstantInputsGiveZero) {
  auto p = d(6, {1, 2, 3}) + d(6, {1, 4, 5}, Polynomial(rational(3, 2)));
  EXPECT_TRUE(delta(p, PolyMultivectorField::scalar(6, Polynomial(7))).is_zero());
  auto q = d(5, {1, 2, 3});
  EXPECT_TRUE(delta(q, q).is_zero());
}

TEST(Delta, RejectsNonMembers) {
  try {
    delta(d(5, {1, 2, 3}), d(5, {4, 5}));
    FAIL();
  } catch (const std::invalid_argument& ex) {
    EXPECT_STREQ(ex.what(), "U not in Sigma^q");
  }
}

TEST(Delta, FunctionsMatchGradientContraction) {
  Generator g(62);
  for (int t = 0; t < 30; ++t) {
    auto p = g.decomposable_field(5, 3, 4);
    Polynomial f = g.polynomial(5, 2, 4);
    auto df = delta(p, PolyMultivectorField::scalar(5, f));
    EXPECT_EQ(df, contract(gradient(f, 5), p));
    EXPECT_TRUE(sigma_membership(p, df).holds);
  }
}

TEST(Delta, AnnihilatesBuilderOutputs) {
  Generator g(63);
  for (int n = 3; n <= 4; ++n) {
    auto fr = g.polynomial_frame(n + 1);
    std::vector<VectorField> w(fr.begin(), fr.begin() + n);
    auto p = build_semidecomposable({}, w, 0);
    EXPECT_TRUE(sigma_membership(p, p).holds);
    EXPECT_TRUE(delta(p, p).is_zero());
  }
  auto p = example_15(10, 1, 5);
  EXPECT_TRUE(sigma_membership(p, p).holds);
  EXPECT_TRUE(delta(p, p).is_zero());
  EXPECT_EQ(delta(p, PolyMultivectorField::scalar(10, x(1) * x(6))),
            contract(gradient(x(1) * x(6), 10), p));
}
