#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "npk/exterior.hpp"
#include "npk/linalg.hpp"
#include "npk/poly_field.hpp"

namespace npk {

// Seeded source of small random algebraic objects for the property suites.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  Rational small_rational(bool nonzero = true) {
    while (true) {
      int num = uniform(-4, 4);
      int den = uniform(1, 2);
      Rational r = rational(num, den);
      if (!nonzero || !is_zero(r)) return r;
    }
  }

  // Sparse integer vector with entries in [-2, 2]; never zero.
  RationalVector vector(int m) {
    while (true) {
      RationalVector v(static_cast<std::size_t>(m), Rational(0));
      for (auto& x : v)
        if (uniform(0, 2) == 0) x = uniform(-2, 2);
      if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return !is_zero(x); })) return v;
    }
  }

  Covector<Rational> covector(int m) { return Covector<Rational>(vector(m)); }

  Blade blade(int m, int k) {
    std::vector<int> pool(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pool[i] = i + 1;
    std::shuffle(pool.begin(), pool.end(), rng_);
    pool.resize(static_cast<std::size_t>(k));
    std::sort(pool.begin(), pool.end());
    return Blade::from_indices(std::span<const int>(pool));
  }

  // Between 1 and max_terms distinct blades with small rational coefficients.
  Multivector<Rational> multivector(int m, int n, int max_terms) {
    Multivector<Rational> p(m, n);
    int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t) p.accumulate(blade(m, n), small_rational());
    if (p.is_zero()) return multivector(m, n, max_terms);
    return p;
  }

  // Wedge of n random vectors, retried until nonzero.
  Multivector<Rational> decomposable(int m, int n) {
    while (true) {
      std::vector<Multivector<Rational>> vs;
      for (int i = 0; i < n; ++i) vs.push_back(vector_from(vector(m)));
      auto p = wedge_all(m, vs);
      if (!p.is_zero()) return p;
    }
  }

  Polynomial polynomial(int num_vars, int max_degree, int max_terms) {
    Polynomial p;
    int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      std::vector<unsigned> exps(static_cast<std::size_t>(num_vars), 0);
      int degree = uniform(0, max_degree);
      for (int d = 0; d < degree; ++d) ++exps[uniform(0, num_vars - 1)];
      p.add_term(Monomial(std::move(exps)), small_rational());
    }
    return p;
  }

  Polynomial nonzero_polynomial(int num_vars, int max_degree, int max_terms) {
    while (true) {
      Polynomial p = polynomial(num_vars, max_degree, max_terms);
      if (!p.is_zero()) return p;
    }
  }

  // Sparse field with 1..max_terms blades, components of degree <= max_degree.
  PolyMultivectorField field(int m, int n, int max_degree, int max_terms) {
    PolyMultivectorField p(m, n);
    int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t)
      p.accumulate(blade(m, n), nonzero_polynomial(m, max_degree, 2));
    if (p.is_zero()) return field(m, n, max_degree, max_terms);
    return p;
  }

  // e_{a_1} ^ ... ^ e_{a_{n-1}} ^ (sum_j l_j d_j) with l_j of degree <= 1:
  // pointwise decomposable by construction, at most `max_terms` blades.
  PolyMultivectorField decomposable_field(int m, int n, int max_terms) {
    while (true) {
      Blade base = blade(m, n - 1);
      PolyMultivectorField p(m, n);
      int terms = uniform(1, std::min(max_terms, m - n + 1));
      for (int t = 0; t < terms; ++t) {
        int j = uniform(1, m);
        if (base.contains(j)) continue;
        Polynomial coef = nonzero_polynomial(m, 1, 2);
        p.accumulate(Blade::from_mask(base.mask() | Blade::single(j).mask()), coef,
                     wedge_sign(base, Blade::single(j)));
      }
      if (!p.is_zero()) return p;
    }
  }

  // Constant field x -> A x with A unipotent upper triangular: the columns
  // form a frame that is independent everywhere.
  std::vector<VectorField> constant_frame(int m) {
    std::vector<VectorField> frame;
    for (int j = 1; j <= m; ++j) {
      VectorField f(m, 1);
      f.accumulate(Blade::single(j), Polynomial(1));
      for (int i = 1; i < j; ++i)
        if (uniform(0, 3) == 0) f.accumulate(Blade::single(i), Polynomial(uniform(-2, 2)));
      frame.push_back(std::move(f));
    }
    std::shuffle(frame.begin(), frame.end(), rng_);
    return frame;
  }

  // Unipotent upper triangular frame with degree-1 polynomial entries above
  // the diagonal; its determinant is 1, so it is independent at every point.
  std::vector<VectorField> polynomial_frame(int m) {
    std::vector<VectorField> frame;
    for (int j = 1; j <= m; ++j) {
      VectorField f(m, 1);
      f.accumulate(Blade::single(j), Polynomial(1));
      for (int i = 1; i < j; ++i)
        if (uniform(0, 2) == 0) {
          int offset = uniform(-1, 1);
          int var = uniform(1, m);
          int scale = uniform(1, 2);
          f.accumulate(Blade::single(i),
                       Polynomial(offset) + Polynomial::variable(var) * Polynomial(scale));
        }
      frame.push_back(std::move(f));
    }
    return frame;
  }

  Point point(int m) {
    Point x(static_cast<std::size_t>(m));
    for (auto& c : x) c = small_rational(false);
    return x;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace npk
