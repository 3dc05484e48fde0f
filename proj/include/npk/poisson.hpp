#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "npk/grassmann.hpp"
#include "npk/linalg.hpp"
#include "npk/poly_field.hpp"

namespace npk {

struct ConditionA {
  bool holds = true;
  std::optional<std::pair<int, int>> witness;  // first failing basis pair (a, b), a <= b
};

// (i(alpha)P) ^ (i(beta)P) = 0 for all covectors, decided on basis pairs as
// polynomial identities.
inline ConditionA condition_A(const PolyMultivectorField& p) {
  if (p.grade() < 3) throw std::invalid_argument("condition (A) is stated for n >= 3");
  ConditionA out;
  out.witness = condition_a_failure(p);
  out.holds = !out.witness;
  return out;
}

struct SampleOptions {
  int samples = 8;
  std::uint64_t seed = 0;
};

// Origin, the m unit points, then `samples` seeded random rational points.
inline std::vector<Point> default_sample_points(int m, const SampleOptions& opts = {}) {
  std::vector<Point> pts;
  pts.emplace_back(m, Rational(0));
  for (int u = 0; u < m; ++u) {
    Point e(m, Rational(0));
    e[u] = 1;
    pts.push_back(std::move(e));
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  for (int s = 0; s < opts.samples; ++s) {
    Point x(m);
    for (auto& c : x) {
      int a = num(rng);
      c = rational(a, den(rng));
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

struct SampleRank {
  Point point;
  int rank = 0;
};

enum class Parity { even, odd };

struct PoissonVerdict {
  int order = 0;
  Parity parity = Parity::odd;
  ConditionA condition_A;
  bool condition_D = true;
  bool is_poisson = false;
  std::vector<SampleRank> rank_at_samples;
  bool pointwise_decomposable = false;
  bool nambu_algebraic = false;
};

// (N2) on basis data: (i(dx^a)P) ^ i(Phi)i(dx^b)P + (a <-> b) = 0 for all
// a <= b and all basis (n-2)-forms Phi.
inline bool nambu_polarized_holds(const PolyMultivectorField& p) {
  const int m = p.dim();
  const int n = p.grade();
  std::vector<PolyMultivectorField> c;
  for (int u = 1; u <= m; ++u) c.push_back(contract_basis(u, p));
  for (Blade phi : blades_of_grade(m, n - 2)) {
    std::vector<PolyMultivectorField> v;
    v.reserve(m);
    for (int u = 1; u <= m; ++u) v.push_back(contract_blade(phi, c[u - 1]));
    for (int a = 1; a <= m; ++a) {
      for (int b = a; b <= m; ++b) {
        PolyMultivectorField s = wedge(c[a - 1], v[b - 1]);
        s += wedge(c[b - 1], v[a - 1]);
        if (!s.is_zero()) return false;
      }
    }
  }
  return true;
}

// (N1) in components:
//   sum_k P^{b_1..u..b_n} P^{v a_2..a_{n-1} b_k} + (u <-> v) = 0,
// with u at slot k. The expression is symmetric in (u, v) and antisymmetric in
// the a's and in the b's, so increasing tuples suffice.
inline bool nambu_component_holds(const PolyMultivectorField& p) {
  const int m = p.dim();
  const int n = p.grade();
  auto a_sets = blades_of_grade(m, n - 2);
  auto b_sets = blades_of_grade(m, n);
  auto term = [&](int u, int v, const std::vector<int>& as, const std::vector<int>& bs) {
    Polynomial sum;
    for (int k = 0; k < n; ++k) {
      std::vector<int> first = bs;
      first[k] = u;
      Polynomial left = component(p, std::span<const int>(first));
      if (left.is_zero()) continue;
      std::vector<int> second;
      second.push_back(v);
      second.insert(second.end(), as.begin(), as.end());
      second.push_back(bs[k]);
      Polynomial right = component(p, std::span<const int>(second));
      if (right.is_zero()) continue;
      sum += left * right;
    }
    return sum;
  };
  for (int u = 1; u <= m; ++u)
    for (int v = u; v <= m; ++v)
      for (Blade a : a_sets) {
        auto as = a.indices();
        for (Blade b : b_sets) {
          auto bs = b.indices();
          Polynomial total = term(u, v, as, bs);
          total += term(v, u, as, bs);
          if (!total.is_zero()) return false;
        }
      }
  return true;
}

// Algebraic Nambu condition, checked through the polarized form and
// cross-checked against the component form and pointwise decomposability.
inline bool is_nambu_algebraic(const PolyMultivectorField& p) {
  if (p.grade() < 3) throw std::invalid_argument("Nambu condition is stated for n >= 3");
  bool polarized = nambu_polarized_holds(p);
  bool components = nambu_component_holds(p);
  bool decomposable = is_decomposable(p);
  if (polarized != components || polarized != decomposable)
    throw std::logic_error("Nambu routes disagree");
  return polarized;
}

inline PoissonVerdict classify_poisson(const PolyMultivectorField& p, const SampleOptions& opts = {},
                                       std::vector<Point> points = {}) {
  const int n = p.grade();
  if (n < 3) throw std::invalid_argument("classification is stated for n >= 3");
  check_field(p);
  PoissonVerdict v;
  v.order = n;
  v.parity = n % 2 == 0 ? Parity::even : Parity::odd;
  v.condition_A = condition_A(p);
  v.condition_D = d_defect(p).is_zero();
  v.is_poisson = v.parity == Parity::even ? v.condition_D : v.condition_A.holds && v.condition_D;
  if (points.empty()) points = default_sample_points(p.dim(), opts);
  for (auto& x : points) {
    int r = rank_of(evaluate_at(p, x));
    v.rank_at_samples.push_back({std::move(x), r});
  }
  v.pointwise_decomposable = is_decomposable(p);
  v.nambu_algebraic = is_nambu_algebraic(p);
  return v;
}

// P = sum over h-subsets I of sign(I, I^c) V_I ^ W_{I^c}, which is the
// alternated sum with its 1/(h!(n-h)!) normalization absorbed.
inline PolyMultivectorField build_semidecomposable(const std::vector<VectorField>& v,
                                                   const std::vector<VectorField>& w, int h) {
  const int n = static_cast<int>(w.size());
  if (n < 3) throw std::invalid_argument("semi-decomposable fields need order >= 3");
  if (h < 0 || 2 * h > n - 3) throw std::invalid_argument("h out of Prop. 2 range");
  if (h > 0 && static_cast<int>(v.size()) != n)
    throw std::invalid_argument("need as many V fields as W fields");
  const int m = w.front().dim();
  for (const auto& f : w)
    if (f.grade() != 1 || f.dim() != m) throw std::invalid_argument("W must be vector fields on one space");
  for (const auto& f : v)
    if (f.grade() != 1 || f.dim() != m) throw std::invalid_argument("V must be vector fields on one space");

  PolyMultivectorField out(m, n);
  detail::for_each_shuffle(n, h, [&](const std::vector<int>& subset, int sign) {
    std::vector<bool> in(static_cast<std::size_t>(n), false);
    std::vector<VectorField> factors;
    for (int i : subset) {
      in[i] = true;
      factors.push_back(v[i]);
    }
    for (int i = 0; i < n; ++i)
      if (!in[i]) factors.push_back(w[i]);
    PolyMultivectorField term = wedge_all(m, factors);
    if (sign > 0)
      out += term;
    else
      out -= term;
  });
  return out;
}

inline VectorField coordinate_field(int m, int u) {
  return VectorField::basis(m, {u}, Polynomial(1));
}

// The y-block occupies coordinates 1..n and the x-block n+1..2n.
inline PolyMultivectorField example_15(int m, int h, int n) {
  if (n < 3 || h < 0 || 2 * h > n - 3) throw std::invalid_argument("h out of Prop. 2 range");
  if (m < 2 * n) throw std::invalid_argument("coordinate example needs m >= 2n");
  std::vector<VectorField> v, w;
  for (int i = 1; i <= n; ++i) {
    v.push_back(coordinate_field(m, i));
    w.push_back(coordinate_field(m, n + i));
  }
  return build_semidecomposable(v, w, h);
}

// sum_{i<s} d/dx^{2iu+1} ^ ... ^ d/dx^{2iu+2u}, an order n = 2u field.
inline PolyMultivectorField example_16(int u, int s, int m) {
  if (u < 1 || s < 1) throw std::invalid_argument("block example needs u, s >= 1");
  if (m < 2 * u * s) throw std::invalid_argument("block example needs m >= 2us");
  PolyMultivectorField out(m, 2 * u);
  for (int i = 0; i < s; ++i) {
    std::uint64_t mask = 0;
    for (int a = 2 * i * u + 1; a <= 2 * (i * u + u); ++a) mask |= std::uint64_t{1} << a;
    out.accumulate(Blade::from_mask(mask), Polynomial(1));
  }
  return out;
}

struct InvolutivityReport {
  bool involutive = true;
  std::vector<std::size_t> skipped;  // sample points where P vanishes
  std::vector<std::string> notices;
  std::optional<std::size_t> failing_point;
};

// Sampled test that the distribution spanned by the fields i(lambda)P is
// closed under Lie brackets. Only a failure is a certificate.
inline InvolutivityReport involutivity_sample(const PolyMultivectorField& p, std::vector<Point> points,
                                              std::uint64_t seed = 0) {
  const int m = p.dim();
  const int n = p.grade();
  if (n < 1) throw std::invalid_argument("involutivity needs grade >= 1");
  if (points.empty()) points = default_sample_points(m, {8, seed});

  std::vector<VectorField> gens;
  for (Blade lambda : blades_of_grade(m, n - 1)) {
    VectorField g = contract_blade(lambda, p);
    if (!g.is_zero()) gens.push_back(std::move(g));
  }
  std::vector<VectorField> brackets;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      VectorField b = lie_bracket(gens[i], gens[j]);
      if (!b.is_zero()) brackets.push_back(std::move(b));
    }

  InvolutivityReport out;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Point& x = points[k];
    if (evaluate_at(p, x).is_zero()) {
      out.skipped.push_back(k);
      out.notices.push_back("P vanishes at sample point " + std::to_string(k) + "; skipped");
      continue;
    }
    std::vector<RationalVector> values;
    for (const auto& g : gens) values.push_back(dense_components(evaluate_at(g, x)));
    Subspace span = Subspace::span(m, std::move(values));
    if (span.dim() != n)
      throw std::invalid_argument("sampled rank " + std::to_string(span.dim()) +
                                  " differs from the order; P is not decomposable there");
    for (const auto& b : brackets) {
      if (!contains(span, dense_components(evaluate_at(b, x)))) {
        out.involutive = false;
        if (!out.failing_point) out.failing_point = k;
        break;
      }
    }
  }
  return out;
}

}  // namespace npk
