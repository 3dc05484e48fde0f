#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "npk/exterior.hpp"
#include "npk/polynomial.hpp"

namespace npk {

// Multivector field on Q^m with polynomial components in x^1..x^m.
using PolyMultivectorField = Multivector<Polynomial>;
using VectorField = Multivector<Polynomial>;
using Point = std::vector<Rational>;

inline PolyMultivectorField to_field(const Multivector<Rational>& p) {
  return p.map([](const Rational& c) { return Polynomial(c); });
}

// Throws if a component uses a variable beyond the field's dimension.
inline void check_field(const PolyMultivectorField& p) {
  for (const auto& [b, c] : p.terms())
    if (c.num_vars() > p.dim())
      throw std::invalid_argument("component of " + b.to_string() +
                                  " uses a variable beyond the dimension");
}

inline PolyMultivectorField partial_derivative(const PolyMultivectorField& p, int u) {
  if (u < 1 || u > p.dim()) throw std::invalid_argument("coordinate index out of range");
  return p.map([u](const Polynomial& c) { return c.derivative(u); });
}

inline Multivector<Rational> evaluate_at(const PolyMultivectorField& p, std::span<const Rational> point) {
  if (static_cast<int>(point.size()) != p.dim())
    throw std::invalid_argument("point has wrong number of coordinates");
  return p.map([&](const Polynomial& c) { return c.evaluate(point); });
}

inline bool has_constant_coefficients(const PolyMultivectorField& p) {
  for (const auto& [b, c] : p.terms())
    if (!c.is_constant()) return false;
  return true;
}

inline Covector<Polynomial> gradient(const Polynomial& f, int m) {
  if (f.num_vars() > m) throw std::invalid_argument("function uses a variable beyond the dimension");
  Covector<Polynomial> g(m);
  for (int u = 1; u <= m; ++u) g[u] = f.derivative(u);
  return g;
}

// {f_1, ..., f_n} = P(df_1, ..., df_n).
inline Polynomial nary_bracket(const PolyMultivectorField& p, std::span<const Polynomial> fs) {
  if (static_cast<int>(fs.size()) != p.grade())
    throw std::invalid_argument("bracket needs exactly " + std::to_string(p.grade()) + " arguments");
  PolyMultivectorField q = p;
  for (const auto& f : fs) {
    if (q.is_zero()) return Polynomial{};
    q = contract(gradient(f, p.dim()), q);
  }
  return q.coefficient(Blade{});
}
inline Polynomial nary_bracket(const PolyMultivectorField& p, std::initializer_list<Polynomial> fs) {
  return nary_bracket(p, std::span<const Polynomial>(fs.begin(), fs.size()));
}

// sum_u (i(dx^u) P) ^ (d/dx^u P), a (2n-1)-vector field; vanishes identically
// iff the differential condition holds. Canonical zero when 2n-1 > m.
inline PolyMultivectorField d_defect(const PolyMultivectorField& p) {
  const int m = p.dim();
  const int n = p.grade();
  const int grade = 2 * n - 1;
  PolyMultivectorField out(m, std::min(grade, m + 1));
  if (n == 0 || grade > m) return out;
  for (int u = 1; u <= m; ++u) {
    PolyMultivectorField dp = partial_derivative(p, u);
    if (dp.is_zero()) continue;
    PolyMultivectorField ip = contract_basis(u, p);
    if (ip.is_zero()) continue;
    out += wedge(ip, dp);
  }
  return out;
}

namespace detail {

inline long factorial(int k) {
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Calls visit(subset, sign) for every k-subset of {0..n-1} in lexicographic
// order, with sign the parity of the shuffle (subset, complement).
template <class F>
void for_each_shuffle(int n, int k, F&& visit) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    int inv = 0;
    for (int j = 0; j < k; ++j) inv += idx[j] - j;
    visit(idx, (inv & 1) ? -1 : 1);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// sum over S_{2n-1} of sign(s) {{f_s1..f_sn}, f_s(n+1)..f_s(2n-1)}, computed as
// n!(n-1)! times the sum over (n, n-1)-shuffles.
inline Polynomial jacobi_defect(const PolyMultivectorField& p, std::span<const Polynomial> fs) {
  const int n = p.grade();
  const int m = p.dim();
  if (n < 1) throw std::invalid_argument("bracket order must be >= 1");
  if (static_cast<int>(fs.size()) != 2 * n - 1)
    throw std::invalid_argument("Jacobi identity needs exactly " + std::to_string(2 * n - 1) +
                                " arguments");
  std::vector<Covector<Polynomial>> grads;
  grads.reserve(fs.size());
  for (const auto& f : fs) grads.push_back(gradient(f, m));

  Polynomial total;
  const int count = 2 * n - 1;
  detail::for_each_shuffle(count, n, [&](const std::vector<int>& inner, int sign) {
    std::vector<bool> in(static_cast<std::size_t>(count), false);
    for (int i : inner) in[i] = true;
    PolyMultivectorField q = p;
    for (int i : inner) {
      if (q.is_zero()) return;
      q = contract(grads[i], q);
    }
    Polynomial inner_value = q.coefficient(Blade{});
    if (inner_value.is_zero() || inner_value.is_constant()) return;
    q = contract(gradient(inner_value, m), p);
    for (int i = 0; i < count; ++i) {
      if (in[i]) continue;
      if (q.is_zero()) return;
      q = contract(grads[i], q);
    }
    Polynomial outer = q.coefficient(Blade{});
    if (sign > 0)
      total += outer;
    else
      total -= outer;
  });
  return total.scaled(Rational(detail::factorial(n) * detail::factorial(n - 1)));
}
inline Polynomial jacobi_defect(const PolyMultivectorField& p, std::initializer_list<Polynomial> fs) {
  return jacobi_defect(p, std::span<const Polynomial>(fs.begin(), fs.size()));
}

struct JacobiViolation {
  std::vector<Polynomial> arguments;
  Polynomial defect;
};

// Searches the generating family of test functions: all increasing coordinate
// tuples of length 2n-1, then x^u x^v followed by increasing coordinate tuples
// of length 2n-2. The identity holds for all smooth arguments iff no family
// member violates it.
inline std::optional<JacobiViolation> find_jacobi_violation(const PolyMultivectorField& p) {
  const int n = p.grade();
  const int m = p.dim();
  if (n < 1) return std::nullopt;
  auto coords = [&](const std::vector<int>& subset) {
    std::vector<Polynomial> fs;
    for (int i : subset) fs.push_back(Polynomial::variable(i + 1));
    return fs;
  };
  std::optional<JacobiViolation> found;
  auto check = [&](std::vector<Polynomial> fs) {
    Polynomial d = jacobi_defect(p, fs);
    if (!d.is_zero()) found = JacobiViolation{std::move(fs), std::move(d)};
  };
  if (2 * n - 1 <= m) {
    detail::for_each_shuffle(m, 2 * n - 1, [&](const std::vector<int>& subset, int) {
      if (!found) check(coords(subset));
    });
    if (found) return found;
  }
  if (2 * n - 2 <= m) {
    for (int u = 1; u <= m && !found; ++u) {
      for (int v = u; v <= m && !found; ++v) {
        Polynomial quad = Polynomial::variable(u) * Polynomial::variable(v);
        detail::for_each_shuffle(m, 2 * n - 2, [&](const std::vector<int>& subset, int) {
          if (found) return;
          auto fs = coords(subset);
          fs.insert(fs.begin(), quad);
          check(std::move(fs));
        });
      }
    }
  }
  return found;
}

inline bool jacobi_oracle(const PolyMultivectorField& p) { return !find_jacobi_violation(p); }

// [X, Y]^j = X^i d_i Y^j - Y^i d_i X^j for vector fields.
inline VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  if (x.grade() != 1 || y.grade() != 1) throw std::invalid_argument("Lie bracket needs vector fields");
  require_same_space(x.dim(), y.dim());
  VectorField out(x.dim(), 1);
  for (const auto& [bx, cx] : x.terms()) {
    int i = bx.max_index();
    for (const auto& [by, cy] : y.terms()) out.accumulate(by, cx * cy.derivative(i));
  }
  for (const auto& [by, cy] : y.terms()) {
    int i = by.max_index();
    for (const auto& [bx, cx] : x.terms()) out.accumulate(bx, Polynomial(-(cy * cx.derivative(i))));
  }
  return out;
}

}  // namespace npk
