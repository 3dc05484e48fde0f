#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "npk/exterior.hpp"
#include "npk/poly_field.hpp"

namespace npk {

struct SigmaMembership {
  bool holds = true;
  std::optional<std::pair<int, int>> witness;  // first failing basis pair (a, b), a <= b
};

// U lies in Sigma^q when (i(alpha)P) ^ (i(alpha)U) = 0 for every alpha. By
// polarization this is
//   (i(dx^a)P) ^ (i(dx^b)U) + (i(dx^b)P) ^ (i(dx^a)U) = 0   for all a <= b,
// checked as polynomial identities.
inline SigmaMembership sigma_membership(const PolyMultivectorField& p, const PolyMultivectorField& u) {
  require_same_space(p.dim(), u.dim());
  SigmaMembership out;
  if (u.grade() == 0 || p.grade() == 0) return out;
  const int m = p.dim();
  std::vector<PolyMultivectorField> cp, cu;
  for (int a = 1; a <= m; ++a) {
    cp.push_back(contract_basis(a, p));
    cu.push_back(contract_basis(a, u));
  }
  for (int a = 1; a <= m; ++a) {
    for (int b = a; b <= m; ++b) {
      PolyMultivectorField s = wedge(cp[a - 1], cu[b - 1]);
      s += wedge(cp[b - 1], cu[a - 1]);
      if (!s.is_zero()) {
        out.holds = false;
        out.witness = std::pair{a, b};
        return out;
      }
    }
  }
  return out;
}

// delta U = sum_u (i(dx^u)P) ^ (d_u U) + (i(dx^u)U) ^ (d_u P), of grade q+n-1.
// For a function f this reduces to i(df)P.
inline PolyMultivectorField delta(const PolyMultivectorField& p, const PolyMultivectorField& u) {
  require_same_space(p.dim(), u.dim());
  if (p.grade() < 1) throw std::invalid_argument("delta needs P of order >= 1");
  if (!sigma_membership(p, u).holds) throw std::invalid_argument("U not in Sigma^q");
  const int m = p.dim();
  const int grade = u.grade() + p.grade() - 1;
  PolyMultivectorField out(m, std::min(grade, m + 1));
  if (grade > m) return out;
  for (int x = 1; x <= m; ++x) {
    PolyMultivectorField du = partial_derivative(u, x);
    if (!du.is_zero()) out += wedge(contract_basis(x, p), du);
    if (u.grade() > 0) {
      PolyMultivectorField dp = partial_derivative(p, x);
      if (!dp.is_zero()) out += wedge(contract_basis(x, u), dp);
    }
  }
  return out;
}

inline PolyMultivectorField scalar_field(int m, const Polynomial& f) {
  return PolyMultivectorField::scalar(m, f);
}

}  // namespace npk
