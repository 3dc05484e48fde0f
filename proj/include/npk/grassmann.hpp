#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "npk/exterior.hpp"
#include "npk/linalg.hpp"
#include "npk/poly_field.hpp"

namespace npk {

struct SharpProfile {
  int rank = 0;
  Subspace image;        // im sharp_P in L
  Subspace annihilator;  // A(P) = {alpha : i(alpha)P = 0} in L*
};

// Image of lambda -> i(lambda)P over basis (n-1)-forms, and the annihilator
// computed independently as the kernel of alpha -> i(alpha)P.
inline SharpProfile sharp_profile(const Multivector<Rational>& p) {
  if (p.grade() < 1) throw std::invalid_argument("sharp map needs grade >= 1");
  const int m = p.dim();
  std::map<Blade, RationalVector, BladeLess> images;
  for (const auto& [b, c] : p.terms()) {
    for (std::uint64_t bits = b.mask(); bits != 0; bits &= bits - 1) {
      int u = std::countr_zero(bits);
      Blade lambda = b.without(u);
      auto [it, inserted] = images.try_emplace(lambda, RationalVector(m, Rational(0)));
      if (contract_sign(lambda, b) > 0)
        it->second[u - 1] += c;
      else
        it->second[u - 1] -= c;
    }
  }
  std::vector<RationalVector> spanning;
  for (auto& [l, v] : images) spanning.push_back(std::move(v));

  std::map<Blade, RationalVector, BladeLess> rows;
  for (int u = 1; u <= m; ++u) {
    Multivector<Rational> contracted = contract_basis(u, p);
    for (const auto& [b, c] : contracted.terms()) {
      auto [it, inserted] = rows.try_emplace(b, RationalVector(m, Rational(0)));
      it->second[u - 1] = c;
    }
  }
  std::vector<RationalVector> row_list;
  for (auto& [b, r] : rows) row_list.push_back(std::move(r));

  SharpProfile out;
  out.image = Subspace::span(m, std::move(spanning));
  out.annihilator = null_space(row_list, m);
  out.rank = out.image.dim();
  return out;
}

inline int rank_of(const Multivector<Rational>& p) {
  if (p.grade() == 0) return 0;
  return sharp_profile(p).rank;
}

// Plucker defects (i(lambda)P) ^ P over basis (n-1)-forms lambda, keeping the
// nonzero ones. Only lambda contained in some blade of P can contribute.
template <class S>
std::vector<std::pair<Blade, Multivector<S>>> plucker_defects(const Multivector<S>& p,
                                                              bool stop_at_first = false) {
  std::vector<std::pair<Blade, Multivector<S>>> out;
  if (p.grade() < 2) return out;
  std::set<Blade, BladeLess> lambdas;
  for (const auto& [b, c] : p.terms())
    for (std::uint64_t bits = b.mask(); bits != 0; bits &= bits - 1)
      lambdas.insert(b.without(std::countr_zero(bits)));
  for (Blade lambda : lambdas) {
    Multivector<S> v = contract_blade(lambda, p);
    if (v.is_zero()) continue;
    Multivector<S> d = wedge(v, p);
    if (!d.is_zero()) {
      out.emplace_back(lambda, std::move(d));
      if (stop_at_first) break;
    }
  }
  return out;
}

// Plucker test; with polynomial coefficients this decides decomposability at
// every point. The zero tensor counts as decomposable.
template <class S>
bool is_decomposable(const Multivector<S>& p) {
  if (p.grade() < 1) throw std::invalid_argument("decomposability needs grade >= 1");
  return plucker_defects(p, true).empty();
}

// First basis pair (a, b), a <= b, in lexicographic order with
// (i(dx^a)P) ^ (i(dx^b)P) != 0. By bilinearity none means the algebraic
// condition holds for all covector pairs.
template <class S>
std::optional<std::pair<int, int>> condition_a_failure(const Multivector<S>& p) {
  const int m = p.dim();
  if (p.grade() < 1) throw std::invalid_argument("condition (A) needs grade >= 1");
  std::vector<Multivector<S>> c;
  c.reserve(m);
  for (int u = 1; u <= m; ++u) c.push_back(contract_basis(u, p));
  for (int a = 1; a <= m; ++a) {
    if (c[a - 1].is_zero()) continue;
    for (int b = a; b <= m; ++b) {
      if (c[b - 1].is_zero()) continue;
      if (!wedge(c[a - 1], c[b - 1]).is_zero()) return std::pair{a, b};
    }
  }
  return std::nullopt;
}

struct Factorization {
  std::vector<RationalVector> factors;

  Multivector<Rational> wedge_product(int dim) const {
    std::vector<Multivector<Rational>> vs;
    for (const auto& f : factors) vs.push_back(vector_from(f));
    return wedge_all(dim, vs);
  }
};

// W_1..W_n with W_1 ^ ... ^ W_n = P: the reduced basis of im sharp_P,
// with the first factor rescaled to carry the overall coefficient.
inline Factorization factorize(const Multivector<Rational>& p) {
  if (p.grade() < 1) throw std::invalid_argument("factorization needs grade >= 1");
  if (p.is_zero()) throw std::domain_error("zero tensor");
  SharpProfile prof = sharp_profile(p);
  if (prof.rank != p.grade()) throw std::domain_error("not decomposable");
  Factorization f{prof.image.basis()};
  Multivector<Rational> w = f.wedge_product(p.dim());
  const auto& [blade, coef] = *p.terms().begin();
  Rational scale = coef / w.coefficient(blade);
  for (auto& x : f.factors[0]) x *= scale;
  if (f.wedge_product(p.dim()) != p) throw std::logic_error("factorization round trip failed");
  return f;
}

// Decides whether i(alpha_1)...i(alpha_k)P is decomposable for every tuple of
// covectors, treating the k*m tuple components as indeterminates.
inline bool contraction_profile(const Multivector<Rational>& p, int k) {
  const int n = p.grade();
  if (n < 3) throw std::invalid_argument("contraction profile needs grade >= 3");
  if (k < 1 || k > n - 2) throw std::invalid_argument("k out of Lemma 3 range");
  const int m = p.dim();
  Multivector<Polynomial> q = to_field(p);
  for (int j = 0; j < k; ++j) {
    Covector<Polynomial> alpha(m);
    for (int u = 1; u <= m; ++u) alpha[u] = Polynomial::variable(j * m + u);
    q = contract(alpha, q);
  }
  return is_decomposable(q);
}

struct SubspaceRelation {
  bool inclusion_holds = false;  // im sharp_{i(a)P} within ker a n im sharp_P
  bool equality_holds = false;   // the same with equality
  int rank_drop = 0;             // rank P - rank i(a)P
};

inline SubspaceRelation contraction_subspace_relation(const Multivector<Rational>& p,
                                                      const Covector<Rational>& alpha) {
  if (p.grade() < 1) throw std::invalid_argument("contraction needs grade >= 1");
  const int m = p.dim();
  Multivector<Rational> q = contract(alpha, p);
  SharpProfile pp = sharp_profile(p);
  Subspace image_q = q.grade() >= 1 ? sharp_profile(q).image : Subspace::zero(m);
  Subspace kernel_alpha = null_space({alpha.components()}, m);
  Subspace rhs = intersect(kernel_alpha, pp.image);
  SubspaceRelation out;
  out.inclusion_holds = is_subspace_of(image_q, rhs);
  out.equality_holds = image_q == rhs;
  out.rank_drop = pp.rank - image_q.dim();
  return out;
}

enum class IrreducibilityKind {
  certified_irreducible,  // condition (A) holds exactly
  certified_by_rank,      // rank < 2n leaves no room for two grade-n summands
  no_witness_found,
  reducibility_witness,
};

struct IrreducibilityVerdict {
  IrreducibilityKind kind = IrreducibilityKind::no_witness_found;
  int rank = 0;
  std::optional<Covector<Rational>> witness;
};

// Covector alpha with i(alpha)P != 0 and rank i(alpha)P <= rank P - n. Tries
// the basis covectors, then `samples` random integer covectors.
inline std::optional<Covector<Rational>> find_reducibility_witness(const Multivector<Rational>& p,
                                                                   int samples, std::uint64_t seed) {
  const int m = p.dim();
  const int n = p.grade();
  const int rank = rank_of(p);
  auto qualifies = [&](const Covector<Rational>& alpha) {
    Multivector<Rational> q = contract(alpha, p);
    return !q.is_zero() && rank_of(q) <= rank - n;
  };
  for (int u = 1; u <= m; ++u) {
    auto alpha = Covector<Rational>::basis(m, u);
    if (qualifies(alpha)) return alpha;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int s = 0; s < samples; ++s) {
    Covector<Rational> alpha(m);
    for (int u = 1; u <= m; ++u) alpha[u] = entry(rng);
    if (qualifies(alpha)) return alpha;
  }
  return std::nullopt;
}

inline IrreducibilityVerdict irreducibility_check(const Multivector<Rational>& p, int samples,
                                                  std::uint64_t seed) {
  if (p.grade() < 1) throw std::invalid_argument("irreducibility needs grade >= 1");
  if (p.is_zero()) throw std::invalid_argument("zero tensor");
  IrreducibilityVerdict out;
  out.rank = rank_of(p);
  if (out.rank < 2 * p.grade()) {
    out.kind = IrreducibilityKind::certified_by_rank;
    return out;
  }
  if (!condition_a_failure(p)) {
    out.kind = IrreducibilityKind::certified_irreducible;
    return out;
  }
  if (auto w = find_reducibility_witness(p, samples, seed)) {
    out.kind = IrreducibilityKind::reducibility_witness;
    out.witness = std::move(w);
  }
  return out;
}

inline const char* to_string(IrreducibilityKind k) {
  switch (k) {
    case IrreducibilityKind::certified_irreducible: return "certified_irreducible";
    case IrreducibilityKind::certified_by_rank: return "certified_by_rank";
    case IrreducibilityKind::no_witness_found: return "no_witness_found";
    case IrreducibilityKind::reducibility_witness: return "reducibility_witness";
  }
  return "?";
}

}  // namespace npk
