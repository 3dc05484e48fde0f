#pragma once

#include <algorithm>
#include <initializer_list>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "npk/blade.hpp"
#include "npk/rational.hpp"

namespace npk {

struct Contravariant {};
struct Covariant {};

namespace detail {
template <class S>
bool coeff_zero(const S& c) {
  return is_zero(c);
}
}  // namespace detail

inline void require_same_space(int dim_a, int dim_b) {
  if (dim_a != dim_b) throw std::invalid_argument("incompatible spaces");
}

// Homogeneous element of the exterior algebra over a `dim`-dimensional space
// (Contravariant) or its dual (Covariant), with coefficients in the ring S.
// Stored sparsely; zero coefficients are never kept.
template <class S, class Space>
class GradedTensor {
 public:
  using Scalar = S;
  using Terms = std::map<Blade, S, BladeLess>;

  GradedTensor() = default;
  GradedTensor(int dim, int grade) : dim_(dim), grade_(grade) {
    if (dim < 0 || dim > kMaxDim) throw std::invalid_argument("dimension out of range");
    if (grade < 0 || grade > dim + 1) throw std::invalid_argument("grade out of range");
  }
  GradedTensor(int dim, int grade, std::initializer_list<std::pair<Blade, S>> terms)
      : GradedTensor(dim, grade) {
    for (const auto& [b, c] : terms) add_term(b, c);
  }

  static GradedTensor scalar(int dim, const S& value) {
    GradedTensor t(dim, 0);
    t.add_term(Blade{}, value);
    return t;
  }
  static GradedTensor basis(int dim, Blade b, const S& coef = S(1)) {
    GradedTensor t(dim, b.grade());
    t.add_term(b, coef);
    return t;
  }
  static GradedTensor basis(int dim, std::initializer_list<int> indices, const S& coef = S(1)) {
    return basis(dim, Blade::from_indices(indices), coef);
  }

  int dim() const { return dim_; }
  int grade() const { return grade_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coefficient(Blade b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(Blade b, const S& c) {
    if (b.grade() != grade_)
      throw std::invalid_argument("blade " + b.to_string() + " has wrong grade");
    if (b.max_index() > dim_)
      throw std::invalid_argument("blade " + b.to_string() + " exceeds dimension");
    accumulate(b, c);
  }

  // Unchecked accumulation for callers that already guarantee the blade fits.
  void accumulate(Blade b, const S& c) {
    if (detail::coeff_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_zero(it->second)) terms_.erase(it);
    }
  }
  void accumulate(Blade b, const S& c, int sign) {
    if (sign > 0) {
      accumulate(b, c);
    } else if (sign < 0 && !detail::coeff_zero(c)) {
      auto [it, inserted] = terms_.try_emplace(b, S(-c));
      if (!inserted) {
        it->second -= c;
        if (detail::coeff_zero(it->second)) terms_.erase(it);
      }
    }
  }

  GradedTensor& operator+=(const GradedTensor& o) {
    check_compatible(o);
    for (const auto& [b, c] : o.terms_) accumulate(b, c);
    return *this;
  }
  GradedTensor& operator-=(const GradedTensor& o) {
    check_compatible(o);
    for (const auto& [b, c] : o.terms_) accumulate(b, c, -1);
    return *this;
  }
  GradedTensor& operator*=(const S& s) {
    if (detail::coeff_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      if (detail::coeff_zero(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  friend GradedTensor operator+(GradedTensor a, const GradedTensor& b) { return a += b; }
  friend GradedTensor operator-(GradedTensor a, const GradedTensor& b) { return a -= b; }
  friend GradedTensor operator-(GradedTensor a) {
    for (auto& [b, c] : a.terms_) c = -c;
    return a;
  }
  friend GradedTensor operator*(GradedTensor a, const S& s) { return a *= s; }
  friend GradedTensor operator*(const S& s, GradedTensor a) { return a *= s; }

  friend bool operator==(const GradedTensor& a, const GradedTensor& b) {
    return a.dim_ == b.dim_ && a.grade_ == b.grade_ && a.terms_ == b.terms_;
  }

  // Coefficient-wise image under f, dropping terms that map to zero.
  template <class F>
  auto map(F&& f) const {
    using T = std::decay_t<decltype(f(std::declval<const S&>()))>;
    GradedTensor<T, Space> out(dim_, grade_);
    for (const auto& [b, c] : terms_) out.accumulate(b, f(c));
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, c] : terms_) {
      if (!first) os << " + ";
      os << "(" << c << ")";
      if (b.grade() > 0) os << (std::is_same_v<Space, Covariant> ? "eps" : "e") << b.to_string();
      first = false;
    }
    return os.str();
  }

 private:
  void check_compatible(const GradedTensor& o) const {
    require_same_space(dim_, o.dim_);
    if (grade_ != o.grade_) throw std::invalid_argument("grade mismatch");
  }

  int dim_ = 0;
  int grade_ = 0;
  Terms terms_;
};

template <class S = Rational>
using Multivector = GradedTensor<S, Contravariant>;
template <class S = Rational>
using MultiCovector = GradedTensor<S, Covariant>;

// Dense element of the dual space, components indexed 1..dim.
template <class S = Rational>
class Covector {
 public:
  Covector() = default;
  explicit Covector(int dim) : comps_(static_cast<std::size_t>(dim), S(0)) {}
  explicit Covector(std::vector<S> comps) : comps_(std::move(comps)) {}

  static Covector basis(int dim, int index) {
    if (index < 1 || index > dim) throw std::invalid_argument("covector index out of range");
    Covector c(dim);
    c.comps_[index - 1] = S(1);
    return c;
  }

  int dim() const { return static_cast<int>(comps_.size()); }
  const S& operator[](int index) const { return comps_.at(index - 1); }
  S& operator[](int index) { return comps_.at(index - 1); }
  const std::vector<S>& components() const { return comps_; }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const S& c) { return detail::coeff_zero(c); });
  }

  MultiCovector<S> as_form() const {
    MultiCovector<S> f(dim(), 1);
    for (int u = 1; u <= dim(); ++u) f.accumulate(Blade::single(u), comps_[u - 1]);
    return f;
  }

  friend bool operator==(const Covector&, const Covector&) = default;

 private:
  std::vector<S> comps_;
};

template <class S, class Space>
GradedTensor<S, Space> wedge(const GradedTensor<S, Space>& a, const GradedTensor<S, Space>& b) {
  require_same_space(a.dim(), b.dim());
  const int m = a.dim();
  const int grade = a.grade() + b.grade();
  GradedTensor<S, Space> out(m, std::min(grade, m + 1));
  if (grade > m) return out;
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      int sign = wedge_sign(ba, bb);
      if (sign == 0) continue;
      S prod = ca * cb;
      out.accumulate(Blade::from_mask(ba.mask() | bb.mask()), prod, sign);
    }
  }
  return out;
}

// i(eps^u) P, contracting the first slot.
template <class S>
Multivector<S> contract_basis(int index, const Multivector<S>& p) {
  if (p.grade() == 0) throw std::invalid_argument("cannot contract a scalar");
  if (index < 1 || index > p.dim()) throw std::invalid_argument("covector index out of range");
  Multivector<S> out(p.dim(), p.grade() - 1);
  for (const auto& [b, c] : p.terms()) {
    int sign = contract_sign(index, b);
    if (sign != 0) out.accumulate(b.without(index), c, sign);
  }
  return out;
}

// i(alpha) P, contracting the first slot: (i(alpha)P)^{a_2..a_n} = sum_u alpha_u P^{u a_2..a_n}.
template <class S>
Multivector<S> contract(const Covector<S>& alpha, const Multivector<S>& p) {
  require_same_space(alpha.dim(), p.dim());
  if (p.grade() == 0) throw std::invalid_argument("cannot contract a scalar");
  Multivector<S> out(p.dim(), p.grade() - 1);
  for (const auto& [b, c] : p.terms()) {
    for (std::uint64_t m = b.mask(); m != 0; m &= m - 1) {
      int u = std::countr_zero(m);
      const S& a = alpha[u];
      if (is_zero(a)) continue;
      S prod = a * c;
      out.accumulate(b.without(u), prod, contract_sign(u, b));
    }
  }
  return out;
}

// i(eps^{L}) P for a basis form, factors applied innermost first.
template <class S>
Multivector<S> contract_blade(Blade form, const Multivector<S>& p) {
  if (form.grade() > p.grade()) throw std::invalid_argument("contraction exceeds grade");
  Multivector<S> out(p.dim(), p.grade() - form.grade());
  for (const auto& [b, c] : p.terms()) {
    int sign = contract_sign(form, b);
    if (sign != 0) out.accumulate(Blade::from_mask(b.mask() & ~form.mask()), c, sign);
  }
  return out;
}

// i(lambda) P with i(a_1 ^ ... ^ a_k) = i(a_k) o ... o i(a_1), extended linearly.
template <class S>
Multivector<S> contract(const MultiCovector<S>& lambda, const Multivector<S>& p) {
  require_same_space(lambda.dim(), p.dim());
  if (lambda.grade() > p.grade()) throw std::invalid_argument("contraction exceeds grade");
  Multivector<S> out(p.dim(), p.grade() - lambda.grade());
  for (const auto& [l, cl] : lambda.terms()) {
    for (const auto& [b, c] : p.terms()) {
      int sign = contract_sign(l, b);
      if (sign == 0) continue;
      S prod = cl * c;
      out.accumulate(Blade::from_mask(b.mask() & ~l.mask()), prod, sign);
    }
  }
  return out;
}

// Coefficient of an arbitrary (unsorted, possibly repeated) index tuple,
// extended by antisymmetry.
template <class S, class Space>
S component(const GradedTensor<S, Space>& t, std::span<const int> indices) {
  auto sorted = sort_indices(indices);
  if (!sorted) return S(0);
  auto it = t.terms().find(sorted->first);
  if (it == t.terms().end()) return S(0);
  return sorted->second > 0 ? it->second : S(-it->second);
}

// Vector in L from dense components (1-based positions).
template <class S>
Multivector<S> vector_from(const std::vector<S>& comps) {
  const int m = static_cast<int>(comps.size());
  Multivector<S> v(m, 1);
  for (int u = 1; u <= m; ++u) v.accumulate(Blade::single(u), comps[u - 1]);
  return v;
}

template <class S>
std::vector<S> dense_components(const Multivector<S>& v) {
  if (v.grade() != 1) throw std::invalid_argument("expected a vector");
  std::vector<S> out(static_cast<std::size_t>(v.dim()), S(0));
  for (const auto& [b, c] : v.terms()) out[b.max_index() - 1] = c;
  return out;
}

template <class S, class Space>
GradedTensor<S, Space> wedge_all(int dim, const std::vector<GradedTensor<S, Space>>& factors) {
  GradedTensor<S, Space> acc = GradedTensor<S, Space>::scalar(dim, S(1));
  for (const auto& f : factors) acc = wedge(acc, f);
  return acc;
}

}  // namespace npk
