#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "npk/rational.hpp"

namespace npk {

// Exponent vector of a monomial in x^1, x^2, ...; entry i is the power of
// x^{i+1}. Trailing zeros are trimmed so each monomial has one representation.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) { trim(); }

  static Monomial variable(int u, unsigned power = 1) {
    if (u < 1) throw std::invalid_argument("variable index must be >= 1");
    std::vector<unsigned> e(static_cast<std::size_t>(u), 0);
    e[u - 1] = power;
    return Monomial(std::move(e));
  }

  unsigned exponent(int u) const {
    return u >= 1 && u <= static_cast<int>(exps_.size()) ? exps_[u - 1] : 0;
  }
  // Highest variable index that occurs.
  int num_vars() const { return static_cast<int>(exps_.size()); }
  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exps_) d += e;
    return d;
  }
  const std::vector<unsigned>& exponents() const { return exps_; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    std::vector<unsigned> e(std::max(a.exps_.size(), b.exps_.size()), 0);
    for (std::size_t i = 0; i < a.exps_.size(); ++i) e[i] += a.exps_[i];
    for (std::size_t i = 0; i < b.exps_.size(); ++i) e[i] += b.exps_[i];
    Monomial m;
    m.exps_ = std::move(e);
    return m;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  void trim() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  }
  std::vector<unsigned> exps_;
};

// Sparse multivariate polynomial with rational coefficients.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT: implicit scalar embedding
    if (!npk::is_zero(c)) terms_.emplace(Monomial{}, c);
  }
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
  Polynomial(int c) : Polynomial(Rational(c)) {}   // NOLINT

  static Polynomial variable(int u) { return monomial(Rational(1), Monomial::variable(u)); }
  static Polynomial monomial(const Rational& c, Monomial m) {
    Polynomial p;
    if (!npk::is_zero(c)) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.num_vars() == 0);
  }
  Rational constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  int num_vars() const {
    int n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, m.num_vars());
    return n;
  }
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
    return d;
  }

  void add_term(Monomial m, const Rational& c) {
    if (npk::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (npk::is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) {
      auto [it, inserted] = terms_.try_emplace(m, -c);
      if (!inserted) {
        it->second -= c;
        if (npk::is_zero(it->second)) terms_.erase(it);
      }
    }
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    if (a.terms_.empty() || b.terms_.empty()) return out;
    if (b.is_constant()) return a.scaled(b.terms_.begin()->second);
    if (a.is_constant()) return b.scaled(a.terms_.begin()->second);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial scaled(const Rational& s) const {
    Polynomial out;
    if (npk::is_zero(s)) return out;
    out.terms_ = terms_;
    for (auto& [m, c] : out.terms_) c *= s;
    return out;
  }

  Polynomial derivative(int u) const {
    if (u < 1) throw std::invalid_argument("variable index must be >= 1");
    Polynomial out;
    for (const auto& [m, c] : terms_) {
      unsigned e = m.exponent(u);
      if (e == 0) continue;
      std::vector<unsigned> exps = m.exponents();
      exps[u - 1] -= 1;
      out.add_term(Monomial(std::move(exps)), c * e);
    }
    return out;
  }

  // Exact value at a point; the point must cover every variable in use.
  Rational evaluate(std::span<const Rational> point) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
      if (m.num_vars() > static_cast<int>(point.size()))
        throw std::invalid_argument("evaluation point has too few coordinates");
      Rational term = c;
      const auto& e = m.exponents();
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
        if (npk::is_zero(term)) break;
      }
      total += term;
    }
    return total;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << (sgn(c) < 0 ? " - " : " + ");
      Rational a = first ? Rational(c) : Rational(abs(c));
      bool unit = m.num_vars() > 0 && (a == 1 || a == -1);
      if (unit && a == -1) os << "-";
      if (!unit) os << a;
      bool first_var = true;
      for (int i = 0; i < m.num_vars(); ++i) {
        unsigned e = m.exponents()[i];
        if (e == 0) continue;
        if (!unit || !first_var) os << "*";
        os << "x" << (i + 1);
        if (e > 1) os << "^" << e;
        first_var = false;
      }
      first = false;
    }
    return os.str();
  }

 private:
  Terms terms_;
};

inline bool is_zero(const Polynomial& p) { return p.is_zero(); }

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  return os << p.to_string();
}

}  // namespace npk
