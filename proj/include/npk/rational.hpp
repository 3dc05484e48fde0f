#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace npk {

using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

// Accepts "p/q" or an integer, optional leading '-'. The result is canonical.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!digits(num) || !digits(den))
    throw std::invalid_argument("bad rational \"" + std::string(text) + "\"");
  mpz_class d(std::string(den), 10);
  if (d == 0)
    throw std::invalid_argument("bad rational \"" + std::string(text) +
                                "\": zero denominator");
  Rational r(mpz_class(std::string(num), 10), d);
  r.canonicalize();
  if (text.front() == '-') r = -r;
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Rational rational(std::int64_t num, std::int64_t den = 1) {
  Rational r{mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))};
  r.canonicalize();
  return r;
}

}  // namespace npk
