#ifndef DIRACGB_RATIONAL_HPP
#define DIRACGB_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace diracgb {

// Exact rationals backed by GMP. mpq_class keeps values canonical
// (reduced, positive denominator, zero as 0/1) as long as every value is
// built through the helpers below or through mpq_class arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a", "-a" or "a/b" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

/// True iff gcd(|num|, den) = 1 and den > 0.
inline bool is_normalized(const Rational& r) {
  if (sgn(r.get_den()) <= 0) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return g == 1;
}

}  // namespace diracgb

#endif  // DIRACGB_RATIONAL_HPP
