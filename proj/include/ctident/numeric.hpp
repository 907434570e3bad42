#ifndef CTIDENT_NUMERIC_HPP
#define CTIDENT_NUMERIC_HPP

#include <gmpxx.h>

#include <span>
#include <string>

#include <ctident/errors.hpp>

namespace ctident {

using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(long n) {
  if (n < 0) throw usage_error("factorial: negative argument");
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// C(n, k) for n >= 0; zero outside 0 <= k <= n.
inline Int binomial(long n, long k) {
  if (n < 0) throw usage_error("binomial: negative n");
  if (k < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

/// (sum a_i)! / prod a_i!
inline Int multinomial(std::span<const long> a) {
  long total = 0;
  for (long v : a) {
    if (v < 0) throw usage_error("multinomial: negative part");
    total += v;
  }
  Int r = factorial(total);
  for (long v : a) r /= factorial(v);
  return r;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(bool v) { return v ? "true" : "false"; }

/// Canonical "p" or "p/q" with q > 0.
inline std::string to_string(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline bool is_integer(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  return c.get_den() == 1;
}

}  // namespace ctident

#endif  // CTIDENT_NUMERIC_HPP
