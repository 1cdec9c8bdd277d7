#pragma once

#include <gmpxx.h>

#include <string>

namespace nqkit {

using Integer = mpz_class;

inline std::string to_string(const Integer &value) { return value.get_str(); }

// Floor division for a positive divisor.
inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer gcd(const Integer &a, const Integer &b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline std::size_t bit_size(const Integer &a) {
  return a == 0 ? 0 : mpz_sizeinbase(a.get_mpz_t(), 2);
}

} // namespace nqkit
