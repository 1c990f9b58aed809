#ifndef PROCISO_NUMERIC_HPP
#define PROCISO_NUMERIC_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace prociso {

using Int = mpz_class;
using Rat = mpq_class;

// Contract violations (bad input data, broken invariants).
struct contract_error : std::runtime_error {
  explicit contract_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Computation exceeds a configured resource cap.
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline Int factorial(unsigned n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// p-adic valuation of n (n != 0).
inline unsigned valuation(Int n, const Int& p) {
  if (n == 0) throw contract_error("valuation of zero");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// v_p(n!) by Legendre's formula.
inline unsigned factorial_valuation(unsigned n, const Int& p) {
  unsigned v = 0;
  Int q = p;
  while (q <= n) {
    v += static_cast<unsigned>(n / q.get_ui());
    q *= p;
  }
  return v;
}

inline Int pow_int(const Int& base, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Inverse of a mod m; a must be a unit.
inline Int inv_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw contract_error("inv_mod: " + a.get_str() + " is not a unit mod " + m.get_str());
  return r;
}

// Prime-power factorization by trial division; moduli here are small.
inline std::vector<std::pair<Int, unsigned>> factorize(Int m) {
  if (m <= 1) throw contract_error("factorize: argument must be > 1");
  std::vector<std::pair<Int, unsigned>> out;
  for (Int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      unsigned k = 0;
      while (m % p == 0) {
        m /= p;
        ++k;
      }
      out.emplace_back(p, k);
    }
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

// x = a mod m, x = b mod n for coprime m, n; result in [0, mn).
inline Int crt_pair(const Int& a, const Int& m, const Int& b, const Int& n) {
  Int g, u, v;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
  if (g != 1) throw contract_error("crt_pair: moduli not coprime");
  Int mn = m * n;
  Int x = (a * v % mn * n + b * u % mn * m) % mn;
  if (x < 0) x += mn;
  return x;
}

}  // namespace prociso

#endif
