#ifndef PROCISO_RING_HPP
#define PROCISO_RING_HPP

#include "prociso/numeric.hpp"

namespace prociso {

// Base ring tag: Z (mod == 0) or Z/mod for mod > 1.
struct Ring {
  Int mod = 0;

  Ring() = default;
  explicit Ring(Int m) : mod(std::move(m)) {
    if (mod < 0 || mod == 1) throw contract_error("Ring: modulus must be 0 (= Z) or > 1");
  }

  static Ring integers() { return Ring(); }
  static Ring zmod(Int m) { return Ring(std::move(m)); }

  bool is_integers() const { return mod == 0; }

  // Canonical representative: the integer itself over Z, else residue in [0, mod).
  Int reduce(const Int& x) const {
    if (mod == 0) return x;
    Int r = x % mod;
    if (r < 0) r += mod;
    return r;
  }

  bool is_unit(const Int& x) const {
    if (mod == 0) return x == 1 || x == -1;
    Int g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    return g == 1;
  }

  // True for Z, Z/p and Z/p^k.
  bool is_local() const {
    if (mod == 0) return true;
    auto f = factorize(mod);
    return f.size() == 1;
  }

  bool operator==(const Ring& o) const { return mod == o.mod; }
  bool operator!=(const Ring& o) const { return mod != o.mod; }

  std::string str() const { return mod == 0 ? "Z" : "Z/" + mod.get_str(); }
};

}  // namespace prociso

#endif
