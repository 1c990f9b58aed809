#ifndef PROCISO_ABELIAN_HPP
#define PROCISO_ABELIAN_HPP

#include "prociso/numeric.hpp"

#include <map>
#include <sstream>

namespace prociso {

// Finitely generated abelian group in invariant-factor form.
struct FGAbelianGroup {
  int free_rank = 0;
  std::vector<Int> torsion;  // d_1 | d_2 | ... | d_t, each > 1

  FGAbelianGroup() = default;
  FGAbelianGroup(int free, std::vector<Int> tors) : free_rank(free), torsion(std::move(tors)) {
    validate();
  }

  // Normalize an arbitrary list of cyclic orders (entries > 1; 0 means Z).
  static FGAbelianGroup from_cyclic_orders(const std::vector<Int>& orders) {
    int free = 0;
    std::map<Int, std::vector<unsigned>> byprime;  // prime -> exponents, later sorted desc
    for (const auto& o : orders) {
      if (o == 0) {
        ++free;
        continue;
      }
      if (o < 0) throw contract_error("FGAbelianGroup: negative order");
      if (o == 1) continue;
      for (auto& [p, e] : factorize(o)) byprime[p].push_back(e);
    }
    std::size_t slots = 0;
    for (auto& [p, es] : byprime) {
      std::sort(es.begin(), es.end(), std::greater<unsigned>());
      slots = std::max(slots, es.size());
    }
    std::vector<Int> inv(slots, 1);
    for (auto& [p, es] : byprime)
      for (std::size_t i = 0; i < es.size(); ++i) inv[i] *= pow_int(p, es[i]);
    std::reverse(inv.begin(), inv.end());  // ascending divisibility chain
    return FGAbelianGroup(free, std::move(inv));
  }

  void validate() const {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      if (torsion[i] <= 1) throw contract_error("FGAbelianGroup: invariant factor <= 1");
      if (i > 0 && torsion[i] % torsion[i - 1] != 0)
        throw contract_error("FGAbelianGroup: divisibility chain violated");
    }
    if (free_rank < 0) throw contract_error("FGAbelianGroup: negative free rank");
  }

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

  // Exponent: 0 encodes infinity (free part present); 1 for the trivial group.
  Int exponent() const {
    if (free_rank > 0) return 0;
    if (torsion.empty()) return 1;
    return torsion.back();
  }

  // Order: 0 encodes infinity.
  Int order() const {
    if (free_rank > 0) return 0;
    Int o = 1;
    for (const auto& d : torsion) o *= d;
    return o;
  }

  FGAbelianGroup direct_sum(const FGAbelianGroup& o) const {
    std::vector<Int> orders(torsion);
    orders.insert(orders.end(), o.torsion.begin(), o.torsion.end());
    FGAbelianGroup g = from_cyclic_orders(orders);
    g.free_rank += free_rank + o.free_rank;
    return g;
  }

  bool operator==(const FGAbelianGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool operator!=(const FGAbelianGroup& o) const { return !(*this == o); }

  // e.g. "Z^2 + Z/2 + Z/8", "0" for the trivial group.
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank == 1) {
      os << "Z";
      first = false;
    } else if (free_rank > 1) {
      os << "Z^" << free_rank;
      first = false;
    }
    for (const auto& d : torsion) {
      if (!first) os << " + ";
      os << "Z/" << d.get_str();
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }
};

// Bounded-torsion test: exponent as integer-or-infinity (0 = infinity).
inline Int torsion_exponent(const FGAbelianGroup& g) { return g.exponent(); }

}  // namespace prociso

#endif
