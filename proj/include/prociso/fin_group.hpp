#ifndef PROCISO_FIN_GROUP_HPP
#define PROCISO_FIN_GROUP_HPP

#include "prociso/abelian.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>

namespace prociso {

// Finite group as a multiplication table. Associativity is validated on
// construction: exhaustively for small tables, by Light's test against a
// generating set otherwise.
class FinGroup {
 public:
  static constexpr int kSizeCap = 10000;
  static constexpr int kExhaustiveCap = 512;

  FinGroup(std::vector<std::vector<int>> table, int identity,
           std::vector<std::string> labels = {}, std::vector<int> generators = {})
      : table_(std::move(table)),
        id_(identity),
        labels_(std::move(labels)),
        gens_(std::move(generators)) {
    validate();
  }

  int size() const { return static_cast<int>(table_.size()); }
  int id() const { return id_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  const std::vector<int>& generators() const { return gens_; }
  const std::string& label(int i) const {
    static const std::string none;
    return labels_.empty() ? none : labels_[i];
  }

  int power(int a, Int e) const {
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    int acc = id_;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) acc = mul(acc, a);
      a = mul(a, a);
      e >>= 1;
    }
    return acc;
  }

  Int element_order(int a) const {
    Int n = 1;
    int x = a;
    while (x != id_) {
      x = mul(x, a);
      ++n;
    }
    return n;
  }

  bool is_abelian() const {
    for (int a = 0; a < size(); ++a)
      for (int b = a + 1; b < size(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  // subgroup generated by the given elements, as a sorted element list
  std::vector<int> subgroup(const std::vector<int>& seed) const {
    std::set<int> have{id_};
    std::vector<int> work{id_};
    for (int s : seed)
      if (have.insert(s).second) work.push_back(s);
    for (std::size_t t = 0; t < work.size(); ++t)
      for (int s : seed) {
        int x = mul(work[t], s);
        if (have.insert(x).second) work.push_back(x);
        x = mul(work[t], inv(s));
        if (have.insert(x).second) work.push_back(x);
      }
    return std::vector<int>(have.begin(), have.end());
  }

  std::vector<int> commutator_subgroup() const {
    std::vector<int> comms;
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b)
        comms.push_back(mul(mul(a, b), inv(mul(b, a))));
    return subgroup(comms);
  }

  bool is_normal(const std::vector<int>& H) const {
    std::set<int> hs(H.begin(), H.end());
    for (int g = 0; g < size(); ++g)
      for (int h : H)
        if (!hs.count(mul(mul(g, h), inv(g)))) return false;
    return true;
  }

  // quotient by a normal subgroup
  FinGroup quotient(const std::vector<int>& N) const {
    if (!is_normal(N)) throw contract_error("FinGroup: quotient by non-normal subgroup");
    std::set<int> ns(N.begin(), N.end());
    std::vector<int> coset(size(), -1);  // element -> coset index
    std::vector<int> reps;
    for (int g = 0; g < size(); ++g) {
      if (coset[g] >= 0) continue;
      int c = static_cast<int>(reps.size());
      reps.push_back(g);
      for (int h : N) coset[mul(g, h)] = c;
    }
    int q = static_cast<int>(reps.size());
    std::vector<std::vector<int>> tab(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) tab[a][b] = coset[mul(reps[a], reps[b])];
    return FinGroup(std::move(tab), coset[id_]);
  }

  FinGroup direct_product(const FinGroup& o) const {
    int n = size(), m = o.size();
    if (Int(n) * m > kSizeCap) throw resource_error("FinGroup: product exceeds size cap");
    std::vector<std::vector<int>> tab(n * m, std::vector<int>(n * m));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < m; ++d)
            tab[a * m + b][c * m + d] = mul(a, c) * m + o.mul(b, d);
    return FinGroup(std::move(tab), id_ * m + o.id());
  }

 private:
  void validate() {
    const int n = size();
    if (n == 0) throw contract_error("FinGroup: empty");
    if (n > kSizeCap) throw resource_error("FinGroup: table exceeds size cap");
    for (const auto& row : table_) {
      if (static_cast<int>(row.size()) != n) throw contract_error("FinGroup: ragged table");
      for (int v : row)
        if (v < 0 || v >= n) throw contract_error("FinGroup: table entry out of range");
    }
    if (id_ < 0 || id_ >= n) throw contract_error("FinGroup: bad identity index");
    for (int a = 0; a < n; ++a)
      if (mul(id_, a) != a || mul(a, id_) != a)
        throw contract_error("FinGroup: identity law fails at " + std::to_string(a));
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b)
        if (mul(a, b) == id_ && mul(b, a) == id_) {
          inv_[a] = b;
          break;
        }
      if (inv_[a] < 0) throw contract_error("FinGroup: no inverse for " + std::to_string(a));
    }
    // associativity
    std::vector<int> testers = gens_;
    if (testers.empty()) {
      if (n <= kExhaustiveCap) {
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
              if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                throw contract_error("FinGroup: associativity fails");
        return;
      }
      // greedy generating set for Light's test
      std::vector<int> sub{id_};
      std::set<int> have{id_};
      for (int g = 0; g < n; ++g) {
        if (have.count(g)) continue;
        testers.push_back(g);
        for (int x : light_closure(testers)) have.insert(x);
        if (static_cast<int>(have.size()) == n) break;
      }
    }
    // Light's test: for each generator g, ((a g) b) == (a (g b)) for all a, b
    for (int g : testers)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (mul(mul(a, g), b) != mul(a, mul(g, b)))
            throw contract_error("FinGroup: associativity fails (Light's test)");
  }

  std::vector<int> light_closure(const std::vector<int>& seed) const {
    std::set<int> have{id_};
    std::vector<int> work{id_};
    for (int s : seed)
      if (have.insert(s).second) work.push_back(s);
    for (std::size_t t = 0; t < work.size(); ++t)
      for (int s : seed) {
        int x = table_[work[t]][s];
        if (have.insert(x).second) work.push_back(x);
      }
    return std::vector<int>(have.begin(), have.end());
  }

  std::vector<std::vector<int>> table_;
  int id_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
  std::vector<int> gens_;
};

inline FinGroup trivial_group() { return FinGroup({{0}}, 0); }

inline FinGroup cyclic_group(int n) {
  std::vector<std::vector<int>> tab(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) tab[a][b] = (a + b) % n;
  return FinGroup(std::move(tab), 0);
}

// Build a group from an element universe with abstract keys: closure of the
// seeds under multiplication. Keys must be canonical (equal elements compare
// equal).
template <class Key, class Mul>
FinGroup group_from_closure(const Key& identity, std::vector<Key> seeds, Mul&& mul_key,
                            std::vector<Key>* elements_out = nullptr) {
  std::map<Key, int> index;
  std::vector<Key> elems;
  auto intern = [&](const Key& k) {
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    int i = static_cast<int>(elems.size());
    if (i >= FinGroup::kSizeCap) throw resource_error("group_from_closure: size cap exceeded");
    index.emplace(k, i);
    elems.push_back(k);
    return i;
  };
  intern(identity);
  std::vector<int> gens;
  for (const auto& s : seeds) gens.push_back(intern(s));
  // closure (seeds must generate; inverses arise since the group is finite)
  for (std::size_t t = 0; t < elems.size(); ++t)
    for (int g : gens) {
      Key k = mul_key(elems[t], elems[g]);
      intern(k);
    }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> tab(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Key k = mul_key(elems[a], elems[b]);
      auto it = index.find(k);
      if (it == index.end()) throw contract_error("group_from_closure: not closed");
      tab[a][b] = it->second;
    }
  if (elements_out) *elements_out = elems;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return FinGroup(std::move(tab), 0, {}, gens);
}

// Upper unitriangular 3x3 matrices over Z/p: (a, b, c) stands for rows
// (1 a c; 0 1 b; 0 0 1), so (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
inline FinGroup heisenberg_group(long p, std::vector<std::array<long, 3>>* elements_out = nullptr) {
  std::vector<std::array<long, 3>> elems;
  std::map<std::array<long, 3>, int> index;
  for (long a = 0; a < p; ++a)
    for (long b = 0; b < p; ++b)
      for (long c = 0; c < p; ++c) {
        index.emplace(std::array<long, 3>{a, b, c}, static_cast<int>(elems.size()));
        elems.push_back({a, b, c});
      }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> tab(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto [a, b, c] = elems[x];
      auto [a2, b2, c2] = elems[y];
      tab[x][y] = index.at({(a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p});
    }
  if (elements_out) *elements_out = elems;
  return FinGroup(std::move(tab), index.at({0, 0, 0}));
}

// Invariant factors of a finite abelian group by order counting.
inline FGAbelianGroup abelian_invariants(const FinGroup& G) {
  if (!G.is_abelian()) throw contract_error("abelian_invariants: group not abelian");
  auto factors = factorize(Int(G.size()));
  std::vector<Int> orders;
  for (auto& [p, kmax] : factors) {
    // N_j = #elements with x^{p^j} = id
    std::vector<std::size_t> N(kmax + 1, 0);
    for (unsigned j = 0; j <= kmax; ++j) {
      Int pj = pow_int(p, j);
      for (int a = 0; a < G.size(); ++a)
        if (G.power(a, pj) == G.id()) ++N[j];
    }
    std::vector<unsigned> m(kmax + 2, 0);
    for (unsigned j = 1; j <= kmax; ++j) {
      std::size_t ratio = N[j] / N[j - 1];
      unsigned lg = 0;
      Int r(static_cast<unsigned long>(ratio));
      while (r > 1) {
        r /= p;
        ++lg;
      }
      m[j] = lg;
    }
    for (unsigned j = 1; j <= kmax; ++j) {
      unsigned exactly = m[j] - (j + 1 <= kmax ? m[j + 1] : 0);
      for (unsigned t = 0; t < exactly; ++t) orders.push_back(pow_int(p, j));
    }
  }
  return FGAbelianGroup::from_cyclic_orders(orders);
}

inline FGAbelianGroup abelianization(const FinGroup& G) {
  return abelian_invariants(G.quotient(G.commutator_subgroup()));
}

}  // namespace prociso

#endif
