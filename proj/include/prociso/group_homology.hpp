#ifndef PROCISO_GROUP_HOMOLOGY_HPP
#define PROCISO_GROUP_HOMOLOGY_HPP

#include "prociso/chain_complex.hpp"
#include "prociso/fin_group.hpp"

#include <map>
#include <set>
#include <string>

namespace prociso {

// Inhomogeneous bar chains of a finite group with Z or Z/q coefficients.
// Degree n is spanned by tuples (g_1, ..., g_n); the normalized variant drops
// tuples containing the identity (same homology, far smaller matrices).
struct BarComplex {
  FinGroup group;
  Ring base;
  bool normalized = true;
  ChainComplex complex;
  std::map<int, std::vector<std::vector<int>>> tuples;
  std::map<int, std::map<std::vector<int>, int>> index;

  int tuple_index(int n, const std::vector<int>& t) const { return index.at(n).at(t); }
};

inline BarComplex bar_complex(const FinGroup& K, const Ring& coefficients, int degree_cap,
                              bool normalized = true) {
  if (degree_cap < 0) throw contract_error("bar_complex: negative degree cap");
  const long letters = normalized ? K.size() - 1 : K.size();
  constexpr long kRankCap = 300000;
  {
    long r = 1;
    for (int n = 1; n <= degree_cap; ++n) {
      if (letters != 0 && r > kRankCap / std::max(letters, 1L))
        throw resource_error("bar_complex: rank cap exceeded");
      r *= letters;
    }
  }
  BarComplex out{K, coefficients, normalized, {}, {}, {}};
  std::map<int, int> ranks;
  for (int n = 0; n <= degree_cap; ++n) {
    std::vector<std::vector<int>> ts;
    if (n == 0) {
      ts.push_back({});
    } else {
      for (const auto& shorter : out.tuples.at(n - 1))
        for (int g = 0; g < K.size(); ++g) {
          if (normalized && g == K.id()) continue;
          std::vector<int> t = shorter;
          t.push_back(g);
          ts.push_back(std::move(t));
        }
    }
    for (std::size_t t = 0; t < ts.size(); ++t) out.index[n][ts[t]] = static_cast<int>(t);
    ranks[n] = static_cast<int>(ts.size());
    out.tuples[n] = std::move(ts);
  }
  std::map<int, IntMatrix> bd;
  for (int n = 1; n <= degree_cap; ++n) {
    std::map<std::pair<int, int>, Int> acc;
    const auto& cols = out.tuples.at(n);
    for (std::size_t cj = 0; cj < cols.size(); ++cj) {
      const auto& t = cols[cj];
      for (int f = 0; f <= n; ++f) {
        std::vector<int> face;
        face.reserve(n - 1);
        if (f == 0) {
          face.assign(t.begin() + 1, t.end());
        } else if (f == n) {
          face.assign(t.begin(), t.end() - 1);
        } else {
          face.assign(t.begin(), t.begin() + f - 1);
          face.push_back(K.mul(t[f - 1], t[f]));
          face.insert(face.end(), t.begin() + f + 1, t.end());
        }
        if (normalized) {
          bool degenerate = false;
          for (int g : face) degenerate = degenerate || g == K.id();
          if (degenerate) continue;
        }
        acc[{out.tuple_index(n - 1, face), static_cast<int>(cj)}] += (f % 2 == 0) ? 1 : -1;
      }
    }
    std::vector<Triplet> ts;
    for (auto& [rc, v] : acc) {
      Int r = coefficients.reduce(v);
      if (r != 0) ts.push_back({rc.first, rc.second, r});
    }
    bd[n] = IntMatrix::from_triplets(ranks[n - 1], ranks[n], coefficients, ts);
  }
  out.complex = ChainComplex(coefficients, std::move(ranks), std::move(bd));
  return out;
}

namespace detail {

// Greedy generating set of a finite group (small, not necessarily minimal).
inline std::vector<int> group_generators(const FinGroup& K) {
  std::vector<int> gens;
  std::vector<int> have{K.id()};
  for (int g = 0; g < K.size(); ++g) {
    if (std::binary_search(have.begin(), have.end(), g)) continue;
    gens.push_back(g);
    have = K.subgroup(gens);
    if (static_cast<int>(have.size()) == K.size()) break;
  }
  return gens;
}

// Incremental column span over Z/p^j (int64 entries), in triangular form:
// each basis vector is keyed by its first nonzero row, where the entry is
// p^a * unit with a minimal among vectors inserted with that leading row.
struct LocalSpan {
  std::int64_t q;
  Int p;
  unsigned j;
  std::map<int, std::vector<std::int64_t>> piv;
  std::map<int, unsigned> pval;

  LocalSpan(const Int& prime, unsigned exponent) : p(prime), j(exponent) {
    Int m = pow_int(prime, exponent);
    if (m >= Int(1) << 31) throw resource_error("LocalSpan: modulus too large");
    q = mpz_get_si(m.get_mpz_t());
  }

  std::int64_t pl() const { return mpz_get_si(p.get_mpz_t()); }

  unsigned val(std::int64_t x) const {
    unsigned v = 0;
    std::int64_t pp = pl();
    while (v < j && x % pp == 0) {
      x /= pp;
      ++v;
    }
    return v;
  }

  std::int64_t inv_unit(std::int64_t u) const {
    Int r = inv_mod(Int(static_cast<long>(((u % q) + q) % q)), Int(static_cast<long>(q)));
    return mpz_get_si(r.get_mpz_t());
  }

  // reduce v in place; returns the leading row of the residual, or -1 if zero
  int reduce(std::vector<std::int64_t>& v) const {
    for (int r = 0; r < static_cast<int>(v.size()); ++r) {
      v[r] = ((v[r] % q) + q) % q;
      if (v[r] == 0) continue;
      auto it = piv.find(r);
      if (it == piv.end()) return r;
      unsigned a = val(v[r]);
      unsigned b = pval.at(r);
      if (a < b) return r;
      std::int64_t pb = 1;
      for (unsigned t = 0; t < b; ++t) pb *= pl();
      std::int64_t f = (v[r] / pb) % q * inv_unit(it->second[r] / pb) % q;
      const auto& w = it->second;
      for (std::size_t t = r; t < v.size(); ++t)
        if (w[t] != 0) v[t] = ((v[t] - f % q * (w[t] % q)) % q + q) % q;
    }
    return -1;
  }

  bool contains(std::vector<std::int64_t> v) const { return reduce(v) < 0; }

  // insert v (enlarging the span) unless it already lies inside; returns
  // whether the span grew
  bool add(std::vector<std::int64_t> v) {
    bool grew = false;
    while (true) {
      int r = reduce(v);
      if (r < 0) return grew;
      auto it = piv.find(r);
      if (it == piv.end()) {
        pval[r] = val(v[r]);
        piv[r] = std::move(v);
        return true;
      }
      // new vector has smaller valuation at r: swap it in (the span grows),
      // keep reducing the displaced basis vector against the improved span
      grew = true;
      std::vector<std::int64_t> old = std::move(it->second);
      pval[r] = val(v[r]);
      it->second = std::move(v);
      v = std::move(old);
    }
  }
};

}  // namespace detail

// Minimal free resolution of the trivial module over (Z/p^j)[K] for a finite
// p-group K, together with the small complex computing H_*(K, Z/p^j).
// F_n = Lambda^{b_n} with coordinates (generator, group element) -> gen*|K|+g;
// minimal generators of each kernel are picked via Nakayama over the local
// group algebra.
struct GroupChains {
  FinGroup group;
  Ring base;
  Int p;
  unsigned coeff_exp = 1;
  int length = 0;
  std::vector<int> betti;                // betti[n], n = 0..length
  std::vector<IntMatrix> full;           // full[n] = d_n on the free modules, n >= 1
  std::vector<std::vector<Vec>> gens;    // gens[n][j] = image of generator j in F_{n-1}
  ChainComplex complex;                  // augmented small complex
};

inline GroupChains group_resolution(const FinGroup& K, const Ring& coeff, int length) {
  if (length < 0) throw contract_error("group_resolution: negative length");
  if (coeff.is_integers()) throw contract_error("group_resolution: coefficients must be Z/p^j");
  auto cf = factorize(coeff.mod);
  if (cf.size() != 1) throw contract_error("group_resolution: coefficient modulus must be a prime power");
  const Int p = cf[0].first;
  const unsigned j = cf[0].second;
  if (K.size() > 1) {
    auto kf = factorize(Int(K.size()));
    if (kf.size() != 1 || kf[0].first != p)
      throw contract_error("group_resolution: group order and coefficient characteristic differ");
  }
  const int N = K.size();
  GroupChains out{K, coeff, p, j, length, {1}, {IntMatrix()}, {{}}, {}};
  std::vector<int> S = detail::group_generators(K);

  auto to64 = [&](const Vec& v) {
    std::vector<std::int64_t> w(v.size());
    for (std::size_t t = 0; t < v.size(); ++t) {
      Int r = coeff.reduce(v[t]);
      w[t] = mpz_get_si(r.get_mpz_t());
    }
    return w;
  };
  auto translate = [&](int g, const Vec& v, int blocks) {
    Vec w(v.size(), 0);
    for (int b = 0; b < blocks; ++b)
      for (int x = 0; x < N; ++x) {
        const Int& c = v[b * N + x];
        if (c != 0) w[b * N + K.mul(g, x)] = c;
      }
    return w;
  };

  // kernel of the augmentation: spanned by g - 1
  std::vector<Vec> kergens;
  for (int g = 0; g < N; ++g) {
    if (g == K.id()) continue;
    Vec v(N, 0);
    v[g] = 1;
    v[K.id()] = coeff.reduce(-1);
    kergens.push_back(std::move(v));
  }

  std::map<int, int> ranks{{0, 1}};
  std::map<int, IntMatrix> smalld;
  for (int n = 1; n <= length; ++n) {
    const int bprev = out.betti[n - 1];
    // m*(kernel) is spanned over Z/p^j by p*v and (s - 1)*v for kernel
    // generators v and group generators s
    detail::LocalSpan span(p, j);
    for (const auto& v : kergens) {
      Vec pv(v.size());
      for (std::size_t t = 0; t < v.size(); ++t) pv[t] = coeff.reduce(p * v[t]);
      span.add(to64(pv));
      for (int s : S) {
        Vec sv = translate(s, v, bprev);
        for (std::size_t t = 0; t < v.size(); ++t) sv[t] = coeff.reduce(sv[t] - v[t]);
        span.add(to64(sv));
      }
    }
    std::vector<Vec> picked;
    for (const auto& v : kergens)
      if (span.add(to64(v))) picked.push_back(v);
    const int b = static_cast<int>(picked.size());
    out.betti.push_back(b);
    ranks[n] = b;
    // full differential: column (gen, g) = g * picked[gen]
    std::vector<Triplet> ts;
    std::vector<Triplet> small;
    for (int gen = 0; gen < b; ++gen) {
      for (int g = 0; g < N; ++g) {
        Vec col = translate(g, picked[gen], bprev);
        for (std::size_t t = 0; t < col.size(); ++t)
          if (col[t] != 0) ts.push_back({static_cast<int>(t), gen * N + g, col[t]});
      }
      for (int i = 0; i < bprev; ++i) {
        Int s = 0;
        for (int x = 0; x < N; ++x) s += picked[gen][i * N + x];
        s = coeff.reduce(s);
        if (s != 0) small.push_back({i, gen, s});
      }
    }
    std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b2) {
      return std::tie(a.row, a.col) < std::tie(b2.row, b2.col);
    });
    out.full.push_back(IntMatrix::from_triplets(N * bprev, N * b, coeff, ts));
    smalld[n] = IntMatrix::from_triplets(bprev, b, coeff, small);
    out.gens.push_back(std::move(picked));
    if (n < length) {
      IntMatrix ker = kernel_mod(out.full[n]);
      kergens.clear();
      for (int c = 0; c < ker.cols(); ++c) kergens.push_back(ker.column(c));
    }
  }
  out.complex = ChainComplex(coeff, std::move(ranks), std::move(smalld));
  return out;
}

// Chain map of small complexes induced by a surjection pi: src.group ->
// dst.group together with coefficient reduction (dst modulus divides src
// modulus). pi[x] is the image index of element x. Returns one block per
// degree, over the dst base. Built by lifting the identity through the two
// resolutions; exactness guarantees the lifts exist.
inline std::map<int, IntMatrix> resolution_transfer(const GroupChains& src, const GroupChains& dst,
                                                    const std::vector<int>& pi) {
  if (static_cast<int>(pi.size()) != src.group.size())
    throw contract_error("resolution_transfer: element map size mismatch");
  if (src.base.mod % dst.base.mod != 0)
    throw contract_error("resolution_transfer: target modulus must divide source modulus");
  for (int x = 0; x < src.group.size(); ++x)
    for (int y = 0; y < src.group.size(); ++y)
      if (pi[src.group.mul(x, y)] != dst.group.mul(pi[x], pi[y]))
        throw contract_error("resolution_transfer: element map is not a homomorphism");
  const int Ns = src.group.size(), Nd = dst.group.size();
  const Ring& B = dst.base;
  const int len = std::min(src.length, dst.length);
  // phi[n][j] = image of the j-th generator of F^src_n in F^dst_n
  std::vector<std::vector<Vec>> phi(len + 1);
  std::map<int, IntMatrix> blocks;
  {
    Vec one(Nd, 0);
    one[dst.group.id()] = 1;
    phi[0] = {one};
    std::vector<Triplet> t{{0, 0, 1}};
    blocks[0] = IntMatrix::from_triplets(1, 1, B, t);
  }
  for (int n = 1; n <= len; ++n) {
    const int bs = src.betti[n];
    const int bd = dst.betti[n];
    const int bdprev = dst.betti[n - 1];
    std::vector<Vec> rhs;
    for (int gen = 0; gen < bs; ++gen) {
      const Vec& v = src.gens[n][gen];  // element of F^src_{n-1}
      Vec r(static_cast<std::size_t>(Nd) * bdprev, 0);
      for (int jj = 0; jj < src.betti[n - 1]; ++jj)
        for (int x = 0; x < Ns; ++x) {
          const Int& c = v[jj * Ns + x];
          if (c == 0) continue;
          const Vec& w = phi[n - 1][jj];
          for (int i = 0; i < bdprev; ++i)
            for (int z = 0; z < Nd; ++z)
              if (w[i * Nd + z] != 0)
                r[i * Nd + dst.group.mul(pi[x], z)] += c * w[i * Nd + z];
        }
      for (auto& c : r) c = B.reduce(c);
      rhs.push_back(std::move(r));
    }
    IntMatrix R = IntMatrix::from_columns(Nd * bdprev, rhs, B);
    auto sol = solve_mod(dst.full[n], R);
    if (!sol) throw contract_error("resolution_transfer: lift does not exist");
    phi[n].clear();
    std::vector<Triplet> small;
    for (int gen = 0; gen < bs; ++gen) {
      Vec col = sol->column(gen);
      for (int i = 0; i < bd; ++i) {
        Int s = 0;
        for (int z = 0; z < Nd; ++z) s += col[i * Nd + z];
        s = B.reduce(s);
        if (s != 0) small.push_back({i, gen, s});
      }
      phi[n].push_back(std::move(col));
    }
    blocks[n] = IntMatrix::from_triplets(bd, bs, B, small);
  }
  return blocks;
}

// H_a(K, Z) for a finite p-group, a <= degree_cap (degree 0 reported as Z).
// Computed from H_a(K, Z/p^L) for L large enough that the universal
// coefficient splitting H_a(Z/p^L) = H_a(Z) + H_{a-1}(Z) is exact torsion;
// sufficiency of L is certified by every observed exponent being < p^L.
inline std::vector<FGAbelianGroup> group_homology_z(const FinGroup& K, int degree_cap) {
  std::vector<FGAbelianGroup> out;
  if (K.size() == 1) {
    out.push_back(FGAbelianGroup(1, {}));
    for (int a = 1; a <= degree_cap; ++a) out.push_back(FGAbelianGroup());
    return out;
  }
  const Int p = factorize(Int(K.size()))[0].first;
  for (unsigned L = 2; L <= 24; L += 2) {
    Int q = pow_int(p, L);
    if (q >= Int(1) << 31) break;  // beyond the machine-word elimination range
    GroupChains res = group_resolution(K, Ring::zmod(q), degree_cap + 1);
    std::vector<FGAbelianGroup> mod;
    bool enough = true;
    for (int a = 0; a <= degree_cap; ++a) {
      mod.push_back(res.complex.homology(a));
      if (a >= 1 && mod.back().exponent() >= pow_int(p, L)) enough = false;
    }
    if (!enough) continue;
    out.clear();
    out.push_back(FGAbelianGroup(1, {}));
    std::vector<Int> prev;  // cyclic orders of H_{a-1}(Z), empty for a = 1
    for (int a = 1; a <= degree_cap; ++a) {
      std::multiset<Int> have;
      for (const auto& d : mod[a].torsion)
        for (auto& [q, e] : factorize(d)) have.insert(pow_int(q, e));
      for (const auto& d : prev) {
        auto it = have.find(d);
        if (it == have.end())
          throw contract_error("group_homology_z: universal coefficient splitting failed");
        have.erase(it);
      }
      prev.assign(have.begin(), have.end());
      out.push_back(FGAbelianGroup::from_cyclic_orders(prev));
    }
    return out;
  }
  throw resource_error("group_homology_z: torsion exceeds the supported coefficient range");
}

}  // namespace prociso

#endif
