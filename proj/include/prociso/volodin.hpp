#ifndef PROCISO_VOLODIN_HPP
#define PROCISO_VOLODIN_HPP

#include "prociso/group_homology.hpp"
#include "prociso/padic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace prociso {

namespace detail {

// All coordinate vectors of a FinRing module, odometer order.
inline std::vector<Vec> ring_elements(const FinRing& R, long size_cap) {
  if (R.size() > size_cap) throw resource_error("ring_elements: size cap exceeded");
  long n = static_cast<long>(mpz_get_si(R.size().get_mpz_t()));
  long m = static_cast<long>(mpz_get_si(R.base().mod.get_mpz_t()));
  std::vector<Vec> out;
  out.reserve(n);
  Vec cur(R.rank(), 0);
  for (long t = 0; t < n; ++t) {
    out.push_back(cur);
    for (int k = 0; k < R.rank(); ++k) {
      if (++cur[k] < m) break;
      cur[k] = 0;
    }
  }
  return out;
}

// Additive closure of a generating set inside a FinRing (a finite abelian
// group, so closure under addition of generators suffices).
inline std::set<Vec> additive_span(const FinRing& R, const std::vector<Vec>& gens) {
  std::set<Vec> span{R.zero()};
  std::vector<Vec> work{R.zero()};
  std::vector<Vec> red;
  for (const auto& g : gens) red.push_back(R.add(g, R.zero()));
  for (std::size_t t = 0; t < work.size(); ++t)
    for (const auto& g : red) {
      Vec s = R.add(work[t], g);
      if (span.insert(s).second) work.push_back(s);
    }
  return span;
}

}  // namespace detail

// GL_r(R): the unit group of Mat_r(R), found by exhaustive inverse search.
// elements_out receives the coordinate vectors in matrix_ring(R, r).
inline FinGroup general_linear_group(const FinRing& R, int r,
                                     std::vector<Vec>* elements_out = nullptr) {
  FinRing M = matrix_ring(R, r);
  std::vector<Vec> all = detail::ring_elements(M, 20000);
  std::map<Vec, int> pos;
  for (std::size_t t = 0; t < all.size(); ++t) pos[all[t]] = static_cast<int>(t);
  std::vector<Vec> units;
  for (const auto& g : all)
    for (const auto& h : all)
      if (M.multiply(g, h) == M.unit()) {
        if (M.multiply(h, g) != M.unit())
          throw contract_error("general_linear_group: one-sided inverse");
        units.push_back(g);
        break;
      }
  std::map<Vec, int> upos;
  for (std::size_t t = 0; t < units.size(); ++t) upos[units[t]] = static_cast<int>(t);
  const int n = static_cast<int>(units.size());
  std::vector<std::vector<int>> tab(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) tab[a][b] = upos.at(M.multiply(units[a], units[b]));
  if (elements_out) *elements_out = units;
  return FinGroup(std::move(tab), upos.at(M.unit()));
}

// Union of the bar subcomplexes B_{U^sigma(R, J)} inside the bar complex of
// GL_r(R): degree n is spanned by identity-free tuples whose entries share a
// triangular subgroup U^sigma, the preimage of the sigma-upper-triangular
// unipotents of GL_r(R/J).
struct VolodinComplex {
  int r = 1;
  FinRing R;
  std::vector<Vec> ideal;  // additive basis of J
  int degree_cap = 2;
  FinGroup gl;
  std::vector<Vec> gl_elements;                // matrix coordinates, gl index order
  std::vector<std::vector<int>> sigma_index;   // per permutation, sorted members of U^sigma
  std::map<int, std::vector<std::vector<int>>> tuples;
  std::map<int, std::map<std::vector<int>, int>> index;
  ChainComplex complex;

  int tuple_index(int n, const std::vector<int>& t) const { return index.at(n).at(t); }
};

inline VolodinComplex volodin_complex(int r, const FinRing& R, const std::vector<Vec>& J,
                                      int degree_cap) {
  if (r < 1) throw contract_error("volodin_complex: r must be >= 1");
  if (degree_cap < 1) throw contract_error("volodin_complex: degree cap must be >= 1");
  // the J-span must already be a two-sided ideal, and nilpotent when nonzero
  std::set<Vec> jset = detail::additive_span(R, J);
  for (const auto& x : jset)
    for (int b = 0; b < R.rank(); ++b)
      if (!jset.count(R.multiply(R.basis(b), x)) || !jset.count(R.multiply(x, R.basis(b))))
        throw contract_error("volodin_complex: J is not a two-sided ideal");
  if (jset.size() > 1) {
    std::set<Vec> power = jset;
    for (int k = 0; k < 64 && power.size() > 1; ++k) {
      std::vector<Vec> prods;
      for (const auto& a : power)
        for (const auto& b : jset) prods.push_back(R.multiply(a, b));
      std::set<Vec> next = detail::additive_span(R, prods);
      if (next == power) throw contract_error("volodin_complex: J is not nilpotent");
      power = std::move(next);
    }
  }

  std::vector<Vec> gl_elements;
  FinGroup gl = general_linear_group(R, r, &gl_elements);
  VolodinComplex X{r, R, J, degree_cap, std::move(gl), std::move(gl_elements), {}, {}, {}, {}};

  // entry (a, b) of a matrix vector is the slice at (a*r + b) * rank(R)
  const int dR = R.rank();
  auto entry = [&](const Vec& mat, int a, int b) {
    Vec e(mat.begin() + (a * r + b) * dR, mat.begin() + (a * r + b + 1) * dR);
    return e;
  };
  Vec one = R.unit();
  std::vector<int> perm(r);
  for (int k = 0; k < r; ++k) perm[k] = k;
  do {
    std::vector<int> members;
    for (int g = 0; g < X.gl.size(); ++g) {
      const Vec& mat = X.gl_elements[g];
      bool ok = true;
      for (int a = 0; a < r && ok; ++a)
        for (int b = 0; b < r && ok; ++b) {
          Vec e = entry(mat, a, b);
          if (a == b)
            ok = jset.count(R.add(e, R.scale(R.base().mod - 1, one))) > 0;
          else if (perm[a] >= perm[b])
            ok = jset.count(e) > 0;
        }
      if (ok) members.push_back(g);
    }
    X.sigma_index.push_back(std::move(members));
  } while (std::next_permutation(perm.begin(), perm.end()));

  // tuple span: union over sigma of identity-free tuples from U^sigma
  constexpr long kRankCap = 300000;
  std::map<int, int> ranks;
  long total = 1;
  X.tuples[0] = {{}};
  X.index[0][{}] = 0;
  ranks[0] = 1;
  for (int n = 1; n <= degree_cap; ++n) {
    std::set<std::vector<int>> span;
    for (const auto& members : X.sigma_index) {
      std::vector<int> letters;
      for (int g : members)
        if (g != X.gl.id()) letters.push_back(g);
      std::vector<std::vector<int>> layer{{}};
      for (int k = 0; k < n; ++k) {
        std::vector<std::vector<int>> next;
        for (const auto& t : layer)
          for (int g : letters) {
            std::vector<int> u = t;
            u.push_back(g);
            next.push_back(std::move(u));
          }
        layer = std::move(next);
      }
      span.insert(layer.begin(), layer.end());
    }
    total += static_cast<long>(span.size());
    if (total > kRankCap) throw resource_error("volodin_complex: rank cap exceeded");
    std::vector<std::vector<int>> ts(span.begin(), span.end());
    for (std::size_t t = 0; t < ts.size(); ++t) X.index[n][ts[t]] = static_cast<int>(t);
    ranks[n] = static_cast<int>(ts.size());
    X.tuples[n] = std::move(ts);
  }

  // bar boundary; every nondegenerate face must stay inside the span
  std::map<int, IntMatrix> bd;
  for (int n = 1; n <= degree_cap; ++n) {
    std::map<std::pair<int, int>, Int> acc;
    const auto& cols = X.tuples.at(n);
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
          face.push_back(X.gl.mul(t[f - 1], t[f]));
          face.insert(face.end(), t.begin() + f + 1, t.end());
        }
        bool degenerate = false;
        for (int g : face) degenerate = degenerate || g == X.gl.id();
        if (degenerate) continue;
        auto it = X.index.at(n - 1).find(face);
        if (it == X.index.at(n - 1).end())
          throw contract_error("volodin_complex: span not closed under the bar boundary");
        acc[{it->second, static_cast<int>(cj)}] += (f % 2 == 0) ? 1 : -1;
      }
    }
    std::vector<Triplet> trip;
    for (auto& [rc, v] : acc)
      if (v != 0) trip.push_back({rc.first, rc.second, v});
    bd[n] = IntMatrix::from_triplets(ranks[n - 1], ranks[n], Ring(), trip);
  }
  X.complex = ChainComplex(Ring(), std::move(ranks), std::move(bd));
  return X;
}

// Reduced homology: H_0 must be a single Z (the chain complex has one
// generator in degree 0 and d_1 = 0), so reduced H_0 = 0; above degree 0 the
// reduced and unreduced groups agree.
inline FGAbelianGroup reduced_homology(const VolodinComplex& X, int n) {
  if (n < 0 || n >= X.degree_cap)
    throw contract_error("reduced_homology: degree out of the computed range");
  if (n > 0) return X.complex.homology(n);
  FGAbelianGroup h0 = X.complex.homology(0);
  if (!(h0 == FGAbelianGroup(1, {})))
    throw contract_error("reduced_homology: complex is not connected");
  return FGAbelianGroup();
}

struct AcyclicityReport {
  int r = 0, n = 0;
  FGAbelianGroup reduced;
  bool ok = false;

  std::string str() const {
    return "reduced H_" + std::to_string(n) + "(X_" + std::to_string(r) +
           ") = " + reduced.str() + (ok ? " (vanishes)" : " (NONZERO)");
  }
};

// Stable-range vanishing of reduced Volodin homology: requires r >= 2n + 1.
inline AcyclicityReport acyclicity_check(int r, const FinRing& R, int n) {
  if (r < 2 * n + 1) throw contract_error("acyclicity_check: requires r >= 2n + 1");
  VolodinComplex X = volodin_complex(r, R, {}, n + 1);
  AcyclicityReport out{r, n, reduced_homology(X, n), false};
  out.ok = out.reduced.is_trivial();
  return out;
}

// Bar complex of a subgroup of GL_r(R) together with its inclusion into the
// Volodin span as a validated chain map. Every identity-free tuple of the
// subgroup must already be a Volodin basis tuple.
struct VolodinInclusion {
  FinGroup subgroup;               // closure of the seed inside gl
  std::vector<int> gl_index;       // subgroup element -> gl element
  BarComplex bar;
  ChainMap map;
};

inline VolodinInclusion bar_into_volodin(const VolodinComplex& X, const std::vector<int>& seed) {
  std::vector<int> members = X.gl.subgroup(seed);
  std::map<int, int> sub_of_gl;
  for (std::size_t t = 0; t < members.size(); ++t) sub_of_gl[members[t]] = static_cast<int>(t);
  const int n = static_cast<int>(members.size());
  std::vector<std::vector<int>> tab(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) tab[a][b] = sub_of_gl.at(X.gl.mul(members[a], members[b]));
  FinGroup sub(std::move(tab), sub_of_gl.at(X.gl.id()));
  BarComplex bar = bar_complex(sub, Ring(), X.degree_cap);
  std::map<int, IntMatrix> blocks;
  for (int d = 0; d <= X.degree_cap; ++d) {
    std::vector<Triplet> trip;
    const auto& ts = bar.tuples.at(d);
    for (std::size_t cj = 0; cj < ts.size(); ++cj) {
      std::vector<int> img;
      for (int g : ts[cj]) img.push_back(members[g]);
      auto it = X.index.at(d).find(img);
      if (it == X.index.at(d).end())
        throw contract_error("bar_into_volodin: subgroup tuple escapes the Volodin span");
      trip.push_back({it->second, static_cast<int>(cj), 1});
    }
    blocks[d] = IntMatrix::from_triplets(X.complex.rank(d), bar.complex.rank(d), Ring(), trip);
  }
  ChainMap inc(bar.complex, X.complex, std::move(blocks));
  return VolodinInclusion{std::move(sub), std::move(members), std::move(bar), std::move(inc)};
}

// Congruence subgroup GL_r(A_i)^{(m)} = 1 + p^m Mat_r(A_i) mapped into the
// relative Volodin complex X_r(A_i, p^m A_i); reports both H_1 groups, the
// induced map in summand coordinates and its cokernel.
struct CongruenceVolodinReport {
  FGAbelianGroup subgroup_h1, volodin_h1;
  IntMatrix induced;
  FGAbelianGroup cokernel;

  std::string str() const {
    return "H_1(B GL^(m)) = " + subgroup_h1.str() + ", H_1(X) = " + volodin_h1.str() +
           ", coker = " + cokernel.str();
  }
};

inline CongruenceVolodinReport congruence_volodin_check(const PadicAlgebra& A, int r, unsigned m,
                                                        unsigned i, int degree_cap = 2) {
  if (r < 1 || r > 2) throw contract_error("congruence_volodin_check: r must be 1 or 2");
  if (i <= m) throw contract_error("congruence_volodin_check: need i > m");
  FinRing Ai = A.truncation(i);
  Int pm = pow_int(A.p(), m);
  std::vector<Vec> J;
  for (int b = 0; b < Ai.rank(); ++b) J.push_back(Ai.scale(pm, Ai.basis(b)));
  VolodinComplex X = volodin_complex(r, Ai, J, degree_cap);
  std::set<Vec> jset = detail::additive_span(Ai, J);
  // congruence elements: every entry of g - 1 lies in p^m A_i
  FinRing M = matrix_ring(Ai, r);
  std::vector<int> seed;
  for (int g = 0; g < X.gl.size(); ++g) {
    Vec diff = M.add(X.gl_elements[g], M.scale(M.base().mod - 1, M.unit()));
    bool ok = true;
    for (int a = 0; a < r * r && ok; ++a) {
      Vec e(diff.begin() + a * Ai.rank(), diff.begin() + (a + 1) * Ai.rank());
      ok = jset.count(e) > 0;
    }
    if (ok) seed.push_back(g);
  }
  VolodinInclusion inc = bar_into_volodin(X, seed);
  HomologySolver hs = inc.bar.complex.solver(1);
  HomologySolver ht = X.complex.solver(1);
  IntMatrix induced = inc.map.induced(hs, ht, 1);
  std::vector<Vec> rel;
  for (int k = 0; k < ht.num_summands(); ++k) {
    Vec c(ht.num_summands(), 0);
    c[k] = ht.summand_orders()[k];
    rel.push_back(std::move(c));
  }
  FGAbelianGroup coker = cokernel_group_z(
      induced.hstack(IntMatrix::from_columns(ht.num_summands(), rel, Ring())));
  return CongruenceVolodinReport{hs.group(), ht.group(), std::move(induced), std::move(coker)};
}

}  // namespace prociso

#endif
