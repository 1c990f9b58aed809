#ifndef PROCISO_CHEVALLEY_HPP
#define PROCISO_CHEVALLEY_HPP

#include "prociso/lie_ring.hpp"
#include "prociso/tensor.hpp"

#include <map>

namespace prociso {

// Sorted index subsets of {0..d-1} of size n, lexicographic.
inline std::vector<std::vector<int>> index_subsets(int d, int n) {
  std::vector<std::vector<int>> out;
  if (n < 0 || n > d) return out;
  std::vector<int> cur(n);
  for (int i = 0; i < n; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] == d - n + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < n; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// Exterior-algebra chains of a Lie ring: degree n is Lambda^n g with the
// sorted-subset basis, boundary (x_1^...^x_n) |-> sum_{i<j} (-1)^{i+j}
// [x_i,x_j]^...x^_i...x^_j... (positions 1-based).
struct ChevalleyComplex {
  LieRing lie;
  ChainComplex complex;
  std::map<int, std::vector<std::vector<int>>> basis;
  std::map<int, std::map<std::vector<int>, int>> index;

  int subset_index(int n, const std::vector<int>& s) const { return index.at(n).at(s); }
};

namespace detail {
// wedge e_k into sorted subset t: (sign, resulting subset); sign 0 if k in t
inline std::pair<int, std::vector<int>> wedge_insert(int k, const std::vector<int>& t) {
  std::vector<int> out;
  out.reserve(t.size() + 1);
  int pos = 0;
  for (int x : t) {
    if (x == k) return {0, {}};
    if (x < k) ++pos;
  }
  out = t;
  out.insert(out.begin() + pos, k);
  return {pos % 2 == 0 ? 1 : -1, out};
}
}  // namespace detail

inline ChevalleyComplex chevalley_complex(const LieRing& g, int degree_cap) {
  const int d = g.rank();
  if (degree_cap < 0) throw contract_error("chevalley_complex: negative degree cap");
  const Ring& base = g.base();
  ChevalleyComplex out{g, {}, {}, {}};
  std::map<int, int> ranks;
  std::map<int, std::vector<std::string>> labels;
  for (int n = 0; n <= degree_cap; ++n) {
    auto subs = index_subsets(d, n);
    ranks[n] = static_cast<int>(subs.size());
    std::vector<std::string> lab;
    for (std::size_t t = 0; t < subs.size(); ++t) {
      out.index[n][subs[t]] = static_cast<int>(t);
      std::string s;
      for (int x : subs[t]) s += (s.empty() ? "" : "^") + (g.label(x).empty() ? "x" + std::to_string(x) : g.label(x));
      lab.push_back(s.empty() ? "1" : s);
    }
    out.basis[n] = std::move(subs);
    labels[n] = std::move(lab);
  }
  std::map<int, IntMatrix> bd;
  for (int n = 2; n <= degree_cap; ++n) {
    std::map<std::pair<int, int>, Int> acc;
    const auto& cols = out.basis.at(n);
    for (std::size_t cj = 0; cj < cols.size(); ++cj) {
      const auto& S = cols[cj];
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          int sign0 = ((a + b) % 2 == 0) ? 1 : -1;
          std::vector<int> T;
          for (int t = 0; t < n; ++t)
            if (t != a && t != b) T.push_back(S[t]);
          const Vec& br = g.basis_bracket(S[a], S[b]);
          for (int k = 0; k < d; ++k) {
            if (br[k] == 0) continue;
            auto [sg, merged] = detail::wedge_insert(k, T);
            if (sg == 0) continue;
            int row = out.subset_index(n - 1, merged);
            acc[{row, static_cast<int>(cj)}] += sign0 * sg * br[k];
          }
        }
    }
    std::vector<Triplet> ts;
    for (auto& [rc, v] : acc) {
      Int r = base.reduce(v);
      if (r != 0) ts.push_back({rc.first, rc.second, r});
    }
    bd[n] = IntMatrix::from_triplets(ranks[n - 1], ranks[n], base, ts);
  }
  out.complex = ChainComplex(base, std::move(ranks), std::move(bd), std::move(labels));
  return out;
}

// Coalgebra structure from the diagonal g -> g x g: delta(x_S) = sum over
// splittings S = A u B of (unshuffle sign) x_A (x) x_B.
inline ChainMap chevalley_coproduct(const ChevalleyComplex& CC, const ChainComplex& tensor,
                                    int degree_cap) {
  const ChainComplex& C = CC.complex;
  TensorIndex ix{&C, &C};
  std::map<int, IntMatrix> blocks;
  for (int n = 0; n <= degree_cap; ++n) {
    if (C.rank(n) == 0) continue;
    std::vector<Triplet> ts;
    const auto& subs = CC.basis.at(n);
    for (std::size_t cj = 0; cj < subs.size(); ++cj) {
      const auto& S = subs[cj];
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> A, B;
        int inv = 0, seenB = 0;
        for (int t = 0; t < n; ++t) {
          if (mask & (1u << t)) {
            A.push_back(S[t]);
            inv += seenB;  // elements of B already passed to the left of this A-element
          } else {
            B.push_back(S[t]);
            ++seenB;
          }
        }
        int i = static_cast<int>(A.size());
        int row = ix.pos(n, i, CC.subset_index(i, A), CC.subset_index(n - i, B));
        ts.push_back({row, static_cast<int>(cj), inv % 2 == 0 ? 1 : -1});
      }
    }
    std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    blocks[n] = IntMatrix::from_triplets(tensor.rank(n), C.rank(n), C.base(), ts);
  }
  return ChainMap(C, tensor, std::move(blocks));
}

// Primitives of H_n with respect to a full coproduct C -> C (x) C: kernel of
// the reduced coproduct delta - (unit (x) id) - (id (x) unit) on homology.
// Returns the group and a matrix of kernel generators in the invariant-factor
// coordinates of H_n(C).
struct PrimitivesResult {
  FGAbelianGroup group;
  IntMatrix generators;
};

inline PrimitivesResult coproduct_and_primitives(const ChainComplex& C, const ChainMap& delta,
                                                 int n) {
  if (C.rank(0) != 1) throw contract_error("coproduct_and_primitives: coalgebra must be connected");
  const ChainComplex& T = delta.target();
  TensorIndex ix{&C, &C};
  std::map<int, IntMatrix> blocks;
  int hi = C.max_degree();
  for (int m = 1; m <= hi; ++m) {
    if (C.rank(m) == 0) continue;
    IntMatrix red = delta.block(m);
    std::vector<Triplet> ts;
    for (int b = 0; b < C.rank(m); ++b) {
      ts.push_back({ix.pos(m, 0, 0, b), b, -1});
      ts.push_back({ix.pos(m, m, b, 0), b, -1});
    }
    std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    blocks[m] = red + IntMatrix::from_triplets(T.rank(m), C.rank(m), C.base(), ts);
  }
  ChainMap reduced(C, T, std::move(blocks));
  HomologySolver hs = C.solver(n), ht = T.solver(n);
  IntMatrix M = induced_on_homology(hs, ht, reduced.block(n));
  // kernel lattice of M : (+) Z/a_i -> (+) Z/b_j
  std::vector<Vec> relcols;
  const auto& dst = ht.summand_orders();
  for (std::size_t j = 0; j < dst.size(); ++j)
    if (dst[j] != 0) {
      Vec v(dst.size(), 0);
      v[j] = dst[j];
      relcols.push_back(std::move(v));
    }
  IntMatrix R = IntMatrix::from_columns(static_cast<int>(dst.size()), relcols, Ring());
  IntMatrix K = preimage_lattice_z(M, R);
  std::vector<Vec> srel;
  const auto& src = hs.summand_orders();
  for (std::size_t i = 0; i < src.size(); ++i)
    if (src[i] != 0) {
      Vec v(src.size(), 0);
      v[i] = src[i];
      srel.push_back(std::move(v));
    }
  IntMatrix S = IntMatrix::from_columns(static_cast<int>(src.size()), srel, Ring());
  return PrimitivesResult{subquotient_group_z(K, S), K};
}

}  // namespace prociso

#endif
