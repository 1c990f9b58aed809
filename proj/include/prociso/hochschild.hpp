#ifndef PROCISO_HOCHSCHILD_HPP
#define PROCISO_HOCHSCHILD_HPP

#include "prociso/bicomplex.hpp"
#include "prociso/filtered.hpp"
#include "prociso/fin_ring.hpp"
#include "prociso/tower.hpp"
#include "prociso/padic.hpp"

namespace prociso {

// Basis of C_n(R) = R^{(x) n+1}: tuples (i_0, ..., i_n) of ring basis indices
// in lexicographic order, i_0 most significant.
struct TupleBasis {
  int d;  // ring rank
  int n;  // tensor degree (n+1 factors)

  long size() const {
    long s = 1;
    for (int t = 0; t <= n; ++t) s *= d;
    return s;
  }
  std::vector<int> tuple(long idx) const {
    std::vector<int> out(n + 1);
    for (int t = n; t >= 0; --t) {
      out[t] = static_cast<int>(idx % d);
      idx /= d;
    }
    return out;
  }
  long index(const std::vector<int>& tup) const {
    long idx = 0;
    for (int t = 0; t <= n; ++t) idx = idx * d + tup[t];
    return idx;
  }
};

namespace detail {

constexpr long kTensorRankCap = 8000;

inline void check_tensor_cap(const FinRing& R, int cap) {
  long s = 1;
  for (int t = 0; t <= cap; ++t) {
    s *= R.rank();
    if (s > kTensorRankCap)
      throw resource_error("hochschild: tensor rank exceeds cap at degree " + std::to_string(t));
  }
}

using Accum = std::map<std::pair<int, int>, Int>;

inline void accum_add(Accum& acc, int row, int col, const Int& v) {
  if (v == 0) return;
  acc[{row, col}] += v;
}

inline IntMatrix accum_to_matrix(const Accum& acc, int rows, int cols, const Ring& base) {
  std::vector<Triplet> ts;
  for (const auto& [rc, v] : acc) {
    Int r = base.reduce(v);
    if (r != 0) ts.push_back({rc.first, rc.second, r});
  }
  return IntMatrix::from_triplets(rows, cols, base, ts);
}

// face maps: multiply factors t, t+1 (and the wraparound face n: last * first)
inline void add_face_terms(Accum& acc, const FinRing& R, const TupleBasis& src, long col,
                           int face, const Int& sign) {
  auto tup = src.tuple(col);
  TupleBasis dst{R.rank(), src.n - 1};
  std::vector<int> out(src.n);
  if (face < src.n) {
    for (int t = 0, w = 0; t <= src.n; ++t) {
      if (t == face + 1) continue;
      out[w++] = tup[t];
    }
    const Vec& prod = R.basis_product(tup[face], tup[face + 1]);
    for (int k = 0; k < R.rank(); ++k) {
      if (prod[k] == 0) continue;
      out[face] = k;
      accum_add(acc, static_cast<int>(dst.index(out)), static_cast<int>(col), sign * prod[k]);
    }
  } else {
    // d_n: (r_n r_0, r_1, ..., r_{n-1})
    for (int t = 1; t < src.n; ++t) out[t] = tup[t];
    const Vec& prod = R.basis_product(tup[src.n], tup[0]);
    for (int k = 0; k < R.rank(); ++k) {
      if (prod[k] == 0) continue;
      out[0] = k;
      accum_add(acc, static_cast<int>(dst.index(out)), static_cast<int>(col), sign * prod[k]);
    }
  }
}

}  // namespace detail

// Hochschild boundary b (wraparound included) or the acyclic b' (faces 0..n-1).
inline IntMatrix hochschild_boundary(const FinRing& R, int n, bool with_last_face = true) {
  TupleBasis src{R.rank(), n}, dst{R.rank(), n - 1};
  detail::Accum acc;
  for (long col = 0; col < src.size(); ++col) {
    int last = with_last_face ? n : n - 1;
    for (int face = 0; face <= last; ++face)
      detail::add_face_terms(acc, R, src, col, face, (face % 2 == 0) ? Int(1) : Int(-1));
  }
  return detail::accum_to_matrix(acc, static_cast<int>(dst.size()), static_cast<int>(src.size()),
                                 R.base());
}

// cyclic operator t(r_0 (x) ... (x) r_n) = (-1)^n r_n (x) r_0 (x) ... (x) r_{n-1}
inline IntMatrix cyclic_operator(const FinRing& R, int n) {
  TupleBasis tb{R.rank(), n};
  std::vector<Triplet> ts;
  Int sign = (n % 2 == 0) ? 1 : -1;
  for (long col = 0; col < tb.size(); ++col) {
    auto tup = tb.tuple(col);
    std::vector<int> rot(n + 1);
    rot[0] = tup[n];
    for (int t = 0; t < n; ++t) rot[t + 1] = tup[t];
    ts.push_back({static_cast<int>(tb.index(rot)), static_cast<int>(col), R.base().reduce(sign)});
  }
  std::sort(ts.begin(), ts.end(),
            [](const Triplet& a, const Triplet& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
  return IntMatrix::from_triplets(static_cast<int>(tb.size()), static_cast<int>(tb.size()),
                                  R.base(), ts);
}

inline IntMatrix cyclic_norm(const FinRing& R, int n) {
  IntMatrix T = cyclic_operator(R, n);
  IntMatrix N = IntMatrix::identity(T.rows(), R.base());
  IntMatrix P = N;
  for (int j = 1; j <= n; ++j) {
    P = T * P;
    N = N + P;
  }
  return N;
}

inline ChainComplex hochschild_complex(const FinRing& R, int degree_cap) {
  if (degree_cap < 0) throw contract_error("hochschild_complex: negative cap");
  detail::check_tensor_cap(R, degree_cap);
  std::map<int, int> ranks;
  std::map<int, IntMatrix> bd;
  for (int n = 0; n <= degree_cap; ++n) {
    ranks[n] = static_cast<int>(TupleBasis{R.rank(), n}.size());
    if (n > 0) bd[n] = hochschild_boundary(R, n);
  }
  return ChainComplex(R.base(), std::move(ranks), std::move(bd));
}

// Connes complex C^lambda = C(R)/(1 - t), presented on the free cover with
// (1 - t) columns as relations.
inline ChainComplex connes_complex(const FinRing& R, int degree_cap) {
  detail::check_tensor_cap(R, degree_cap);
  std::map<int, int> ranks;
  std::map<int, IntMatrix> bd, rel;
  for (int n = 0; n <= degree_cap; ++n) {
    int r = static_cast<int>(TupleBasis{R.rank(), n}.size());
    ranks[n] = r;
    if (n > 0) {
      bd[n] = hochschild_boundary(R, n);
      IntMatrix one_minus_t = IntMatrix::identity(r, R.base()) - cyclic_operator(R, n);
      if (!one_minus_t.is_zero()) rel[n] = one_minus_t;
    }
  }
  return ChainComplex(R.base(), std::move(ranks), std::move(bd), {}, std::move(rel));
}

// Everything the cyclic side needs: C(R), the filtered total cyclic bicomplex,
// C^lambda and the projection.
struct CyclicPackage {
  FinRing ring;
  int degree_cap;
  ChainComplex hochschild;
  ChainComplex cyclic_total;     // total complex of the cyclic bicomplex
  FilteredComplex cyclic;        // the same with the column filtration Phi
  ChainComplex connes;
  ChainMap projection;           // pi: cyclic_total -> connes
};

// Loday layout: column m even carries b, m odd carries -b'; horizontal maps
// 1-t out of odd columns and the norm N out of even columns; the total
// differential is the plain sum (the (-1)^n convention of total_complex is
// pre-compensated below).
inline CyclicPackage cyclic_package(const FinRing& R, int degree_cap) {
  if (degree_cap < 0) throw contract_error("cyclic_package: negative cap");
  detail::check_tensor_cap(R, degree_cap);
  const int top = degree_cap + 1;
  Bicomplex B;
  B.base = R.base();
  for (int m = 0; m <= top; ++m)
    for (int n = 0; m + n <= top; ++n)
      B.ranks[{m, n}] = static_cast<int>(TupleBasis{R.rank(), n}.size());
  for (int m = 0; m <= top; ++m)
    for (int n = 0; m + n <= top; ++n) {
      if (n > 0) {
        IntMatrix b = hochschild_boundary(R, n, true);
        IntMatrix bp = hochschild_boundary(R, n, false);
        B.vert[{m, n}] = (m % 2 == 0) ? b : bp.scaled(-1);
      }
      if (m > 0) {
        IntMatrix h = (m % 2 == 1)
                          ? IntMatrix::identity(B.ranks[{m, n}], R.base()) - cyclic_operator(R, n)
                          : cyclic_norm(R, n);
        if (n % 2 == 1) h = h.scaled(-1);  // cancel the (-1)^n of total_complex
        B.horiz[{m, n}] = h;
      }
    }
  ChainComplex total = total_complex(B, top);
  // column filtration Phi_a = columns <= 2a+1 (gr_a is the (2a, 2a+1) pair)
  std::vector<std::map<int, std::vector<int>>> levels;
  int max_level = top / 2;
  for (int a = 0; a <= max_level; ++a) {
    std::map<int, std::vector<int>> sel;
    for (int dtot = 0; dtot <= top; ++dtot) {
      std::vector<int> idxs;
      int off = 0;
      for (int m = 0; m <= dtot; ++m) {
        int r = B.rank(m, dtot - m);
        if (m <= 2 * a + 1)
          for (int t = 0; t < r; ++t) idxs.push_back(off + t);
        off += r;
      }
      sel[dtot] = idxs;
    }
    levels.push_back(std::move(sel));
  }
  FilteredComplex filt(total, std::move(levels));
  ChainComplex connes = connes_complex(R, degree_cap + 1);
  // pi: identity on the column-0 slot, zero on the rest
  std::map<int, IntMatrix> blocks;
  for (int dtot = 0; dtot <= top; ++dtot) {
    std::vector<Triplet> ts;
    int r0 = static_cast<int>(TupleBasis{R.rank(), dtot}.size());
    for (int t = 0; t < r0; ++t) ts.push_back({t, t, 1});
    blocks[dtot] = IntMatrix::from_triplets(connes.rank(dtot), total.rank(dtot), R.base(), ts);
  }
  ChainMap pi(total, connes, std::move(blocks));
  return CyclicPackage{R, degree_cap, hochschild_complex(R, degree_cap + 1),
                       total, std::move(filt), std::move(connes), std::move(pi)};
}

// generators of Ker(pi) in total degree n: preimage of the relation span
inline IntMatrix connes_kernel_generators(const CyclicPackage& P, int n) {
  IntMatrix pin = P.projection.block(n);
  IntMatrix W = P.connes.relations(n);
  const Ring& base = P.ring.base();
  if (base.is_integers()) return W.cols() ? preimage_lattice_z(pin, W) : kernel_z(pin);
  return W.cols() ? preimage_mod(pin, W) : kernel_mod(pin);
}

// H_n Ker(pi_R); Lemma-style callers assert exponent | n!
inline FGAbelianGroup connes_kernel_homology(const CyclicPackage& P, int n) {
  if (n + 1 > P.degree_cap + 1) throw contract_error("connes_kernel_homology: degree beyond cap");
  std::map<int, IntMatrix> L;
  L[n] = connes_kernel_generators(P, n);
  L[n + 1] = connes_kernel_generators(P, n + 1);
  return subcomplex_homology(P.cyclic_total, L, n);
}

// Tower of total cyclic complexes CC(A_i), i = 1..N, as presented complexes
// over Z with mod-p^i reduction transitions, plus the levelwise Connes
// projection into the C^lambda tower.
struct CyclicTower {
  Tower cc;
  Tower connes;
  TowerMap projection;
};

inline CyclicTower cyclic_tower(const PadicAlgebra& A, int degree_cap) {
  if (A.precision() < 2) throw contract_error("cyclic_tower: precision must be >= 2");
  std::vector<ChainComplex> cc_levels, cl_levels;
  std::vector<CyclicPackage> pkgs;
  for (unsigned i = 1; i <= A.precision(); ++i) {
    CyclicPackage P = cyclic_package(A.truncation(i), degree_cap);
    cc_levels.push_back(integral_presentation(P.cyclic_total));
    cl_levels.push_back(integral_presentation(P.connes));
    pkgs.push_back(std::move(P));
  }
  auto reduction = [&](const ChainComplex& from, const ChainComplex& to) {
    std::map<int, IntMatrix> blocks;
    for (const auto& [n, r] : to.ranks())
      if (r > 0) blocks[n] = IntMatrix::identity(r);
    return ChainMap(from, to, std::move(blocks));
  };
  std::vector<ChainMap> cc_trans, cl_trans, projs;
  for (unsigned i = 0; i + 1 < A.precision(); ++i) {
    cc_trans.push_back(reduction(cc_levels[i + 1], cc_levels[i]));
    cl_trans.push_back(reduction(cl_levels[i + 1], cl_levels[i]));
  }
  Tower cc(cc_levels, cc_trans);
  Tower connes(cl_levels, cl_trans);
  for (unsigned i = 0; i < A.precision(); ++i) {
    std::map<int, IntMatrix> blocks;
    for (const auto& [n, r] : cl_levels[i].ranks())
      if (r > 0) blocks[n] = pkgs[i].projection.block(n).with_base(Ring());
    projs.emplace_back(cc_levels[i], cl_levels[i], std::move(blocks));
  }
  return CyclicTower{cc, connes, TowerMap(cc, connes, std::move(projs))};
}

}  // namespace prociso

#endif
