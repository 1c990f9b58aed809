#ifndef PROCISO_LQT_HPP
#define PROCISO_LQT_HPP

#include "prociso/chevalley.hpp"
#include "prociso/hochschild.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace prociso {

// ---------------------------------------------------------------------------
// Sym(C^lambda(R)[1]) as a presented complex
// ---------------------------------------------------------------------------
//
// Degree-n basis of the free cover: partitions (m_1 >= ... >= m_w) of n in
// descending lex order, then tuples of words over the ring basis, one word of
// length m_j per slot, enumerated lexicographically. Relations: cyclic
// rotation of each word (sign (-1)^{m-1} per step, matching the cyclic
// operator), graded commutativity of equal-length slots (sign (-1)^{m^2}),
// and squares of odd-degree factors.

using SymTuple = std::vector<std::vector<int>>;

struct SymShifted {
  FinRing ring;
  int degree_cap = 0;
  ChainComplex complex;
  std::map<int, std::vector<SymTuple>> basis;
  std::map<int, std::map<SymTuple, int>> index;
  std::map<int, std::vector<int>> weight;  // number of factors per basis element
};

namespace detail {

// derivation differential of Sym(C[1]) applies -b to each factor (the shift
// negates the Connes boundary)
constexpr int kSymShiftSign = -1;

inline std::vector<std::vector<int>> partitions_desc(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int maxp) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, maxp); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline void enumerate_word_tuples(const std::vector<int>& parts, int d,
                                  std::vector<SymTuple>& out) {
  int total = 0;
  for (int p : parts) total += p;
  std::vector<int> odo(total, 0);
  while (true) {
    SymTuple t;
    int at = 0;
    for (int p : parts) {
      t.emplace_back(odo.begin() + at, odo.begin() + at + p);
      at += p;
    }
    out.push_back(std::move(t));
    int i = total - 1;
    while (i >= 0 && odo[i] == d - 1) odo[i--] = 0;
    if (i < 0) break;
    ++odo[i];
  }
}

// move the slot at position j (whose word just shrank) right until lengths
// are descending again; returns the Koszul sign of the block moves
inline int resort_slot(SymTuple& words, int j) {
  int sign = 1;
  const int len = static_cast<int>(words[j].size());
  int q = j;
  while (q + 1 < static_cast<int>(words.size()) &&
         static_cast<int>(words[q + 1].size()) > len) {
    if ((len * static_cast<int>(words[q + 1].size())) % 2 != 0) sign = -sign;
    std::swap(words[q], words[q + 1]);
    ++q;
  }
  return sign;
}

inline int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace detail

inline SymShifted sym_shifted(const FinRing& R, int degree_cap) {
  detail::check_tensor_cap(R, degree_cap);
  const Ring& base = R.base();
  const int d = R.rank();
  SymShifted out{R, degree_cap, {}, {}, {}, {}};
  std::map<int, int> ranks;
  for (int n = 0; n <= degree_cap; ++n) {
    std::vector<SymTuple> bs;
    std::vector<int> wt;
    for (const auto& parts : detail::partitions_desc(n)) {
      std::size_t before = bs.size();
      detail::enumerate_word_tuples(parts, d, bs);
      for (std::size_t t = before; t < bs.size(); ++t) wt.push_back(static_cast<int>(parts.size()));
    }
    if (n == 0) {
      bs = {SymTuple{}};
      wt = {0};
    }
    ranks[n] = static_cast<int>(bs.size());
    for (std::size_t t = 0; t < bs.size(); ++t) out.index[n][bs[t]] = static_cast<int>(t);
    out.basis[n] = std::move(bs);
    out.weight[n] = std::move(wt);
  }
  // relations
  std::map<int, IntMatrix> rel;
  for (int n = 1; n <= degree_cap; ++n) {
    std::vector<Vec> cols;
    const auto& bs = out.basis.at(n);
    for (std::size_t e = 0; e < bs.size(); ++e) {
      const SymTuple& T = bs[e];
      // generators whose sign orbit is inconsistent are torsion in the plain
      // coinvariants; the conjugacy-class basis sets them to zero (words fixed
      // by a rotation of negative Koszul sign)
      bool killed = false;
      for (const auto& w : T) {
        const int m = static_cast<int>(w.size());
        for (int r = 1; r < m && !killed; ++r) {
          if (((m - 1) * r) % 2 == 0) continue;
          bool fixed = true;
          for (int t = 0; t < m && fixed; ++t) fixed = w[t] == w[(t + r) % m];
          killed = killed || fixed;
        }
        if (killed) break;
      }
      if (killed) {
        Vec v(bs.size(), 0);
        v[e] = 1;
        cols.push_back(std::move(v));
      }
      for (std::size_t j = 0; j < T.size(); ++j) {
        const int m = static_cast<int>(T[j].size());
        if (m >= 2) {
          SymTuple rot = T;
          std::rotate(rot[j].rbegin(), rot[j].rbegin() + 1, rot[j].rend());  // last to front
          int other = out.index.at(n).at(rot);
          int sg = (m % 2 == 0) ? -1 : 1;  // (-1)^{m-1}
          Vec v(bs.size(), 0);
          v[e] += 1;
          v[other] -= sg;
          bool nz = false;
          for (const auto& x : v) nz = nz || base.reduce(x) != 0;
          if (nz) cols.push_back(std::move(v));
        }
        if (j + 1 < T.size() && T[j].size() == T[j + 1].size()) {
          if (T[j] != T[j + 1]) {
            SymTuple sw = T;
            std::swap(sw[j], sw[j + 1]);
            int other = out.index.at(n).at(sw);
            Vec v(bs.size(), 0);
            v[e] += 1;
            v[other] -= (m % 2 == 0) ? 1 : -1;  // (-1)^{m^2}
            cols.push_back(std::move(v));
          } else if (m % 2 != 0) {
            Vec v(bs.size(), 0);
            v[e] = 1;
            cols.push_back(std::move(v));
          }
        }
      }
    }
    if (!cols.empty()) rel[n] = IntMatrix::from_columns(ranks[n], cols, base);
  }
  // differential
  std::map<int, IntMatrix> bd;
  std::map<int, IntMatrix> bcache;
  for (int n = 2; n <= degree_cap; ++n) {
    detail::Accum acc;
    const auto& bs = out.basis.at(n);
    for (std::size_t e = 0; e < bs.size(); ++e) {
      const SymTuple& T = bs[e];
      int prefix = 0;
      for (std::size_t j = 0; j < T.size(); ++j) {
        const int m = static_cast<int>(T[j].size());
        if (m >= 2) {
          if (!bcache.count(m)) bcache.emplace(m, hochschild_boundary(R, m - 1, true));
          const IntMatrix& b = bcache.at(m);
          TupleBasis src{d, m - 1}, dst{d, m - 2};
          Vec col = b.column(static_cast<int>(src.index(T[j])));
          for (long u = 0; u < dst.size(); ++u) {
            if (col[u] == 0) continue;
            SymTuple img = T;
            img[j] = dst.tuple(u);
            int sg = detail::resort_slot(img, static_cast<int>(j));
            if (prefix % 2 != 0) sg = -sg;
            int row = out.index.at(n - 1).at(img);
            detail::accum_add(acc, row, static_cast<int>(e), Int(detail::kSymShiftSign) * sg * col[u]);
          }
        }
        prefix += m;
      }
    }
    bd[n] = detail::accum_to_matrix(acc, ranks[n - 1], ranks[n], base);
  }
  out.complex = ChainComplex(base, std::move(ranks), std::move(bd), {}, std::move(rel));
  return out;
}

// Coproduct of the symmetric coalgebra: split the multiset of factors with
// Koszul unshuffle signs.
inline ChainMap sym_coproduct(const SymShifted& S, const ChainComplex& tensor, int degree_cap) {
  const ChainComplex& C = S.complex;
  TensorIndex ix{&C, &C};
  std::map<int, IntMatrix> blocks;
  for (int n = 0; n <= degree_cap; ++n) {
    if (C.rank(n) == 0) continue;
    detail::Accum acc;
    const auto& bs = S.basis.at(n);
    for (std::size_t e = 0; e < bs.size(); ++e) {
      const SymTuple& T = bs[e];
      const int w = static_cast<int>(T.size());
      for (unsigned mask = 0; mask < (1u << w); ++mask) {
        SymTuple A, B;
        int degA = 0, sign = 1;
        int pending = 0;  // total degree of unselected slots passed so far
        for (int t = 0; t < w; ++t) {
          const int m = static_cast<int>(T[t].size());
          if (mask & (1u << t)) {
            A.push_back(T[t]);
            degA += m;
            if ((m * pending) % 2 != 0) sign = -sign;
          } else {
            B.push_back(T[t]);
            pending += m;
          }
        }
        int row = ix.pos(n, degA, S.index.at(degA).at(A), S.index.at(n - degA).at(B));
        detail::accum_add(acc, row, static_cast<int>(e), sign);
      }
    }
    blocks[n] = detail::accum_to_matrix(acc, tensor.rank(n), C.rank(n), C.base());
  }
  return ChainMap(C, tensor, std::move(blocks));
}

// ---------------------------------------------------------------------------
// theta (trace-permutation pairing) and kappa
// ---------------------------------------------------------------------------

// theta_sigma(f_1 (x) ... (x) f_n) = prod over sigma-orbits of tr(product of
// the f's in orbit order), orbits ordered by sigma(i_j) = i_{j-1}. Matrices
// are elements of matrix_ring(A, r); the value lives in A.
inline Vec theta_sigma(const FinRing& A, int r, const std::vector<int>& sigma,
                       const std::vector<Vec>& F) {
  const int n = static_cast<int>(sigma.size());
  if (static_cast<int>(F.size()) != n) throw contract_error("theta_sigma: arity mismatch");
  FinRing M = matrix_ring(A, r);
  std::vector<int> inv(n);
  for (int i = 0; i < n; ++i) inv[sigma[i]] = i;
  std::vector<bool> seen(n, false);
  Vec result = A.unit();
  for (int i0 = 0; i0 < n; ++i0) {
    if (seen[i0]) continue;
    Vec prod = F[i0];
    seen[i0] = true;
    int j = inv[i0];
    while (j != i0) {
      seen[j] = true;
      prod = M.multiply(prod, F[j]);
      j = inv[j];
    }
    result = A.multiply(result, matrix_trace(A, r, prod));
  }
  return result;
}

// The full pairing theta(F) = sum_sigma theta_sigma(F) sigma as a map to the
// group algebra: returned as a list over all permutations in lex order.
inline std::vector<Vec> theta_full(const FinRing& A, int r, const std::vector<Vec>& F) {
  const int n = static_cast<int>(F.size());
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = i;
  std::vector<Vec> out;
  do {
    out.push_back(theta_sigma(A, r, sigma, F));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

struct LQTKappa {
  int r = 0;
  FinRing ring;
  ChevalleyComplex source;  // C(gl_r(R))
  SymShifted target;
  ChainMap map;
};

// kappa: Chevalley chains of gl_r(R) onto Sym(C^lambda(R)[1]), the
// coinvariants of the trace-permutation pairing. Columns are computed from
// the subset basis: for each permutation the integer matrix parts contribute
// a 0/1 trace factor and the ring parts assemble into one cyclic word per
// orbit; the Koszul sign is the sign of the letter rearrangement.
inline LQTKappa kappa(int r, const FinRing& R, int degree_cap) {
  LieRing g = gl_lie_ring(R, r);
  ChevalleyComplex CC = chevalley_complex(g, degree_cap);
  SymShifted S = sym_shifted(R, degree_cap);
  const Ring& base = R.base();
  const int dR = R.rank();
  std::map<int, IntMatrix> blocks;
  blocks[0] = IntMatrix::identity(1, base);
  for (int n = 1; n <= degree_cap; ++n) {
    detail::Accum acc;
    const auto& subs = CC.basis.at(n);
    for (std::size_t cj = 0; cj < subs.size(); ++cj) {
      const auto& Ssub = subs[cj];
      std::vector<int> row_(n), col_(n), let(n);
      for (int t = 0; t < n; ++t) {
        int gidx = Ssub[t];
        row_[t] = gidx / (r * dR);
        col_[t] = (gidx / dR) % r;
        let[t] = gidx % dR;
      }
      std::vector<int> sigma(n);
      for (int i = 0; i < n; ++i) sigma[i] = i;
      do {
        std::vector<int> inv(n);
        for (int i = 0; i < n; ++i) inv[sigma[i]] = i;
        std::vector<bool> seen(n, false);
        bool zero = false;
        // orbit list: (length, min element, letter sequence)
        std::vector<std::tuple<int, int, std::vector<int>, std::vector<int>>> orbits;
        for (int i0 = 0; i0 < n && !zero; ++i0) {
          if (seen[i0]) continue;
          std::vector<int> seq{i0};
          seen[i0] = true;
          int j = inv[i0];
          while (j != i0) {
            seen[j] = true;
            seq.push_back(j);
            j = inv[j];
          }
          // trace factor: the E_{ab} chain must close cyclically
          for (std::size_t t = 0; t < seq.size(); ++t) {
            int cur = seq[t], nxt = seq[(t + 1) % seq.size()];
            if (col_[cur] != row_[nxt]) {
              zero = true;
              break;
            }
          }
          if (zero) break;
          std::vector<int> word;
          for (int s : seq) word.push_back(let[s]);
          orbits.emplace_back(static_cast<int>(seq.size()), i0, std::move(word), std::move(seq));
        }
        if (zero) continue;
        std::sort(orbits.begin(), orbits.end(), [](const auto& a, const auto& b) {
          if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
          return std::get<1>(a) < std::get<1>(b);
        });
        SymTuple tuple;
        std::vector<int> letter_perm;
        for (const auto& ob : orbits) {
          tuple.push_back(std::get<2>(ob));
          for (int s : std::get<3>(ob)) letter_perm.push_back(s);
        }
        int row = S.index.at(n).at(tuple);
        detail::accum_add(acc, row, static_cast<int>(cj), detail::perm_sign(letter_perm));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    blocks[n] = detail::accum_to_matrix(acc, S.complex.rank(n), CC.complex.rank(n), base);
  }
  ChainMap m(CC.complex, S.complex, std::move(blocks));
  return LQTKappa{r, R, std::move(CC), std::move(S), std::move(m)};
}

// surjectivity of kappa_n: cokernel of [kappa_n | relations] over the base
inline bool kappa_surjective(const LQTKappa& K, int n) {
  IntMatrix block = K.map.block(n);
  IntMatrix W = K.target.complex.relations(n);
  const Int q = K.ring.base().mod;
  IntMatrix all = block.with_base(Ring()).hstack(W.with_base(Ring()))
                      .hstack(IntMatrix::scalar(block.rows(), q));
  return cokernel_group_z(all).is_trivial();
}

// generators of Ker(kappa)_n: preimage of the target relation span
inline IntMatrix kappa_kernel_generators(const LQTKappa& K, int n) {
  return preimage_mod(K.map.block(n), K.target.complex.relations(n));
}

inline FGAbelianGroup kappa_kernel_homology(const LQTKappa& K, int n) {
  std::map<int, IntMatrix> L;
  L[n] = kappa_kernel_generators(K, n);
  L[n + 1] = kappa_kernel_generators(K, n + 1);
  return subcomplex_homology(K.source.complex, L, n);
}

// ---------------------------------------------------------------------------
// kernel-torsion search
// ---------------------------------------------------------------------------

struct KillingSearchResult {
  bool found = false;
  Int exponent = 0;
};

namespace detail {
// candidate multipliers: products of factorials times a prime power, <= bound
inline std::vector<Int> killing_candidates(const Int& bound) {
  std::set<Int> fp{1};
  for (Int f = 2, k = 2; f <= bound; ++k, f = f * k) {
    std::set<Int> next = fp;
    for (const auto& x : fp)
      for (Int acc = x * f; acc <= bound; acc *= f) next.insert(acc);
    fp = std::move(next);
  }
  std::set<Int> pp{1};
  for (Int p = 2; p <= bound; ++p) {
    bool prime = true;
    for (Int t = 2; t * t <= p; ++t)
      if (p % t == 0) {
        prime = false;
        break;
      }
    if (!prime) continue;
    for (Int acc = p; acc <= bound; acc *= p) pp.insert(acc);
  }
  std::set<Int> out;
  for (const auto& a : fp)
    for (const auto& b : pp)
      if (a * b <= bound) out.insert(a * b);
  return std::vector<Int>(out.begin(), out.end());
}
}  // namespace detail

inline KillingSearchResult kernel_killing_search(int r, int n, const std::vector<FinRing>& rings,
                                                 const Int& bound) {
  if (n > r) throw contract_error("kernel_killing_search: need n <= r");
  Int need = 1;
  for (const auto& R : rings) {
    LQTKappa K = kappa(r, R, n + 1);
    FGAbelianGroup H = kappa_kernel_homology(K, n);
    Int e = torsion_exponent(H);
    if (H.free_rank > 0) return {false, 0};
    need = need / gcd(need, e) * e;
  }
  for (const auto& c : detail::killing_candidates(bound))
    if (c % need == 0) return {true, c};
  return {false, 0};
}

// ---------------------------------------------------------------------------
// adjoint action
// ---------------------------------------------------------------------------

// Lambda^n of a linear map given on the Lie ring basis (d x d over the base).
inline IntMatrix exterior_power_matrix(const ChevalleyComplex& CC, const IntMatrix& D, int n) {
  const Ring& base = D.base();
  auto dd = D.to_dense();
  const auto& rows_b = CC.basis.at(n);
  const auto& cols_b = CC.basis.at(n);
  detail::Accum acc;
  for (std::size_t cj = 0; cj < cols_b.size(); ++cj) {
    const auto& Ssub = cols_b[cj];
    for (std::size_t ri = 0; ri < rows_b.size(); ++ri) {
      const auto& T = rows_b[ri];
      // det of the minor D[T, S]
      std::vector<int> perm(n);
      for (int t = 0; t < n; ++t) perm[t] = t;
      Int det = 0;
      do {
        Int term = detail::perm_sign(perm);
        for (int t = 0; t < n && term != 0; ++t) term *= dd[T[perm[t]]][Ssub[t]];
        det += term;
      } while (std::next_permutation(perm.begin(), perm.end()));
      detail::accum_add(acc, static_cast<int>(ri), static_cast<int>(cj), det);
    }
  }
  return detail::accum_to_matrix(acc, static_cast<int>(rows_b.size()),
                                 static_cast<int>(cols_b.size()), base);
}

// L_x on Lambda^n for a basis element x = e_k of the Lie ring.
inline IntMatrix lie_action_matrix(const ChevalleyComplex& CC, int k, int n) {
  const LieRing& g = CC.lie;
  const Ring& base = g.base();
  const auto& subs = CC.basis.at(n);
  detail::Accum acc;
  for (std::size_t cj = 0; cj < subs.size(); ++cj) {
    const auto& S = subs[cj];
    for (int i = 0; i < n; ++i) {
      const Vec& br = g.basis_bracket(k, S[i]);
      std::vector<int> T;
      for (int t = 0; t < n; ++t)
        if (t != i) T.push_back(S[t]);
      for (int m = 0; m < g.rank(); ++m) {
        if (br[m] == 0) continue;
        auto [sg, merged] = detail::wedge_insert(m, T);
        if (sg == 0) continue;
        if (i % 2 != 0) sg = -sg;
        detail::accum_add(acc, CC.subset_index(n, merged), static_cast<int>(cj), Int(sg) * br[m]);
      }
    }
  }
  return detail::accum_to_matrix(acc, static_cast<int>(subs.size()),
                                 static_cast<int>(subs.size()), base);
}

// iota_x = signed wedge-by-e_k: Lambda^n -> Lambda^{n+1}; the extra minus is
// the convention under which L_x = d iota_x + iota_x d holds on the nose
inline IntMatrix insertion_matrix(const ChevalleyComplex& CC, int k, int n) {
  const auto& subs = CC.basis.at(n);
  const auto& up = CC.basis.at(n + 1);
  detail::Accum acc;
  for (std::size_t cj = 0; cj < subs.size(); ++cj) {
    auto [sg, merged] = detail::wedge_insert(k, subs[cj]);
    if (sg == 0) continue;
    detail::accum_add(acc, CC.subset_index(n + 1, merged), static_cast<int>(cj), -sg);
  }
  return detail::accum_to_matrix(acc, static_cast<int>(up.size()), static_cast<int>(subs.size()),
                                 CC.lie.base());
}

struct AdjointResult {
  bool found = false;
  Int multiplier = 0;
  int group_size = 0;  // number of invertible elements tested
};

// Smallest d with d * (g.x - x) = 0 in H_n for every invertible g, the
// adjoint action being conjugation extended to exterior powers.
inline AdjointResult adjoint_triviality(int r, const FinRing& A, int n, const Int& bound) {
  FinRing M = matrix_ring(A, r);
  const Int q = A.base().mod;
  Int count = 1;
  for (int t = 0; t < M.rank(); ++t) {
    count *= q;
    if (count > 4096) throw resource_error("adjoint_triviality: ring too large to enumerate");
  }
  LieRing g = gl_lie_ring(A, r);
  ChevalleyComplex CC = chevalley_complex(g, n + 1);
  // Cartan homotopy identity at chain level for every basis direction
  for (int k = 0; k < g.rank(); ++k)
    for (int m = 1; m <= n; ++m) {
      IntMatrix lhs = lie_action_matrix(CC, k, m);
      IntMatrix rhs = CC.complex.boundary(m + 1) * insertion_matrix(CC, k, m) +
                      insertion_matrix(CC, k, m - 1) * CC.complex.boundary(m);
      if (!(lhs - rhs).is_zero())
        throw contract_error("adjoint_triviality: Cartan homotopy identity failed");
    }
  HomologySolver H = CC.complex.solver(n);
  // unit-vector decode of matrix ring elements
  long total = mpz_get_si(count.get_mpz_t());
  long qv = mpz_get_si(q.get_mpz_t());
  IntMatrix unitcol = IntMatrix::from_columns(M.rank(), {M.unit()}, M.base());
  Int mult = 1;
  int gsize = 0;
  for (long code = 0; code < total; ++code) {
    Vec x(M.rank());
    long c = code;
    for (int t = 0; t < M.rank(); ++t) {
      x[t] = c % qv;
      c /= qv;
    }
    // left multiplication matrix; a solution of L v = 1 is the inverse
    std::vector<Vec> lcols;
    for (int t = 0; t < M.rank(); ++t) lcols.push_back(M.multiply(x, M.basis(t)));
    IntMatrix L = IntMatrix::from_columns(M.rank(), lcols, M.base());
    auto sol = solve_mod(L, unitcol);
    if (!sol) continue;
    Vec xi = sol->column(0);
    if (M.multiply(x, xi) != M.unit() || M.multiply(xi, x) != M.unit()) continue;
    ++gsize;
    // Ad_g on the Lie ring basis
    std::vector<Vec> cols;
    for (int t = 0; t < M.rank(); ++t) cols.push_back(M.multiply(M.multiply(x, M.basis(t)), xi));
    IntMatrix Ad = IntMatrix::from_columns(M.rank(), cols, M.base());
    IntMatrix An = (n == 0) ? IntMatrix::identity(1, M.base()) : exterior_power_matrix(CC, Ad, n);
    IntMatrix ind = induced_on_homology(H, H, An);
    const auto& orders = H.summand_orders();
    for (int col = 0; col < ind.cols(); ++col) {
      Vec v = ind.column(col);
      v[col] -= 1;
      for (std::size_t t = 0; t < orders.size(); ++t) {
        if (orders[t] == 0 && v[t] != 0) return {false, 0, gsize};
        if (orders[t] == 0) continue;
        Int rrem = v[t] % orders[t];
        if (rrem < 0) rrem += orders[t];
        if (rrem == 0) continue;
        Int ord = orders[t] / gcd(orders[t], rrem);
        mult = mult / gcd(mult, ord) * ord;
      }
    }
  }
  if (mult > bound) return {false, 0, gsize};
  return {true, mult, gsize};
}

// ---------------------------------------------------------------------------
// tower of kappa maps over the truncations of a p-adic algebra
// ---------------------------------------------------------------------------

struct LQTTower {
  std::vector<LQTKappa> levels;
  Tower source;
  Tower target;
  TowerMap kappa_map;
};

inline LQTTower lqt_tower(const PadicAlgebra& A, int r, int degree_cap) {
  if (A.precision() < 2) throw contract_error("lqt_tower: precision must be >= 2");
  std::vector<LQTKappa> ks;
  std::vector<ChainComplex> src_levels, dst_levels;
  for (unsigned i = 1; i <= A.precision(); ++i) {
    ks.push_back(kappa(r, A.truncation(i), degree_cap));
    src_levels.push_back(integral_presentation(ks.back().source.complex));
    dst_levels.push_back(integral_presentation(ks.back().target.complex));
  }
  auto reduction = [&](const ChainComplex& from, const ChainComplex& to) {
    std::map<int, IntMatrix> blocks;
    for (const auto& [n, rr] : to.ranks())
      if (rr > 0) blocks[n] = IntMatrix::identity(rr);
    return ChainMap(from, to, std::move(blocks));
  };
  std::vector<ChainMap> st, dt, comps;
  for (unsigned i = 0; i + 1 < A.precision(); ++i) {
    st.push_back(reduction(src_levels[i + 1], src_levels[i]));
    dt.push_back(reduction(dst_levels[i + 1], dst_levels[i]));
  }
  Tower src(src_levels, st), dst(dst_levels, dt);
  for (unsigned i = 0; i < A.precision(); ++i) {
    std::map<int, IntMatrix> blocks;
    for (const auto& [n, rr] : dst_levels[i].ranks())
      if (rr > 0) blocks[n] = ks[i].map.block(n).with_base(Ring());
    comps.emplace_back(src_levels[i], dst_levels[i], std::move(blocks));
  }
  TowerMap km(src, dst, std::move(comps));
  return LQTTower{std::move(ks), std::move(src), std::move(dst), std::move(km)};
}

}  // namespace prociso

#endif
