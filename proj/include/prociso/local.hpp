#ifndef PROCISO_LOCAL_HPP
#define PROCISO_LOCAL_HPP

#include "prociso/gf2.hpp"
#include "prociso/matrix.hpp"
#include "prociso/snf_z.hpp"

#include <cstdint>
#include <optional>

namespace prociso {

using Mat64 = std::vector<std::vector<std::int64_t>>;

// Z/p^k with machine-word residues. The local elimination keeps everything
// below 2^31 so products fit in int64.
struct LocalBase {
  Int p;
  unsigned k = 0;
  std::int64_t pi = 0;
  std::int64_t qi = 0;  // p^k

  static LocalBase from_ring(const Ring& ring) {
    if (ring.is_integers()) throw contract_error("LocalBase: ring is Z");
    auto f = factorize(ring.mod);
    if (f.size() != 1) throw contract_error("LocalBase: modulus " + ring.mod.get_str() + " is not a prime power");
    LocalBase b;
    b.p = f[0].first;
    b.k = f[0].second;
    if (ring.mod >= Int(1) << 31)
      throw resource_error("LocalBase: modulus too large for machine-word elimination");
    b.pi = b.p.get_si();
    b.qi = mpz_get_si(ring.mod.get_mpz_t());
    return b;
  }

  Ring ring() const { return Ring::zmod(qi); }

  std::int64_t reduce(const Int& x) const {
    Int r = x % qi;
    if (r < 0) r += qi;
    return mpz_get_si(r.get_mpz_t());
  }

  unsigned val(std::int64_t x) const {  // valuation, capped at k
    if (x % qi == 0) return k;
    unsigned v = 0;
    while (x % pi == 0) {
      x /= pi;
      ++v;
    }
    return v;
  }

  std::int64_t inv_unit(std::int64_t u) const {
    Int r = inv_mod(Int(static_cast<long>(u)), Int(static_cast<long>(qi)));
    return mpz_get_si(r.get_mpz_t());
  }

  std::int64_t ppow(unsigned a) const {
    std::int64_t r = 1;
    for (unsigned i = 0; i < a; ++i) r *= pi;
    return r;
  }
};

// Diagonal form over the local ring Z/p^k: U A V = diag(p^{a_1}, ..., p^{a_rank})
// with a_1 <= a_2 <= ... < k and U, V invertible mod p^k.
struct LocalSNF {
  LocalBase base;
  int rows = 0, cols = 0, rank = 0;
  std::vector<unsigned> pivots;  // valuations of the diagonal entries
  Mat64 U, Uinv, V, Vinv;
};

namespace detail {
inline Mat64 ident64(int n) {
  Mat64 m(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}
}  // namespace detail

inline LocalSNF local_snf(const IntMatrix& A, unsigned flags = SNF_NONE) {
  LocalSNF out;
  out.base = LocalBase::from_ring(A.base());
  const LocalBase& B = out.base;
  const int r = A.rows(), c = A.cols();
  out.rows = r;
  out.cols = c;
  Mat64 M(r, std::vector<std::int64_t>(c, 0));
  for (const auto& t : A.entries()) M[t.row][t.col] = B.reduce(t.val);

  const bool wu = flags & SNF_U, wv = flags & SNF_V;
  const bool wui = flags & SNF_UINV, wvi = flags & SNF_VINV;
  if (wu) out.U = detail::ident64(r);
  if (wui) out.Uinv = detail::ident64(r);
  if (wv) out.V = detail::ident64(c);
  if (wvi) out.Vinv = detail::ident64(c);
  const std::int64_t q = B.qi;

  auto row_swap = [&](int a, int b) {
    if (a == b) return;
    std::swap(M[a], M[b]);
    if (wu) std::swap(out.U[a], out.U[b]);
    if (wui)
      for (int i = 0; i < r; ++i) std::swap(out.Uinv[i][a], out.Uinv[i][b]);
  };
  auto col_swap = [&](int a, int b) {
    if (a == b) return;
    for (int i = 0; i < r; ++i) std::swap(M[i][a], M[i][b]);
    if (wv)
      for (int i = 0; i < c; ++i) std::swap(out.V[i][a], out.V[i][b]);
    if (wvi) std::swap(out.Vinv[a], out.Vinv[b]);
  };
  auto row_addmul = [&](int a, int b, std::int64_t f) {  // row a -= f * row b
    f %= q;
    if (f == 0) return;
    for (int j = 0; j < c; ++j) M[a][j] = ((M[a][j] - f * M[b][j]) % q + q) % q;
    if (wu)
      for (int j = 0; j < r; ++j) out.U[a][j] = ((out.U[a][j] - f * out.U[b][j]) % q + q) % q;
    if (wui)
      for (int i = 0; i < r; ++i) out.Uinv[i][b] = ((out.Uinv[i][b] + f * out.Uinv[i][a]) % q + q) % q;
  };
  auto col_addmul = [&](int a, int b, std::int64_t f) {  // col a -= f * col b
    f %= q;
    if (f == 0) return;
    for (int i = 0; i < r; ++i) M[i][a] = ((M[i][a] - f * M[i][b]) % q + q) % q;
    if (wv)
      for (int i = 0; i < c; ++i) out.V[i][a] = ((out.V[i][a] - f * out.V[i][b]) % q + q) % q;
    if (wvi)
      for (int j = 0; j < c; ++j) out.Vinv[b][j] = ((out.Vinv[b][j] + f * out.Vinv[a][j]) % q + q) % q;
  };
  auto row_scale = [&](int a, std::int64_t u) {  // u a unit
    for (int j = 0; j < c; ++j) M[a][j] = (M[a][j] * u) % q;
    if (wu)
      for (int j = 0; j < r; ++j) out.U[a][j] = (out.U[a][j] * u) % q;
    if (wui) {
      std::int64_t ui = B.inv_unit(u);
      for (int i = 0; i < r; ++i) out.Uinv[i][a] = (out.Uinv[i][a] * ui) % q;
    }
  };

  int t = 0;
  const int lim = std::min(r, c);
  while (t < lim) {
    // deterministic pivot: lowest valuation, then lexicographic (row, col)
    int pi_ = -1, pj = -1;
    unsigned best = B.k;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j) {
        if (M[i][j] == 0) continue;
        unsigned v = B.val(M[i][j]);
        if (v < best) {
          best = v;
          pi_ = i;
          pj = j;
        }
      }
    if (pi_ < 0) break;
    row_swap(t, pi_);
    col_swap(t, pj);
    const unsigned a = best;
    const std::int64_t pa = B.ppow(a);
    const std::int64_t unit = M[t][t] / pa;  // prime to p since val(M[t][t]) == a
    row_scale(t, B.inv_unit(unit));
    if (M[t][t] != pa) throw contract_error("local_snf: pivot normalization failed");
    for (int i = t + 1; i < r; ++i)
      if (M[i][t] != 0) row_addmul(i, t, M[i][t] / pa);
    for (int j = t + 1; j < c; ++j)
      if (M[t][j] != 0) col_addmul(j, t, M[t][j] / pa);
    out.pivots.push_back(a);
    ++t;
  }
  out.rank = static_cast<int>(out.pivots.size());
  return out;
}

// Columns generating { x in (Z/p^k)^cols : A x = 0 }.
inline IntMatrix kernel_mod(const IntMatrix& A) {
  if (A.base().mod == 2) return kernel_gf2(A);
  LocalSNF s = local_snf(A, SNF_V);
  const LocalBase& B = s.base;
  std::vector<Vec> cols;
  for (int j = 0; j < s.rank; ++j) {
    if (s.pivots[j] == 0) continue;
    std::int64_t f = B.ppow(B.k - s.pivots[j]);
    Vec v(A.cols(), 0);
    for (int i = 0; i < A.cols(); ++i) v[i] = (s.V[i][j] * f) % B.qi;
    cols.push_back(std::move(v));
  }
  for (int j = s.rank; j < A.cols(); ++j) {
    Vec v(A.cols(), 0);
    for (int i = 0; i < A.cols(); ++i) v[i] = s.V[i][j];
    cols.push_back(std::move(v));
  }
  return IntMatrix::from_columns(A.cols(), cols, A.base());
}

// Solve A X = B over Z/p^k, if possible.
inline std::optional<IntMatrix> solve_mod(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows() != B.rows()) throw contract_error("solve_mod: row mismatch");
  if (A.base().mod == 2) return solve_gf2(A, B);
  LocalSNF s = local_snf(A, SNF_U | SNF_V);
  const LocalBase& lb = s.base;
  std::vector<Vec> xs;
  for (int col = 0; col < B.cols(); ++col) {
    Vec b = B.column(col);
    std::vector<std::int64_t> y(A.rows(), 0);
    for (int i = 0; i < A.rows(); ++i) {
      Int acc = 0;
      for (int t = 0; t < A.rows(); ++t)
        if (s.U[i][t] != 0 && b[t] != 0) acc += s.U[i][t] * b[t];
      y[i] = lb.reduce(acc);
    }
    std::vector<std::int64_t> z(A.cols(), 0);
    for (int i = 0; i < A.rows(); ++i) {
      if (i < s.rank) {
        std::int64_t pa = lb.ppow(s.pivots[i]);
        if (y[i] % pa != 0) return std::nullopt;
        z[i] = y[i] / pa;
      } else if (y[i] % lb.qi != 0) {
        return std::nullopt;
      }
    }
    Vec x(A.cols(), 0);
    for (int i = 0; i < A.cols(); ++i) {
      std::int64_t acc = 0;
      for (int j = 0; j < A.cols(); ++j) acc = (acc + s.V[i][j] % lb.qi * (z[j] % lb.qi)) % lb.qi;
      x[i] = ((acc % lb.qi) + lb.qi) % lb.qi;
    }
    xs.push_back(std::move(x));
  }
  return IntMatrix::from_columns(A.cols(), xs, A.base());
}

// Rank over the residue field F_p (number of unit pivots for k > 1).
inline int rank_mod(const IntMatrix& A) {
  if (A.base().mod == 2) return rank_gf2(A);
  LocalSNF s = local_snf(A);
  int rk = 0;
  for (unsigned a : s.pivots)
    if (a == 0) ++rk;
  return rk;
}

// Generators of { x : A x lies in the column span of L } over Z/p^k.
inline IntMatrix preimage_mod(const IntMatrix& A, const IntMatrix& L) {
  if (L.cols() == 0 || L.is_zero()) return kernel_mod(A);
  IntMatrix stacked = A.hstack(L.scaled(-1));
  IntMatrix K = kernel_mod(stacked);
  std::vector<Vec> cols;
  for (int j = 0; j < K.cols(); ++j) {
    Vec full = K.column(j);
    Vec x(full.begin(), full.begin() + A.cols());
    bool nz = false;
    for (const auto& v : x) nz = nz || v != 0;
    if (nz) cols.push_back(std::move(x));
  }
  return IntMatrix::from_columns(A.cols(), cols, A.base());
}

}  // namespace prociso

#endif
