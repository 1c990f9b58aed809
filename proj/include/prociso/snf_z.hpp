#ifndef PROCISO_SNF_Z_HPP
#define PROCISO_SNF_Z_HPP

#include "prociso/matrix.hpp"

#include <optional>

namespace prociso {

// Which transform matrices to accumulate during elimination.
enum SNFFlags : unsigned {
  SNF_NONE = 0,
  SNF_U = 1,
  SNF_V = 2,
  SNF_UINV = 4,
  SNF_VINV = 8,
  SNF_ALL = 15,
};

// U * A * V = D with U, V unimodular, D diagonal with divisibility chain.
struct DenseSNF {
  std::vector<Int> diag;  // nonzero invariant factors d_1 | d_2 | ...
  int rank = 0;
  int rows = 0;
  int cols = 0;
  std::vector<Vec> U, V, Uinv, Vinv;  // dense, possibly empty if not requested
};

namespace detail {

inline std::vector<Vec> dense_identity(int n) {
  std::vector<Vec> m(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace detail

// Smith normal form over Z, dense elimination with smallest-absolute-value
// pivoting (lexicographic tie break, so the reduction is deterministic).
inline DenseSNF snf_z(const IntMatrix& A, unsigned flags = SNF_NONE) {
  const int r = A.rows(), c = A.cols();
  std::vector<Vec> M = A.to_dense();
  DenseSNF out;
  out.rows = r;
  out.cols = c;
  const bool wu = flags & SNF_U, wv = flags & SNF_V;
  const bool wui = flags & SNF_UINV, wvi = flags & SNF_VINV;
  if (wu) out.U = detail::dense_identity(r);
  if (wui) out.Uinv = detail::dense_identity(r);
  if (wv) out.V = detail::dense_identity(c);
  if (wvi) out.Vinv = detail::dense_identity(c);

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
  // row a += q * row b
  auto row_add = [&](int a, int b, const Int& q) {
    if (q == 0) return;
    for (int j = 0; j < c; ++j) M[a][j] += q * M[b][j];
    if (wu)
      for (int j = 0; j < r; ++j) out.U[a][j] += q * out.U[b][j];
    if (wui)
      for (int i = 0; i < r; ++i) out.Uinv[i][b] -= q * out.Uinv[i][a];
  };
  // col a += q * col b
  auto col_add = [&](int a, int b, const Int& q) {
    if (q == 0) return;
    for (int i = 0; i < r; ++i) M[i][a] += q * M[i][b];
    if (wv)
      for (int i = 0; i < c; ++i) out.V[i][a] += q * out.V[i][b];
    if (wvi)
      for (int j = 0; j < c; ++j) out.Vinv[b][j] -= q * out.Vinv[a][j];
  };
  auto row_negate = [&](int a) {
    for (int j = 0; j < c; ++j) M[a][j] = -M[a][j];
    if (wu)
      for (int j = 0; j < r; ++j) out.U[a][j] = -out.U[a][j];
    if (wui)
      for (int i = 0; i < r; ++i) out.Uinv[i][a] = -out.Uinv[i][a];
  };

  int t = 0;
  const int lim = std::min(r, c);
  while (t < lim) {
    // pivot: minimal |value|, then lexicographic (row, col)
    int pi = -1, pj = -1;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j) {
        if (M[i][j] == 0) continue;
        if (pi < 0 || mpz_cmpabs(M[i][j].get_mpz_t(), M[pi][pj].get_mpz_t()) < 0) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < r; ++i) {
        if (M[i][t] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), M[i][t].get_mpz_t(), M[t][t].get_mpz_t());
        row_add(i, t, -q);
        if (M[i][t] != 0) {
          row_swap(t, i);  // remainder is smaller; use it as the new pivot
          clean = false;
        }
      }
      for (int j = t + 1; j < c; ++j) {
        if (M[t][j] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), M[t][j].get_mpz_t(), M[t][t].get_mpz_t());
        col_add(j, t, -q);
        if (M[t][j] != 0) {
          col_swap(t, j);
          clean = false;
        }
      }
    }
    if (M[t][t] < 0) row_negate(t);

    // enforce the divisibility chain: d_t must divide every remaining entry
    bool redo = false;
    for (int i = t + 1; i < r && !redo; ++i)
      for (int j = t + 1; j < c && !redo; ++j)
        if (M[i][j] % M[t][t] != 0) {
          row_add(t, i, 1);
          redo = true;
        }
    if (redo) continue;  // re-run elimination at the same t
    out.diag.push_back(M[t][t]);
    ++t;
  }
  out.rank = static_cast<int>(out.diag.size());
  return out;
}

// Basis of the integer kernel lattice of A (saturated); columns form the basis.
inline IntMatrix kernel_z(const IntMatrix& A) {
  DenseSNF s = snf_z(A, SNF_V);
  std::vector<Vec> cols;
  for (int j = s.rank; j < A.cols(); ++j) {
    Vec v(A.cols());
    for (int i = 0; i < A.cols(); ++i) v[i] = s.V[i][j];
    cols.push_back(std::move(v));
  }
  return IntMatrix::from_columns(A.cols(), cols, Ring());
}

// Basis of the column lattice of A: vectors d_i * (Uinv e_i), i < rank.
inline IntMatrix column_lattice_basis_z(const IntMatrix& A) {
  DenseSNF s = snf_z(A, SNF_UINV);
  std::vector<Vec> cols;
  for (int i = 0; i < s.rank; ++i) {
    Vec v(A.rows());
    for (int k = 0; k < A.rows(); ++k) v[k] = s.diag[i] * s.Uinv[k][i];
    cols.push_back(std::move(v));
  }
  return IntMatrix::from_columns(A.rows(), cols, Ring());
}

// Solve A X = B over Z; nullopt if no integral solution exists.
inline std::optional<IntMatrix> solve_z(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows() != B.rows()) throw contract_error("solve_z: row mismatch");
  DenseSNF s = snf_z(A, SNF_U | SNF_V);
  std::vector<Vec> xcols;
  for (int j = 0; j < B.cols(); ++j) {
    Vec b = B.column(j);
    // y = U b
    Vec y(A.rows(), 0);
    for (int i = 0; i < A.rows(); ++i)
      for (int k = 0; k < A.rows(); ++k)
        if (s.U[i][k] != 0 && b[k] != 0) y[i] += s.U[i][k] * b[k];
    Vec z(A.cols(), 0);
    for (int i = 0; i < A.rows(); ++i) {
      if (i < s.rank) {
        if (y[i] % s.diag[i] != 0) return std::nullopt;
        z[i] = y[i] / s.diag[i];
      } else if (y[i] != 0) {
        return std::nullopt;
      }
    }
    Vec x(A.cols(), 0);
    for (int i = 0; i < A.cols(); ++i)
      for (int k = 0; k < A.cols(); ++k)
        if (s.V[i][k] != 0 && z[k] != 0) x[i] += s.V[i][k] * z[k];
    xcols.push_back(std::move(x));
  }
  return IntMatrix::from_columns(A.cols(), xcols, Ring());
}

// Generators of the lattice { x : A x lies in the column span of L }.
inline IntMatrix preimage_lattice_z(const IntMatrix& A, const IntMatrix& L) {
  if (L.cols() == 0 || L.is_zero()) return kernel_z(A);
  IntMatrix stacked = A.hstack(L.scaled(-1));
  IntMatrix K = kernel_z(stacked);
  std::vector<Vec> cols;
  for (int j = 0; j < K.cols(); ++j) {
    Vec full = K.column(j);
    Vec x(full.begin(), full.begin() + A.cols());
    bool nz = false;
    for (const auto& v : x) nz = nz || v != 0;
    if (nz) cols.push_back(std::move(x));
  }
  return IntMatrix::from_columns(A.cols(), cols, Ring());
}

}  // namespace prociso

#endif
