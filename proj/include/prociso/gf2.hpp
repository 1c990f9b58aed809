#ifndef PROCISO_GF2_HPP
#define PROCISO_GF2_HPP

#include "prociso/matrix.hpp"

#include <cstdint>
#include <optional>

namespace prociso {

// Bit-packed matrix over F_2; fast path for the large mod-2 complexes.
class BitMatrix {
 public:
  BitMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(static_cast<std::size_t>(rows) * words_, 0) {}

  static BitMatrix from_int_matrix(const IntMatrix& A) {
    BitMatrix m(A.rows(), A.cols());
    for (const auto& t : A.entries())
      if (mpz_odd_p(t.val.get_mpz_t())) m.flip(t.row, t.col);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool get(int r, int c) const { return (word(r, c / 64) >> (c % 64)) & 1; }
  void flip(int r, int c) { word(r, c / 64) ^= (1ULL << (c % 64)); }
  void set(int r, int c, bool v) {
    if (get(r, c) != v) flip(r, c);
  }

  void xor_row(int dst, int src) {
    std::uint64_t* d = &data_[static_cast<std::size_t>(dst) * words_];
    const std::uint64_t* s = &data_[static_cast<std::size_t>(src) * words_];
    for (int w = 0; w < words_; ++w) d[w] ^= s[w];
  }

  BitMatrix operator*(const BitMatrix& o) const {
    if (cols_ != o.rows_) throw contract_error("BitMatrix: shape mismatch");
    BitMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
      std::uint64_t* dst = &m.data_[static_cast<std::size_t>(i) * m.words_];
      for (int k = 0; k < cols_; ++k) {
        if (!get(i, k)) continue;
        const std::uint64_t* src = &o.data_[static_cast<std::size_t>(k) * o.words_];
        for (int w = 0; w < o.words_; ++w) dst[w] ^= src[w];
      }
    }
    return m;
  }

  // Row-echelon rank; works on a copy of the row space of the transpose-free
  // representation, reducing each row against recorded pivots.
  int rank() const {
    BitMatrix work = *this;
    std::vector<int> pivot_of_row;
    std::vector<int> pivot_cols;
    int rk = 0;
    for (int i = 0; i < rows_; ++i) {
      for (std::size_t t = 0; t < pivot_cols.size(); ++t)
        if (work.get(i, pivot_cols[t])) work.xor_row(i, pivot_of_row[t]);
      int lead = work.leading(i);
      if (lead >= 0) {
        pivot_of_row.push_back(i);
        pivot_cols.push_back(lead);
        ++rk;
      }
    }
    return rk;
  }

  // Kernel basis: columns (as IntMatrix over Z/2) spanning { x : A x = 0 }.
  IntMatrix kernel() const {
    // column-reduce: work on transpose rows
    BitMatrix tr(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int w = 0; w < words_; ++w) {
        std::uint64_t bits = data_[static_cast<std::size_t>(i) * words_ + w];
        while (bits) {
          int b = __builtin_ctzll(bits);
          bits &= bits - 1;
          tr.flip(w * 64 + b, i);
        }
      }
    // record row operations on an identity to recover kernel combinations
    BitMatrix ops(cols_, cols_);
    for (int i = 0; i < cols_; ++i) ops.flip(i, i);
    std::vector<int> pivot_of_row, pivot_cols;
    std::vector<bool> is_zero_row(cols_, false);
    for (int i = 0; i < cols_; ++i) {
      for (std::size_t t = 0; t < pivot_cols.size(); ++t)
        if (tr.get(i, pivot_cols[t])) {
          tr.xor_row(i, pivot_of_row[t]);
          ops.xor_row(i, pivot_of_row[t]);
        }
      int lead = tr.leading(i);
      if (lead >= 0) {
        pivot_of_row.push_back(i);
        pivot_cols.push_back(lead);
      } else {
        is_zero_row[i] = true;
      }
    }
    std::vector<Vec> cols;
    for (int i = 0; i < cols_; ++i) {
      if (!is_zero_row[i]) continue;
      Vec v(cols_, 0);
      for (int j = 0; j < cols_; ++j)
        if (ops.get(i, j)) v[j] = 1;
      cols.push_back(std::move(v));
    }
    return IntMatrix::from_columns(cols_, cols, Ring::zmod(2));
  }

 private:
  int leading(int r) const {
    const std::uint64_t* d = &data_[static_cast<std::size_t>(r) * words_];
    for (int w = 0; w < words_; ++w)
      if (d[w]) return w * 64 + __builtin_ctzll(d[w]);
    return -1;
  }

  std::uint64_t& word(int r, int w) { return data_[static_cast<std::size_t>(r) * words_ + w]; }
  const std::uint64_t& word(int r, int w) const { return data_[static_cast<std::size_t>(r) * words_ + w]; }

  int rows_, cols_, words_;
  std::vector<std::uint64_t> data_;
};

inline int rank_gf2(const IntMatrix& A) { return BitMatrix::from_int_matrix(A).rank(); }

// Solve A X = B over F_2 via Gauss-Jordan on the augmented bit matrix.
inline std::optional<IntMatrix> solve_gf2(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows() != B.rows()) throw contract_error("solve_gf2: row mismatch");
  const int n = A.rows(), m = A.cols(), k = B.cols();
  BitMatrix aug(n, m + k);
  for (const auto& t : A.entries())
    if (mpz_odd_p(t.val.get_mpz_t())) aug.flip(t.row, t.col);
  for (const auto& t : B.entries())
    if (mpz_odd_p(t.val.get_mpz_t())) aug.flip(t.row, m + t.col);
  std::vector<int> pivot_col;
  int rk = 0;
  for (int c = 0; c < m && rk < n; ++c) {
    int pr = -1;
    for (int i = rk; i < n; ++i)
      if (aug.get(i, c)) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != rk)
      for (int w = 0; w < m + k; ++w) {
        bool a = aug.get(rk, w), b = aug.get(pr, w);
        aug.set(rk, w, b);
        aug.set(pr, w, a);
      }
    for (int i = 0; i < n; ++i)
      if (i != rk && aug.get(i, c)) aug.xor_row(i, rk);
    pivot_col.push_back(c);
    ++rk;
  }
  for (int i = rk; i < n; ++i)
    for (int j = 0; j < k; ++j)
      if (aug.get(i, m + j)) return std::nullopt;
  std::vector<Vec> xs(k, Vec(m, 0));
  for (int t = 0; t < rk; ++t)
    for (int j = 0; j < k; ++j)
      if (aug.get(t, m + j)) xs[j][pivot_col[t]] = 1;
  return IntMatrix::from_columns(m, xs, A.base());
}

inline IntMatrix kernel_gf2(const IntMatrix& A) { return BitMatrix::from_int_matrix(A).kernel(); }

}  // namespace prociso

#endif
