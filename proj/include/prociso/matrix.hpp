#ifndef PROCISO_MATRIX_HPP
#define PROCISO_MATRIX_HPP

#include "prociso/ring.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

namespace prociso {

using Vec = std::vector<Int>;

struct Triplet {
  int row;
  int col;
  Int val;
};

// Sparse exact matrix over Z or Z/m. Entries are kept sorted by (row, col),
// reduced to canonical representatives, with no explicit zeros.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols, Ring base = Ring())
      : rows_(rows), cols_(cols), base_(std::move(base)) {
    if (rows < 0 || cols < 0) throw contract_error("IntMatrix: negative dimensions");
  }

  static IntMatrix from_triplets(int rows, int cols, Ring base, const std::vector<Triplet>& ts) {
    IntMatrix m(rows, cols, base);
    std::map<std::pair<int, int>, Int> acc;
    for (const auto& t : ts) {
      if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
        throw contract_error("IntMatrix: entry out of range");
      if (!acc.emplace(std::make_pair(t.row, t.col), t.val).second)
        throw contract_error("IntMatrix: duplicate (row, col) pair");
    }
    for (auto& [rc, v] : acc) {
      Int r = m.base_.reduce(v);
      if (r != 0) m.entries_.push_back({rc.first, rc.second, std::move(r)});
    }
    return m;
  }

  static IntMatrix identity(int n, Ring base = Ring()) {
    IntMatrix m(n, n, std::move(base));
    for (int i = 0; i < n; ++i)
      if (m.base_.mod != 0 || true) m.entries_.push_back({i, i, 1});
    return m;
  }

  static IntMatrix zero(int rows, int cols, Ring base = Ring()) {
    return IntMatrix(rows, cols, std::move(base));
  }

  static IntMatrix scalar(int n, const Int& c, Ring base = Ring()) {
    IntMatrix m(n, n, base);
    Int r = m.base_.reduce(c);
    if (r != 0)
      for (int i = 0; i < n; ++i) m.entries_.push_back({i, i, r});
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Ring& base() const { return base_; }
  const std::vector<Triplet>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }

  Int at(int r, int c) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(r, c),
                               [](const Triplet& t, const std::pair<int, int>& rc) {
                                 return std::make_pair(t.row, t.col) < rc;
                               });
    if (it != entries_.end() && it->row == r && it->col == c) return it->val;
    return 0;
  }

  IntMatrix transpose() const {
    IntMatrix m(cols_, rows_, base_);
    m.entries_.reserve(entries_.size());
    for (const auto& t : entries_) m.entries_.push_back({t.col, t.row, t.val});
    std::sort(m.entries_.begin(), m.entries_.end(), cmp);
    return m;
  }

  IntMatrix operator+(const IntMatrix& o) const { return combine(o, 1); }
  IntMatrix operator-(const IntMatrix& o) const { return combine(o, -1); }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw contract_error("IntMatrix: shape mismatch in product");
    if (base_ != o.base_) throw contract_error("IntMatrix: base mismatch in product");
    // row-major view of o
    std::vector<std::vector<std::pair<int, const Int*>>> orows(o.rows_);
    for (const auto& t : o.entries_) orows[t.row].emplace_back(t.col, &t.val);
    IntMatrix m(rows_, o.cols_, base_);
    std::map<int, Int> rowacc;
    int currow = -1;
    auto flush = [&]() {
      for (auto& [c, v] : rowacc) {
        Int r = base_.reduce(v);
        if (r != 0) m.entries_.push_back({currow, c, std::move(r)});
      }
      rowacc.clear();
    };
    for (const auto& t : entries_) {
      if (t.row != currow) {
        if (currow >= 0) flush();
        currow = t.row;
      }
      for (const auto& [c, pv] : orows[t.col]) rowacc[c] += t.val * (*pv);
    }
    if (currow >= 0) flush();
    return m;
  }

  IntMatrix scaled(const Int& c) const {
    IntMatrix m(rows_, cols_, base_);
    for (const auto& t : entries_) {
      Int v = base_.reduce(t.val * c);
      if (v != 0) m.entries_.push_back({t.row, t.col, std::move(v)});
    }
    return m;
  }

  // Reinterpret over another ring (entries reduced).
  IntMatrix with_base(const Ring& b) const {
    IntMatrix m(rows_, cols_, b);
    for (const auto& t : entries_) {
      Int v = b.reduce(t.val);
      if (v != 0) m.entries_.push_back({t.row, t.col, std::move(v)});
    }
    return m;
  }

  bool operator==(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    if (entries_.size() != o.entries_.size()) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].row != o.entries_[i].row || entries_[i].col != o.entries_[i].col ||
          entries_[i].val != o.entries_[i].val)
        return false;
    return true;
  }

  Vec apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_) throw contract_error("IntMatrix: apply size mismatch");
    Vec y(rows_, 0);
    for (const auto& t : entries_) y[t.row] += t.val * x[t.col];
    for (auto& v : y) v = base_.reduce(v);
    return y;
  }

  Vec column(int j) const {
    Vec v(rows_, 0);
    for (const auto& t : entries_)
      if (t.col == j) v[t.row] = t.val;
    return v;
  }

  std::vector<Vec> to_dense() const {
    std::vector<Vec> d(rows_, Vec(cols_, 0));
    for (const auto& t : entries_) d[t.row][t.col] = t.val;
    return d;
  }

  static IntMatrix from_dense(const std::vector<Vec>& d, Ring base = Ring()) {
    int r = static_cast<int>(d.size());
    int c = r == 0 ? 0 : static_cast<int>(d[0].size());
    IntMatrix m(r, c, std::move(base));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        Int v = m.base_.reduce(d[i][j]);
        if (v != 0) m.entries_.push_back({i, j, std::move(v)});
      }
    return m;
  }

  // From dense column vectors.
  static IntMatrix from_columns(int rows, const std::vector<Vec>& cols, Ring base = Ring()) {
    IntMatrix m(rows, static_cast<int>(cols.size()), std::move(base));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < m.cols_; ++j) {
        if (i >= static_cast<int>(cols[j].size())) continue;
        Int v = m.base_.reduce(cols[j][i]);
        if (v != 0) m.entries_.push_back({i, j, std::move(v)});
      }
    return m;
  }

  // Horizontal concatenation [this | o].
  IntMatrix hstack(const IntMatrix& o) const {
    if (rows_ != o.rows_ || base_ != o.base_) throw contract_error("hstack: shape/base mismatch");
    IntMatrix m(rows_, cols_ + o.cols_, base_);
    m.entries_ = entries_;
    for (const auto& t : o.entries_) m.entries_.push_back({t.row, t.col + cols_, t.val});
    std::sort(m.entries_.begin(), m.entries_.end(), cmp);
    return m;
  }

  // Sparse triplet text: one "row col value" per line, 0-indexed, sorted.
  std::string to_triplet_text() const {
    std::ostringstream os;
    for (const auto& t : entries_) os << t.row << ' ' << t.col << ' ' << t.val.get_str() << '\n';
    return os.str();
  }

 private:
  static bool cmp(const Triplet& a, const Triplet& b) {
    return std::make_pair(a.row, a.col) < std::make_pair(b.row, b.col);
  }

  IntMatrix combine(const IntMatrix& o, int sign) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw contract_error("IntMatrix: shape mismatch");
    if (base_ != o.base_) throw contract_error("IntMatrix: base mismatch");
    IntMatrix m(rows_, cols_, base_);
    std::size_t i = 0, j = 0;
    auto key = [](const Triplet& t) { return std::make_pair(t.row, t.col); };
    while (i < entries_.size() || j < o.entries_.size()) {
      Triplet t;
      if (j >= o.entries_.size() || (i < entries_.size() && key(entries_[i]) < key(o.entries_[j]))) {
        t = entries_[i++];
      } else if (i >= entries_.size() || key(o.entries_[j]) < key(entries_[i])) {
        t = o.entries_[j];
        t.val *= sign;
        ++j;
      } else {
        t = entries_[i];
        t.val += sign * o.entries_[j].val;
        ++i;
        ++j;
      }
      Int v = base_.reduce(t.val);
      if (v != 0) m.entries_.push_back({t.row, t.col, std::move(v)});
    }
    return m;
  }

  int rows_;
  int cols_;
  Ring base_;
  std::vector<Triplet> entries_;
};

}  // namespace prociso

#endif
