#ifndef PROCISO_TENSOR_HPP
#define PROCISO_TENSOR_HPP

#include "prociso/chain_complex.hpp"

namespace prociso {

// Index bookkeeping for (C (x) D)_n = (+)_{i+j=n} C_i (x) D_j; within each
// (i,j) block the basis is a*rank(D_j)+b.
struct TensorIndex {
  const ChainComplex* C;
  const ChainComplex* D;
  // offset of block (i, n-i) in degree n
  int offset(int n, int i) const {
    int acc = 0;
    for (int t = 0; t < i; ++t) acc += C->rank(t) * D->rank(n - t);
    return acc;
  }
  int rank(int n) const {
    int acc = 0;
    for (int i = 0; i <= n; ++i) acc += C->rank(i) * D->rank(n - i);
    return acc;
  }
  int pos(int n, int i, int a, int b) const { return offset(n, i) + a * D->rank(n - i) + b; }
};

// Koszul convention: d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy.
inline ChainComplex tensor_complexes(const ChainComplex& C, const ChainComplex& D,
                                     int degree_cap) {
  if (C.base() != D.base()) throw contract_error("tensor_complexes: base mismatch");
  TensorIndex ix{&C, &D};
  std::map<int, int> ranks;
  for (int n = 0; n <= degree_cap; ++n) ranks[n] = ix.rank(n);
  // presented factors: relations of the tensor are W_C (x) D plus C (x) W_D
  std::map<int, IntMatrix> rel;
  if (C.has_relations() || D.has_relations()) {
    for (int n = 0; n <= degree_cap; ++n) {
      std::vector<Vec> cols;
      for (int i = 0; i <= n; ++i) {
        int j = n - i;
        IntMatrix wc = C.relations(i), wd = D.relations(j);
        for (int col = 0; col < wc.cols(); ++col)
          for (int b = 0; b < D.rank(j); ++b) {
            Vec v(ranks[n], 0);
            for (const auto& t : wc.entries())
              if (t.col == col) v[ix.pos(n, i, t.row, b)] = t.val;
            cols.push_back(std::move(v));
          }
        for (int col = 0; col < wd.cols(); ++col)
          for (int a = 0; a < C.rank(i); ++a) {
            Vec v(ranks[n], 0);
            for (const auto& t : wd.entries())
              if (t.col == col) v[ix.pos(n, i, a, t.row)] = t.val;
            cols.push_back(std::move(v));
          }
      }
      if (!cols.empty()) rel[n] = IntMatrix::from_columns(ranks[n], cols, C.base());
    }
  }
  std::map<int, IntMatrix> bd;
  for (int n = 1; n <= degree_cap; ++n) {
    std::vector<Triplet> ts;
    for (int i = 0; i <= n; ++i) {
      int j = n - i;
      if (C.rank(i) == 0 || D.rank(j) == 0) continue;
      if (i > 0) {
        IntMatrix dc = C.boundary(i);
        for (const auto& t : dc.entries())
          for (int b = 0; b < D.rank(j); ++b)
            ts.push_back({ix.pos(n - 1, i - 1, t.row, b), ix.pos(n, i, t.col, b), t.val});
      }
      if (j > 0) {
        IntMatrix dd = D.boundary(j);
        Int sgn = (i % 2 == 0) ? 1 : -1;
        for (const auto& t : dd.entries())
          for (int a = 0; a < C.rank(i); ++a)
            ts.push_back({ix.pos(n - 1, i, a, t.row), ix.pos(n, i, a, t.col), sgn * t.val});
      }
    }
    std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    bd[n] = IntMatrix::from_triplets(ranks[n - 1], ranks[n], C.base(), ts);
  }
  return ChainComplex(C.base(), std::move(ranks), std::move(bd), {}, std::move(rel));
}

// f (x) g on tensor complexes built with the same degree cap.
inline ChainMap tensor_maps(const ChainMap& f, const ChainMap& g, const ChainComplex& src,
                            const ChainComplex& dst, int degree_cap) {
  TensorIndex si{&f.source(), &g.source()};
  TensorIndex di{&f.target(), &g.target()};
  std::map<int, IntMatrix> blocks;
  for (int n = 0; n <= degree_cap; ++n) {
    std::vector<Triplet> ts;
    for (int i = 0; i <= n; ++i) {
      int j = n - i;
      IntMatrix fi = f.block(i), gj = g.block(j);
      for (const auto& tf : fi.entries())
        for (const auto& tg : gj.entries())
          ts.push_back({di.pos(n, i, tf.row, tg.row), si.pos(n, i, tf.col, tg.col),
                        tf.val * tg.val});
    }
    std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    blocks[n] = IntMatrix::from_triplets(dst.rank(n), src.rank(n), src.base(), ts);
  }
  return ChainMap(src, dst, std::move(blocks));
}

}  // namespace prociso

#endif
