#ifndef PROCISO_CHAIN_COMPLEX_HPP
#define PROCISO_CHAIN_COMPLEX_HPP

#include "prociso/homology.hpp"

#include <map>
#include <string>

namespace prociso {

// Chain complex of finite free modules, with optional per-degree relation
// columns (so quotient complexes like cyclic coinvariants, which need not be
// free over Z/p^k, fit in the same container). boundary(n): C_n -> C_{n-1}.
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(Ring base, std::map<int, int> ranks, std::map<int, IntMatrix> boundaries,
               std::map<int, std::vector<std::string>> labels = {},
               std::map<int, IntMatrix> relations = {})
      : base_(std::move(base)),
        ranks_(std::move(ranks)),
        d_(std::move(boundaries)),
        labels_(std::move(labels)),
        relations_(std::move(relations)) {
    validate();
  }

  const Ring& base() const { return base_; }

  int rank(int n) const {
    auto it = ranks_.find(n);
    return it == ranks_.end() ? 0 : it->second;
  }

  IntMatrix boundary(int n) const {
    auto it = d_.find(n);
    if (it != d_.end()) return it->second;
    return IntMatrix::zero(rank(n - 1), rank(n), base_);
  }

  IntMatrix relations(int n) const {
    auto it = relations_.find(n);
    if (it != relations_.end()) return it->second;
    return IntMatrix::zero(rank(n), 0, base_);
  }

  bool has_relations() const {
    for (const auto& [n, w] : relations_)
      if (w.cols() > 0) return true;
    return false;
  }

  const std::vector<std::string>& labels(int n) const {
    static const std::vector<std::string> empty;
    auto it = labels_.find(n);
    return it == labels_.end() ? empty : it->second;
  }

  int min_degree() const {
    for (const auto& [n, r] : ranks_)
      if (r > 0) return n;
    return 0;
  }
  int max_degree() const {
    int m = 0;
    for (const auto& [n, r] : ranks_)
      if (r > 0) m = std::max(m, n);
    return m;
  }

  const std::map<int, int>& ranks() const { return ranks_; }

  SubquotientSpec spec_at(int n) const {
    SubquotientSpec sq;
    IntMatrix wn = relations(n), wm = relations(n - 1);
    if (wn.cols() > 0) sq.W_n = wn;
    if (wm.cols() > 0) sq.W_nm1 = wm;
    return sq;
  }

  FGAbelianGroup homology(int n) const {
    return homology_general(boundary(n), boundary(n + 1), spec_at(n));
  }

  HomologySolver solver(int n) const {
    return HomologySolver(boundary(n), boundary(n + 1), spec_at(n));
  }

  // C[k]_n = C_{n-k}, boundary scaled by (-1)^k
  ChainComplex shifted(int k) const {
    std::map<int, int> ranks;
    std::map<int, IntMatrix> d;
    std::map<int, IntMatrix> rel;
    std::map<int, std::vector<std::string>> lab;
    for (const auto& [n, r] : ranks_) ranks[n + k] = r;
    for (const auto& [n, m] : d_) d[n + k] = (k % 2 == 0) ? m : m.scaled(-1);
    for (const auto& [n, m] : relations_) rel[n + k] = m;
    for (const auto& [n, l] : labels_) lab[n + k] = l;
    return ChainComplex(base_, std::move(ranks), std::move(d), std::move(lab), std::move(rel));
  }

  bool operator==(const ChainComplex& o) const {
    if (base_ != o.base_) return false;
    int lo = std::min(min_degree(), o.min_degree());
    int hi = std::max(max_degree(), o.max_degree());
    for (int n = lo; n <= hi + 1; ++n) {
      if (rank(n) != o.rank(n)) return false;
      if (!(boundary(n) == o.boundary(n))) return false;
      if (!(relations(n) == o.relations(n))) return false;
    }
    return true;
  }

 private:
  void validate() const {
    for (const auto& [n, r] : ranks_)
      if (r < 0) throw contract_error("ChainComplex: negative rank in degree " + std::to_string(n));
    for (const auto& [n, m] : d_) {
      if (m.base() != base_) throw contract_error("ChainComplex: boundary base mismatch");
      if (m.rows() != rank(n - 1) || m.cols() != rank(n))
        throw contract_error("ChainComplex: boundary shape mismatch in degree " + std::to_string(n));
    }
    for (const auto& [n, w] : relations_) {
      if (w.base() != base_) throw contract_error("ChainComplex: relation base mismatch");
      if (w.rows() != rank(n))
        throw contract_error("ChainComplex: relation shape mismatch in degree " + std::to_string(n));
    }
    for (const auto& [n, m] : d_) {
      IntMatrix comp = boundary(n - 1) * m;
      if (!has_relations()) {
        if (!comp.is_zero()) {
          const auto& w = comp.entries().front();
          throw contract_error("ChainComplex: d o d != 0 at degree " + std::to_string(n) +
                               ", witness entry (" + std::to_string(w.row) + ", " +
                               std::to_string(w.col) + ") = " + w.val.get_str());
        }
      } else {
        if (!columns_in_span(comp, relations(n - 2)))
          throw contract_error("ChainComplex: d o d not in relations at degree " + std::to_string(n));
        // relations must be carried into relations by the boundary
        if (!columns_in_span(m * relations(n), relations(n - 1)))
          throw contract_error("ChainComplex: boundary does not preserve relations at degree " +
                               std::to_string(n));
      }
    }
  }

  Ring base_;
  std::map<int, int> ranks_;
  std::map<int, IntMatrix> d_;
  std::map<int, std::vector<std::string>> labels_;
  std::map<int, IntMatrix> relations_;
};

// Chain map f: source -> target; blocks f_n: target.rank(n) x source.rank(n).
// Commutation and relation compatibility are validated exactly (modulo the
// target relations when present).
class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(ChainComplex source, ChainComplex target, std::map<int, IntMatrix> blocks)
      : src_(std::move(source)), dst_(std::move(target)), blocks_(std::move(blocks)) {
    validate();
  }

  const ChainComplex& source() const { return src_; }
  const ChainComplex& target() const { return dst_; }

  IntMatrix block(int n) const {
    auto it = blocks_.find(n);
    if (it != blocks_.end()) return it->second;
    return IntMatrix::zero(dst_.rank(n), src_.rank(n), dst_.base());
  }

  static ChainMap identity(const ChainComplex& C) {
    std::map<int, IntMatrix> blocks;
    for (const auto& [n, r] : C.ranks())
      if (r > 0) blocks[n] = IntMatrix::identity(r, C.base());
    return ChainMap(C, C, std::move(blocks));
  }

  ChainMap compose(const ChainMap& inner) const {  // this o inner
    std::map<int, IntMatrix> blocks;
    int lo = std::min(src_.min_degree(), inner.src_.min_degree());
    int hi = std::max(src_.max_degree(), inner.src_.max_degree());
    for (int n = lo; n <= hi; ++n)
      if (dst_.rank(n) > 0 && inner.src_.rank(n) > 0) blocks[n] = block(n) * inner.block(n);
    return ChainMap(inner.src_, dst_, std::move(blocks));
  }

  ChainMap scaled(const Int& c) const {
    std::map<int, IntMatrix> blocks;
    for (const auto& [n, b] : blocks_) blocks[n] = b.scaled(c);
    return ChainMap(src_, dst_, std::move(blocks));
  }

  // induced map on H_n in the invariant-factor coordinates of the two solvers
  IntMatrix induced(const HomologySolver& hsrc, const HomologySolver& hdst, int n) const {
    return induced_on_homology(hsrc, hdst, block(n));
  }

 private:
  void validate() const {
    if (src_.base() != dst_.base()) throw contract_error("ChainMap: base mismatch");
    int lo = std::min(src_.min_degree(), dst_.min_degree());
    int hi = std::max(src_.max_degree(), dst_.max_degree());
    for (int n = lo; n <= hi; ++n) {
      IntMatrix f = block(n);
      if (f.rows() != dst_.rank(n) || f.cols() != src_.rank(n))
        throw contract_error("ChainMap: block shape mismatch in degree " + std::to_string(n));
      IntMatrix defect = dst_.boundary(n) * f - block(n - 1) * src_.boundary(n);
      if (!columns_in_span(defect, dst_.relations(n - 1)))
        throw contract_error("ChainMap: does not commute with boundaries in degree " +
                             std::to_string(n));
      if (!columns_in_span(f * src_.relations(n), dst_.relations(n)))
        throw contract_error("ChainMap: relations not respected in degree " + std::to_string(n));
    }
  }

  ChainComplex src_, dst_;
  std::map<int, IntMatrix> blocks_;
};

// A complex of free Z/q-modules as a presented complex over Z: same boundary
// entries (canonical representatives) with q * identity adjoined to the
// relations. Homology then agrees with the Z/q homology as abelian groups,
// and maps between different moduli become honest Z chain maps.
inline ChainComplex integral_presentation(const ChainComplex& C) {
  const Ring& b = C.base();
  if (b.is_integers()) return C;
  const Int q = b.mod;
  std::map<int, int> ranks;
  std::map<int, IntMatrix> bd, rel;
  for (const auto& [n, r] : C.ranks()) {
    ranks[n] = r;
    if (r == 0) continue;
    IntMatrix w = IntMatrix::scalar(r, q).hstack(C.relations(n).with_base(Ring()));
    rel[n] = w;
    IntMatrix d = C.boundary(n);
    if (d.rows() > 0 && d.cols() > 0) bd[n] = d.with_base(Ring());
  }
  return ChainComplex(Ring(), std::move(ranks), std::move(bd), {}, std::move(rel));
}

// Homology of the subcomplex of C spanned (in each degree) by the columns of
// L[n] (absent degree = everything). Handles non-free spans over Z/p^k.
inline FGAbelianGroup subcomplex_homology(const ChainComplex& C,
                                          const std::map<int, IntMatrix>& L, int n) {
  SubquotientSpec sq = C.spec_at(n);
  auto it = L.find(n);
  if (it != L.end()) sq.L_n = it->second;
  auto it1 = L.find(n + 1);
  if (it1 != L.end()) sq.L_np1 = it1->second;
  return homology_general(C.boundary(n), C.boundary(n + 1), sq);
}

inline HomologySolver subcomplex_solver(const ChainComplex& C,
                                        const std::map<int, IntMatrix>& L, int n) {
  SubquotientSpec sq = C.spec_at(n);
  auto it = L.find(n);
  if (it != L.end()) sq.L_n = it->second;
  auto it1 = L.find(n + 1);
  if (it1 != L.end()) sq.L_np1 = it1->second;
  return HomologySolver(C.boundary(n), C.boundary(n + 1), sq);
}

}  // namespace prociso

#endif
