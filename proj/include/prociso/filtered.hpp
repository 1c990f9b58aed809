#ifndef PROCISO_FILTERED_HPP
#define PROCISO_FILTERED_HPP

#include "prociso/chain_complex.hpp"

#include <algorithm>
#include <iterator>

namespace prociso {

// Increasing exhaustive filtration by sub-bases: level a selects a sorted
// subset of the basis in each degree; the top level selects everything.
class FilteredComplex {
 public:
  FilteredComplex(ChainComplex ambient, std::vector<std::map<int, std::vector<int>>> levels)
      : ambient_(std::move(ambient)), levels_(std::move(levels)) {
    validate();
  }

  const ChainComplex& ambient() const { return ambient_; }
  int num_levels() const { return static_cast<int>(levels_.size()); }

  // selected basis indices at filtration level a, degree n (clamped: a < 0 is
  // empty, a >= num_levels is everything)
  std::vector<int> selection(int a, int n) const {
    if (a < 0) return {};
    if (a >= num_levels()) {
      std::vector<int> all(ambient_.rank(n));
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
      return all;
    }
    auto it = levels_[a].find(n);
    return it == levels_[a].end() ? std::vector<int>{} : it->second;
  }

  // inclusion matrix of F_a in degree n
  IntMatrix inclusion(int a, int n) const {
    auto sel = selection(a, n);
    std::vector<Triplet> ts;
    for (std::size_t j = 0; j < sel.size(); ++j) ts.push_back({sel[j], static_cast<int>(j), 1});
    return IntMatrix::from_triplets(ambient_.rank(n), static_cast<int>(sel.size()),
                                    ambient_.base(), ts);
  }

  // F_a as a chain complex on its own basis
  ChainComplex level_complex(int a) const {
    std::map<int, int> ranks;
    std::map<int, IntMatrix> bd;
    for (const auto& [n, r] : ambient_.ranks()) {
      auto sel = selection(a, n);
      ranks[n] = static_cast<int>(sel.size());
    }
    for (const auto& [n, r] : ranks) {
      if (r == 0 || ambient_.rank(n - 1) == 0) continue;
      bd[n] = restrict_boundary(selection(a, n - 1), selection(a, n), n);
    }
    return ChainComplex(ambient_.base(), std::move(ranks), std::move(bd));
  }

  // gr_a = F_a / F_{a-1}, on the basis selected at a but not at a-1
  ChainComplex graded_piece(int a) const {
    std::map<int, std::vector<int>> basis;
    std::map<int, int> ranks;
    for (const auto& [n, r] : ambient_.ranks()) {
      auto hi = selection(a, n), lo = selection(a - 1, n);
      std::vector<int> diff;
      std::set_difference(hi.begin(), hi.end(), lo.begin(), lo.end(), std::back_inserter(diff));
      basis[n] = diff;
      ranks[n] = static_cast<int>(diff.size());
    }
    std::map<int, IntMatrix> bd;
    for (const auto& [n, r] : ranks)
      if (r > 0 && ranks.count(n - 1)) bd[n] = restrict_boundary(basis[n - 1], basis[n], n);
    return ChainComplex(ambient_.base(), std::move(ranks), std::move(bd));
  }

 private:
  // boundary block with rows/cols restricted to the given index sets; entries
  // outside the row set are dropped (valid for level_complex by the subcomplex
  // property, and the drop is exactly the quotient projection for gr)
  IntMatrix restrict_boundary(const std::vector<int>& rowsel, const std::vector<int>& colsel,
                              int n) const {
    std::map<int, int> rpos;
    for (std::size_t i = 0; i < rowsel.size(); ++i) rpos[rowsel[i]] = static_cast<int>(i);
    IntMatrix d = ambient_.boundary(n);
    std::vector<Triplet> ts;
    for (std::size_t j = 0; j < colsel.size(); ++j) {
      for (const auto& t : d.entries()) {
        if (t.col != colsel[j]) continue;
        auto it = rpos.find(t.row);
        if (it != rpos.end()) ts.push_back({it->second, static_cast<int>(j), t.val});
      }
    }
    std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    return IntMatrix::from_triplets(static_cast<int>(rowsel.size()),
                                    static_cast<int>(colsel.size()), ambient_.base(), ts);
  }

  void validate() const {
    if (levels_.empty()) throw contract_error("FilteredComplex: no levels");
    for (const auto& [n, r] : ambient_.ranks()) {
      std::vector<int> prev;
      for (int a = 0; a < num_levels(); ++a) {
        auto sel = selection(a, n);
        if (!std::is_sorted(sel.begin(), sel.end()) ||
            std::adjacent_find(sel.begin(), sel.end()) != sel.end())
          throw contract_error("FilteredComplex: selection not sorted/unique");
        for (int i : sel)
          if (i < 0 || i >= r) throw contract_error("FilteredComplex: selection out of range");
        if (!std::includes(sel.begin(), sel.end(), prev.begin(), prev.end()))
          throw contract_error("FilteredComplex: filtration not increasing");
        prev = sel;
      }
      if (static_cast<int>(prev.size()) != r)
        throw contract_error("FilteredComplex: filtration not exhaustive in degree " +
                             std::to_string(n));
    }
    // subcomplex property: boundary of a selected column supported on selected rows
    for (int a = 0; a < num_levels(); ++a) {
      for (const auto& [n, r] : ambient_.ranks()) {
        auto colsel = selection(a, n);
        auto rowsel = selection(a, n - 1);
        IntMatrix d = ambient_.boundary(n);
        for (const auto& t : d.entries()) {
          if (!std::binary_search(colsel.begin(), colsel.end(), t.col)) continue;
          if (!std::binary_search(rowsel.begin(), rowsel.end(), t.row))
            throw contract_error("FilteredComplex: level " + std::to_string(a) +
                                 " is not a subcomplex in degree " + std::to_string(n));
        }
      }
    }
  }

  ChainComplex ambient_;
  std::vector<std::map<int, std::vector<int>>> levels_;
};

// Decalage: degree-n component { c in F_{a+n} : d c in F_{a+n-1} }, with its
// inclusion into the ambient complex. Over Z the component is free (saturated
// lattice); over Z/p^k it is returned as generators plus syzygy relations.
struct DecalageResult {
  ChainComplex complex;
  ChainMap inclusion;
  std::map<int, IntMatrix> generators;  // ambient coordinates per degree
};

inline DecalageResult decalage(const FilteredComplex& F, int a) {
  if (a < 0) throw contract_error("decalage: negative level");
  const ChainComplex& C = F.ambient();
  const Ring& base = C.base();
  std::map<int, IntMatrix> gens, rels;
  std::map<int, int> ranks;
  for (const auto& [n, r] : C.ranks()) {
    IntMatrix E = F.inclusion(a + n, n);
    IntMatrix T = C.boundary(n) * E;
    IntMatrix E0 = F.inclusion(a + n - 1, n - 1);
    IntMatrix Y;
    if (base.is_integers())
      Y = E0.cols() == 0 || E0.is_zero() ? kernel_z(T) : preimage_lattice_z(T, E0);
    else
      Y = E0.cols() == 0 || E0.is_zero() ? kernel_mod(T) : preimage_mod(T, E0);
    IntMatrix G = E * Y;
    if (base.is_integers()) {
      G = column_lattice_basis_z(G);
    } else if (G.cols() > 0) {
      IntMatrix syz = kernel_mod(G);
      if (syz.cols() > 0) rels[n] = syz;
    }
    gens[n] = G;
    ranks[n] = G.cols();
  }
  std::map<int, IntMatrix> bd;
  for (const auto& [n, r] : ranks) {
    if (r == 0) continue;
    auto prev = gens.find(n - 1);
    IntMatrix G0 = prev == gens.end() ? IntMatrix::zero(C.rank(n - 1), 0, base) : prev->second;
    IntMatrix img = C.boundary(n) * gens[n];
    if (G0.cols() == 0) {
      if (!img.is_zero()) throw contract_error("decalage: boundary leaves the component");
      continue;
    }
    auto X = solve_in_base(G0, img);
    if (!X) throw contract_error("decalage: boundary leaves the component");
    bd[n] = *X;
  }
  ChainComplex D(base, std::move(ranks), std::move(bd), {}, std::move(rels));
  std::map<int, IntMatrix> incl;
  for (const auto& [n, G] : gens)
    if (G.cols() > 0) incl[n] = G;
  ChainMap inc(D, C, std::move(incl));
  return {std::move(D), std::move(inc), std::move(gens)};
}

}  // namespace prociso

#endif
