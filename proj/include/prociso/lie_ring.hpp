#ifndef PROCISO_LIE_RING_HPP
#define PROCISO_LIE_RING_HPP

#include "prociso/fin_ring.hpp"

namespace prociso {

// Lie ring over Z/m presented by an antisymmetric structure tensor
// [e_i, e_j] = sum_k bracket[i][j][k] e_k.
class LieRing {
 public:
  LieRing(Ring base, int rank, std::vector<std::vector<Vec>> bracket,
          std::vector<std::string> labels = {})
      : base_(std::move(base)), rank_(rank), bracket_(std::move(bracket)), labels_(std::move(labels)) {
    validate();
  }

  const Ring& base() const { return base_; }
  int rank() const { return rank_; }
  const Vec& basis_bracket(int i, int j) const { return bracket_[i][j]; }
  const std::string& label(int i) const {
    static const std::string none;
    return labels_.empty() ? none : labels_[i];
  }

  Vec bracket(const Vec& x, const Vec& y) const {
    Vec out(rank_, 0);
    for (int i = 0; i < rank_; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < rank_; ++j) {
        if (y[j] == 0) continue;
        const Vec& b = bracket_[i][j];
        for (int k = 0; k < rank_; ++k)
          if (b[k] != 0) out[k] += x[i] * y[j] * b[k];
      }
    }
    for (auto& v : out) v = base_.reduce(v);
    return out;
  }

  Vec basis(int i) const {
    Vec v(rank_, 0);
    v[i] = 1;
    return v;
  }

  bool is_abelian() const {
    for (const auto& row : bracket_)
      for (const auto& v : row)
        for (const auto& x : v)
          if (base_.reduce(x) != 0) return false;
    return true;
  }

  // same module with bracket multiplied by c (models p^m gl_r: the inclusion
  // scales degree-n chains by c^{n-1} relative to this presentation)
  LieRing scaled_bracket(const Int& c) const {
    auto b = bracket_;
    for (auto& row : b)
      for (auto& v : row)
        for (auto& x : v) x = base_.reduce(c * x);
    return LieRing(base_, rank_, std::move(b), labels_);
  }

 private:
  void validate() const {
    if (rank_ <= 0) throw contract_error("LieRing: rank must be positive");
    if (static_cast<int>(bracket_.size()) != rank_) throw contract_error("LieRing: bracket shape");
    for (const auto& row : bracket_) {
      if (static_cast<int>(row.size()) != rank_) throw contract_error("LieRing: bracket shape");
      for (const auto& v : row)
        if (static_cast<int>(v.size()) != rank_) throw contract_error("LieRing: bracket shape");
    }
    for (int i = 0; i < rank_; ++i) {
      for (const auto& x : bracket_[i][i])
        if (base_.reduce(x) != 0)
          throw contract_error("LieRing: [x,x] != 0 on basis " + std::to_string(i));
      for (int j = 0; j < rank_; ++j)
        for (int k = 0; k < rank_; ++k)
          if (base_.reduce(bracket_[i][j][k] + bracket_[j][i][k]) != 0)
            throw contract_error("LieRing: antisymmetry fails on (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
    }
    for (int i = 0; i < rank_; ++i)
      for (int j = i + 1; j < rank_; ++j)
        for (int k = j + 1; k < rank_; ++k) {
          Vec s = bracket(basis(i), bracket_[j][k]);
          Vec t = bracket(basis(j), bracket_[k][i]);
          Vec u = bracket(basis(k), bracket_[i][j]);
          for (int t2 = 0; t2 < rank_; ++t2)
            if (base_.reduce(s[t2] + t[t2] + u[t2]) != 0)
              throw contract_error("LieRing: Jacobi fails on (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ", " + std::to_string(k) + ")");
        }
  }

  Ring base_;
  int rank_;
  std::vector<std::vector<Vec>> bracket_;
  std::vector<std::string> labels_;
};

inline LieRing abelian_lie_ring(const Ring& base, int rank) {
  std::vector<std::vector<Vec>> b(rank, std::vector<Vec>(rank, Vec(rank, 0)));
  return LieRing(base, rank, std::move(b));
}

// gl_r(A) with bracket [x,y] = xy - yx from the matrix ring.
inline LieRing gl_lie_ring(const FinRing& A, int r) {
  FinRing M = matrix_ring(A, r);
  const int n = M.rank();
  std::vector<std::vector<Vec>> b(n, std::vector<Vec>(n, Vec(n, 0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec ij = M.basis_product(i, j);
      Vec ji = M.basis_product(j, i);
      for (int k = 0; k < n; ++k) b[i][j][k] = M.base().reduce(ij[k] - ji[k]);
    }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(M.label(i));
  return LieRing(M.base(), n, std::move(b), std::move(labels));
}

// Lie ring from explicit generators: bracket on (i, j), i < j, extended by
// antisymmetry; entries given as dense coefficient vectors.
inline LieRing lie_from_upper(const Ring& base, int rank,
                              const std::map<std::pair<int, int>, Vec>& upper,
                              std::vector<std::string> labels = {}) {
  std::vector<std::vector<Vec>> b(rank, std::vector<Vec>(rank, Vec(rank, 0)));
  for (const auto& [ij, v] : upper) {
    auto [i, j] = ij;
    if (i >= j) throw contract_error("lie_from_upper: need i < j");
    b[i][j] = v;
    for (int k = 0; k < rank; ++k) b[j][i][k] = base.reduce(-v[k]);
  }
  return LieRing(base, rank, std::move(b), std::move(labels));
}

}  // namespace prociso

#endif
