#ifndef PROCISO_FIN_RING_HPP
#define PROCISO_FIN_RING_HPP

#include "prociso/matrix.hpp"

#include <map>
#include <string>

namespace prociso {

// Finite associative unital ring, free of finite rank over Z/m, presented by
// structure constants e_i e_j = sum_k mult[i][j][k] e_k.
class FinRing {
 public:
  FinRing(Ring base, int rank, std::vector<std::vector<Vec>> mult, Vec unit,
          std::vector<std::string> labels = {})
      : base_(std::move(base)),
        rank_(rank),
        mult_(std::move(mult)),
        unit_(std::move(unit)),
        labels_(std::move(labels)) {
    validate();
  }

  const Ring& base() const { return base_; }
  int rank() const { return rank_; }
  const Vec& unit() const { return unit_; }
  const std::string& label(int i) const {
    static const std::string none;
    return labels_.empty() ? none : labels_[i];
  }

  // product of basis elements as a coefficient vector
  const Vec& basis_product(int i, int j) const { return mult_[i][j]; }

  Vec multiply(const Vec& x, const Vec& y) const {
    Vec out(rank_, 0);
    for (int i = 0; i < rank_; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < rank_; ++j) {
        if (y[j] == 0) continue;
        const Vec& m = mult_[i][j];
        for (int k = 0; k < rank_; ++k)
          if (m[k] != 0) out[k] += x[i] * y[j] * m[k];
      }
    }
    for (auto& v : out) v = base_.reduce(v);
    return out;
  }

  Vec add(const Vec& x, const Vec& y) const {
    Vec out(rank_, 0);
    for (int i = 0; i < rank_; ++i) out[i] = base_.reduce(x[i] + y[i]);
    return out;
  }

  Vec scale(const Int& c, const Vec& x) const {
    Vec out(rank_, 0);
    for (int i = 0; i < rank_; ++i) out[i] = base_.reduce(c * x[i]);
    return out;
  }

  Vec zero() const { return Vec(rank_, 0); }

  Vec basis(int i) const {
    Vec v(rank_, 0);
    v[i] = 1;
    return v;
  }

  // number of elements (base mod ^ rank)
  Int size() const { return pow_int(base_.mod, static_cast<unsigned>(rank_)); }

  std::string str() const { return base_.str() + "-algebra of rank " + std::to_string(rank_); }

 private:
  void validate() const {
    if (rank_ <= 0) throw contract_error("FinRing: rank must be positive");
    if (base_.is_integers()) throw contract_error("FinRing: base must be finite");
    if (static_cast<int>(mult_.size()) != rank_) throw contract_error("FinRing: mult shape");
    for (const auto& row : mult_) {
      if (static_cast<int>(row.size()) != rank_) throw contract_error("FinRing: mult shape");
      for (const auto& v : row)
        if (static_cast<int>(v.size()) != rank_) throw contract_error("FinRing: mult shape");
    }
    if (static_cast<int>(unit_.size()) != rank_) throw contract_error("FinRing: unit shape");
    // two-sided unit on basis
    for (int i = 0; i < rank_; ++i) {
      if (multiply(unit_, basis(i)) != reduced(basis(i)))
        throw contract_error("FinRing: left unit law fails on basis " + std::to_string(i));
      if (multiply(basis(i), unit_) != reduced(basis(i)))
        throw contract_error("FinRing: right unit law fails on basis " + std::to_string(i));
    }
    // associativity on all basis triples
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        for (int k = 0; k < rank_; ++k)
          if (multiply(mult_[i][j], basis(k)) != multiply(basis(i), mult_[j][k]))
            throw contract_error("FinRing: associativity fails on basis triple (" +
                                 std::to_string(i) + ", " + std::to_string(j) + ", " +
                                 std::to_string(k) + ")");
  }

  Vec reduced(Vec v) const {
    for (auto& x : v) x = base_.reduce(x);
    return v;
  }

  Ring base_;
  int rank_;
  std::vector<std::vector<Vec>> mult_;
  Vec unit_;
  std::vector<std::string> labels_;
};

// Z/m as a rank-1 ring over itself.
inline FinRing cyclic_ring(const Int& m) {
  Ring base = Ring::zmod(m);
  return FinRing(base, 1, {{Vec{1}}}, Vec{1}, {"1"});
}

// k[x]/(x^2) over Z/m (dual numbers for the F_2[e] test ring).
inline FinRing dual_numbers(const Int& m) {
  Ring base = Ring::zmod(m);
  std::vector<std::vector<Vec>> mult(2, std::vector<Vec>(2, Vec(2, 0)));
  mult[0][0] = Vec{1, 0};
  mult[0][1] = Vec{0, 1};
  mult[1][0] = Vec{0, 1};
  mult[1][1] = Vec{0, 0};
  return FinRing(base, 2, std::move(mult), Vec{1, 0}, {"1", "e"});
}

// Mat_r(A): basis E_{ab} (x) e_i in lexicographic (a, b, i) order.
inline FinRing matrix_ring(const FinRing& A, int r) {
  if (r < 1) throw contract_error("matrix_ring: r must be >= 1");
  const int d = A.rank();
  const int n = r * r * d;
  auto idx = [&](int a, int b, int i) { return (a * r + b) * d + i; };
  std::vector<std::vector<Vec>> mult(n, std::vector<Vec>(n, Vec(n, 0)));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int i = 0; i < A.rank(); ++i)
        for (int c = 0; c < r; ++c)
          for (int e = 0; e < r; ++e)
            for (int j = 0; j < A.rank(); ++j) {
              if (b != c) continue;  // E_ab E_ce = [b=c] E_ae
              const Vec& p = A.basis_product(i, j);
              for (int k = 0; k < A.rank(); ++k)
                if (p[k] != 0) mult[idx(a, b, i)][idx(c, e, j)][idx(a, e, k)] = p[k];
            }
  Vec unit(n, 0);
  for (int a = 0; a < r; ++a)
    for (int k = 0; k < A.rank(); ++k) unit[idx(a, a, k)] = A.unit()[k];
  std::vector<std::string> labels;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int i = 0; i < A.rank(); ++i)
        labels.push_back("E" + std::to_string(a + 1) + std::to_string(b + 1) +
                         (A.rank() > 1 ? "*" + std::to_string(i) : ""));
  return FinRing(A.base(), n, std::move(mult), std::move(unit), std::move(labels));
}

// trace of an element of matrix_ring(A, r), as an element of A
inline Vec matrix_trace(const FinRing& A, int r, const Vec& x) {
  Vec tr(A.rank(), 0);
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < A.rank(); ++i) tr[i] = A.base().reduce(tr[i] + x[(a * r + a) * A.rank() + i]);
  return tr;
}

}  // namespace prociso

#endif
