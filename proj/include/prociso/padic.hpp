#ifndef PROCISO_PADIC_HPP
#define PROCISO_PADIC_HPP

#include "prociso/fin_group.hpp"
#include "prociso/fin_ring.hpp"
#include "prociso/local.hpp"

namespace prociso {

// p-adic algebra at fixed precision: a free Z/p^N-algebra together with a
// designated two-sided ideal. A_i = A/p^i is available for every i <= N.
class PadicAlgebra {
 public:
  PadicAlgebra(Int p, unsigned precision, FinRing top, std::vector<Vec> ideal)
      : p_(std::move(p)), N_(precision), top_(std::move(top)), ideal_(std::move(ideal)) {
    validate();
  }

  const Int& p() const { return p_; }
  unsigned precision() const { return N_; }
  int rank() const { return top_.rank(); }
  const FinRing& top() const { return top_; }
  const std::vector<Vec>& ideal() const { return ideal_; }

  // A_i = A/p^i
  FinRing truncation(unsigned i) const {
    if (i < 1 || i > N_) throw contract_error("PadicAlgebra: truncation level out of range");
    Ring base = Ring::zmod(pow_int(p_, i));
    const int d = rank();
    std::vector<std::vector<Vec>> mult(d, std::vector<Vec>(d, Vec(d, 0)));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int k = 0; k < d; ++k) mult[a][b][k] = base.reduce(top_.basis_product(a, b)[k]);
    Vec unit(d, 0);
    for (int k = 0; k < d; ++k) unit[k] = base.reduce(top_.unit()[k]);
    return FinRing(base, d, std::move(mult), std::move(unit));
  }

 private:
  void validate() const {
    auto f = factorize(top_.base().mod);
    if (f.size() != 1 || f[0].first != p_ || f[0].second != N_)
      throw contract_error("PadicAlgebra: base must be Z/p^precision");
    // each truncation must itself satisfy the ring laws
    for (unsigned i = 1; i <= N_; ++i) truncation(i);
    // ideal closed under both multiplications
    if (!ideal_.empty()) {
      IntMatrix I = IntMatrix::from_columns(rank(), ideal_, top_.base());
      for (const auto& v : ideal_)
        for (int i = 0; i < rank(); ++i) {
          IntMatrix l = IntMatrix::from_columns(rank(), {top_.multiply(top_.basis(i), v)}, top_.base());
          IntMatrix r = IntMatrix::from_columns(rank(), {top_.multiply(v, top_.basis(i))}, top_.base());
          if (!solve_mod(I, l) || !solve_mod(I, r))
            throw contract_error("PadicAlgebra: ideal not closed under multiplication");
        }
    }
  }

  Int p_;
  unsigned N_;
  FinRing top_;
  std::vector<Vec> ideal_;
};

// A = Z_p at precision N, with I = (p).
inline PadicAlgebra zp_algebra(const Int& p, unsigned N) {
  Ring base = Ring::zmod(pow_int(p, N));
  FinRing top(base, 1, {{Vec{1}}}, Vec{1});
  return PadicAlgebra(p, N, std::move(top), {Vec{p}});
}

// GL_r(A)^{(m)} / GL_r(A)^{(m+i)}, realized as the matrices congruent to 1
// mod p^m inside Mat_r(A_{m+i}). Elements are coefficient vectors in the
// matrix ring over A_{m+i}.
inline FinGroup congruence_quotient(const PadicAlgebra& A, int r, unsigned m, unsigned i,
                                    std::vector<Vec>* elements_out = nullptr) {
  if (m < 1 || i < 1 || m + i > A.precision())
    throw contract_error("congruence_quotient: level out of range");
  const int d = A.rank();
  FinRing M = matrix_ring(A.truncation(m + i), r);
  const int n = M.rank();  // r^2 d
  Int order = pow_int(A.p(), i * static_cast<unsigned>(n));
  if (order > FinGroup::kSizeCap) throw resource_error("congruence_quotient: group size cap exceeded");
  const long cnt = mpz_get_si(order.get_mpz_t());
  Int pm = pow_int(A.p(), m), pi = pow_int(A.p(), i);
  const long pil = mpz_get_si(pi.get_mpz_t());
  // enumerate 1 + p^m X, X coefficients in [0, p^i)
  std::vector<Vec> elems;
  std::map<Vec, int> index;
  std::vector<long> digits(n, 0);
  for (long c = 0; c < cnt; ++c) {
    Vec x(M.unit());
    for (int t = 0; t < n; ++t) x[t] = M.base().reduce(x[t] + pm * digits[t]);
    index.emplace(x, static_cast<int>(elems.size()));
    elems.push_back(std::move(x));
    int t = 0;
    while (t < n && ++digits[t] == pil) digits[t++] = 0;
  }
  std::vector<std::vector<int>> tab(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) {
      auto it = index.find(M.multiply(elems[a], elems[b]));
      if (it == index.end())
        throw contract_error("congruence_quotient: product left the congruence class");
      tab[a][b] = it->second;
    }
  int id = index.at(M.unit());
  if (elements_out) *elements_out = elems;
  return FinGroup(std::move(tab), id);
}

}  // namespace prociso

#endif
