#ifndef PROCISO_LAZARD_HPP
#define PROCISO_LAZARD_HPP

#include "prociso/chevalley.hpp"
#include "prociso/group_homology.hpp"
#include "prociso/padic.hpp"
#include "prociso/tower.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace prociso {

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Smallest bracket divisibility exponent under which the Campbell-Hausdorff
// series converges: p odd needs [g,g] in p*g, p = 2 needs [g,g] in 4*g.
inline unsigned ch_required_m(const Int& p) { return p == 2 ? 2u : 1u; }

namespace detail {

// Least J such that w*mm - v_p(w!) >= threshold for every w >= J. Sound via
// v_p(w!) <= (w-1)/(p-1), which makes the envelope eventually increasing.
inline int factorial_series_cap(const Int& p, unsigned mm, unsigned threshold) {
  long pm1 = mpz_get_si(Int(p - 1).get_mpz_t());
  int last_bad = 0;
  for (int w = 1; w <= 400; ++w) {
    long env = static_cast<long>(w) * mm * pm1 - (w - 1);  // (p-1) * lower bound
    if (static_cast<long>(w) * mm - factorial_valuation(w, p) < threshold) last_bad = w;
    if (env >= static_cast<long>(threshold) * pm1 && w > last_bad + 1) return last_bad + 1;
  }
  throw resource_error("factorial_series_cap: no certified truncation order found");
}

}  // namespace detail

// Campbell-Hausdorff multiplication on g / p^precision g for a Lie ring g
// over Z/p^N with [g,g] contained in p^m g (m = 1 for odd p, 2 for p = 2).
// Coefficients come from the associative expansion of log(e^x e^y) through
// the Dynkin-Specht-Wever projection: the weight-w component equals
// (1/w) sum_u c_u [left-nested bracket of u] over associative words u, and a
// bracket application gains p^m, so word u contributes valuation
// v_p(c_u/w) + (w-1)m. An outer truncation weight is certified from the sound
// worst-case bound v_p(c_u) >= -v_p(w!) - floor(log_p w); weights between the
// working truncation and the outer one are verified coefficient by
// coefficient, and every runtime division is checked exactly.
class CHSeries {
 public:
  CHSeries(const LieRing& g, unsigned precision) : g_(g), prec_(precision) {
    if (precision < 1) throw contract_error("CHSeries: precision must be >= 1");
    auto f = factorize(g.base().mod);
    if (f.size() != 1) throw contract_error("CHSeries: base must be Z/p^N");
    p_ = f[0].first;
    if (precision > f[0].second) throw contract_error("CHSeries: precision exceeds the base modulus");
    q_ = pow_int(p_, precision);
    m_ = ch_required_m(p_);
    const int d = g.rank();
    Int pm = pow_int(p_, m_);
    blift_.assign(d, std::vector<Vec>(d, Vec(d, 0)));
    abelian_ = true;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          Int c = g.base().reduce(g.basis_bracket(i, j)[k]);
          if (c % pm != 0)
            throw contract_error("CHSeries: bracket not divisible by " + pm.get_str());
          blift_[i][j][k] = c;
          if (c != 0) abelian_ = false;
        }
    // outer truncation: (w-1)m - v_p(w!) - 2 floor(log_p w) >= precision for
    // all w >= outer (the extra log terms cover v_p(c_u) and the 1/w)
    int last_bad = 1;
    for (int w = 2; w <= 400; ++w) {
      long lg = 0;
      Int pp = p_;
      while (pp <= w) {
        pp *= p_;
        ++lg;
      }
      if (static_cast<long>(w - 1) * m_ - factorial_valuation(w, p_) - 2 * lg <
          static_cast<long>(prec_))
        last_bad = w;
    }
    // beyond the scan the bound grows: the linear term gains at least
    // (p-1)m - 1 > 0 per p-fold increase of w while the logs gain 2
    if (last_bad > 30) throw resource_error("CHSeries: truncation weight out of range");
    const int outer = last_bad + 1;
    auto words = assoc_log_words(outer - 1);
    // working truncation: the last weight whose verified per-word valuations
    // fall short of the precision, plus one
    cap_ = 2;
    for (int w = 2; w < outer; ++w) {
      bool good = true;
      for (const auto& [u, c] : words[w]) {
        long v = static_cast<long>(w - 1) * m_ + rat_valuation(c / w);
        if (v < static_cast<long>(prec_)) good = false;
      }
      if (!good) cap_ = w + 1;
    }
    for (int w = 2; w < cap_; ++w) tables_.push_back(build_weight(w, words[w]));
  }

  const LieRing& lie() const { return g_; }
  unsigned precision() const { return prec_; }
  int weight_cap() const { return cap_; }
  const Int& p() const { return p_; }
  const Int& modulus() const { return q_; }
  unsigned m() const { return m_; }

  // x * y in the Campbell-Hausdorff group; inputs and output are coordinate
  // vectors reduced mod p^precision
  Vec multiply(const Vec& x, const Vec& y) const {
    const int d = g_.rank();
    if (static_cast<int>(x.size()) != d || static_cast<int>(y.size()) != d)
      throw contract_error("CHSeries: coordinate size mismatch");
    Vec X(d), Y(d), out(d);
    for (int k = 0; k < d; ++k) {
      X[k] = g_.base().reduce(x[k]);
      Y[k] = g_.base().reduce(y[k]);
      out[k] = X[k] + Y[k];
    }
    if (!abelian_) {
      for (std::size_t t = 0; t < tables_.size(); ++t) {
        const WeightTable& wt = tables_[t];
        Vec S(d, 0);
        for (const auto& [word, num] : wt.terms) {
          Vec v = eval_word(word, X, Y);
          for (int k = 0; k < d; ++k)
            if (v[k] != 0) S[k] += num * v[k];
        }
        Int pv = pow_int(p_, wt.den_val);
        Int ui = inv_mod(wt.den_unit % q_, q_);
        for (int k = 0; k < d; ++k) {
          if (S[k] == 0) continue;
          if (S[k] % pv != 0)
            throw contract_error("CHSeries: weight " + std::to_string(t + 2) +
                                 " term is not p-integral");
          out[k] += S[k] / pv % q_ * ui;
        }
      }
    }
    for (int k = 0; k < d; ++k) {
      out[k] %= q_;
      if (out[k] < 0) out[k] += q_;
    }
    return out;
  }

  Vec inverse(const Vec& x) const {  // CH inverse is plain negation
    Vec out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      out[k] = (q_ - g_.base().reduce(x[k]) % q_) % q_;
    }
    return out;
  }

 private:
  struct WeightTable {
    // letter word over {0 = x, 1 = y} -> numerator over the common denominator
    std::vector<std::pair<std::vector<int>, Int>> terms;
    unsigned den_val = 0;  // common denominator = p^den_val * den_unit
    Int den_unit = 1;
  };

  static long rat_valuation_part(const Int& n, const Int& p) {
    return n % p == 0 ? static_cast<long>(valuation(n, p)) : 0;
  }

  long rat_valuation(const Rat& c) const {
    if (c == 0) throw contract_error("CHSeries: valuation of zero");
    return rat_valuation_part(c.get_num(), p_) - rat_valuation_part(c.get_den(), p_);
  }

  // associative expansion of log(e^x e^y) by weight, up to weight_max; word
  // letters are 0 = x, 1 = y
  using AssocPoly = std::map<std::vector<int>, Rat>;
  static std::vector<AssocPoly> assoc_log_words(int weight_max) {
    std::vector<AssocPoly> out(std::max(weight_max + 1, 1));
    if (weight_max < 1) return out;
    AssocPoly S;  // e^x e^y - 1, truncated
    for (int r = 0; r <= weight_max; ++r)
      for (int s = 0; r + s <= weight_max; ++s) {
        if (r + s == 0) continue;
        std::vector<int> u(r, 0);
        u.insert(u.end(), s, 1);
        Rat c(1, factorial(r) * factorial(s));
        c.canonicalize();
        S[u] = c;
      }
    AssocPoly pw = S;
    AssocPoly acc;
    for (int n = 1; n <= weight_max; ++n) {
      if (n > 1) {
        AssocPoly next;
        for (const auto& [u, cu] : pw)
          for (const auto& [v, cv] : S) {
            if (u.size() + v.size() > static_cast<std::size_t>(weight_max)) continue;
            std::vector<int> w = u;
            w.insert(w.end(), v.begin(), v.end());
            next[w] += cu * cv;
          }
        pw = std::move(next);
      }
      Rat f(n % 2 == 1 ? 1 : -1, n);
      f.canonicalize();
      for (const auto& [u, c] : pw) acc[u] += f * c;
    }
    for (const auto& [u, c] : acc)
      if (c != 0) out[u.size()][u] = c;
    return out;
  }

  // table for one weight: Dynkin-Specht-Wever coefficients c_u / w over a
  // common denominator
  WeightTable build_weight(int w, const AssocPoly& words) const {
    WeightTable out;
    Int den = 1;
    std::vector<std::pair<std::vector<int>, Rat>> lie;
    for (const auto& [u, c] : words) {
      Rat r = c / w;
      r.canonicalize();
      lie.emplace_back(u, r);
      Int g;
      mpz_lcm(g.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
      den = g;
    }
    for (const auto& [u, r] : lie) out.terms.emplace_back(u, r.get_num() * (den / r.get_den()));
    out.den_val = static_cast<unsigned>(rat_valuation_part(den, p_));
    out.den_unit = den / pow_int(p_, out.den_val);
    return out;
  }

  // left-nested bracket [[...[u_1, u_2], u_3], ...] over the integer lifts
  Vec eval_word(const std::vector<int>& word, const Vec& X, const Vec& Y) const {
    const int d = g_.rank();
    Vec v = word.front() == 0 ? X : Y;
    for (std::size_t t = 1; t < word.size(); ++t) {
      const Vec& a = word[t] == 0 ? X : Y;
      Vec nx(d, 0);
      for (int i = 0; i < d; ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
          if (a[j] == 0) continue;
          const Vec& b = blift_[i][j];
          for (int k = 0; k < d; ++k)
            if (b[k] != 0) nx[k] += v[i] * a[j] * b[k];
        }
      }
      v = std::move(nx);
    }
    return v;
  }

  LieRing g_;
  Int p_, q_;
  unsigned prec_, m_;
  int cap_;
  std::vector<std::vector<Vec>> blift_;
  std::vector<WeightTable> tables_;
  bool abelian_;
};

inline Vec ch_multiply(const LieRing& g, unsigned precision, const Vec& x, const Vec& y) {
  return CHSeries(g, precision).multiply(x, y);
}

// The finite group g / p^i g under Campbell-Hausdorff multiplication; models
// G^{(m)} / G^{(m+i)} for the pro-p group attached to g. Elements (optionally
// exported) are coordinate vectors with entries in [0, p^i).
inline FinGroup level_group(const LieRing& g, unsigned m, unsigned i,
                            std::vector<Vec>* elements_out = nullptr) {
  if (i < 1) throw contract_error("level_group: level must be >= 1");
  CHSeries s(g, i);
  if (m < ch_required_m(s.p()))
    throw contract_error("level_group: m below the convergence threshold");
  Int pm = pow_int(s.p(), m);
  for (int a = 0; a < g.rank(); ++a)
    for (int b = 0; b < g.rank(); ++b)
      for (int k = 0; k < g.rank(); ++k)
        if (g.base().reduce(g.basis_bracket(a, b)[k]) % pm != 0)
          throw contract_error("level_group: bracket not divisible by p^m");
  const int d = g.rank();
  Int order = pow_int(s.p(), i * static_cast<unsigned>(d));
  if (order > FinGroup::kSizeCap) throw resource_error("level_group: group size cap exceeded");
  const long cnt = mpz_get_si(order.get_mpz_t());
  const long pil = mpz_get_si(s.modulus().get_mpz_t());
  std::vector<Vec> elems;
  std::map<Vec, int> index;
  std::vector<long> digits(d, 0);
  for (long c = 0; c < cnt; ++c) {
    Vec x(d);
    for (int t = 0; t < d; ++t) x[t] = digits[t];
    index.emplace(x, static_cast<int>(elems.size()));
    elems.push_back(std::move(x));
    int t = 0;
    while (t < d && ++digits[t] == pil) digits[t++] = 0;
  }
  std::vector<int> gens;
  for (int k = 0; k < d; ++k) {
    Vec v(d, 0);
    v[k] = 1;
    gens.push_back(index.at(v));
  }
  std::vector<std::vector<int>> tab(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) {
      auto it = index.find(s.multiply(elems[a], elems[b]));
      if (it == index.end()) throw contract_error("level_group: product left the coordinate cube");
      tab[a][b] = it->second;
    }
  int id = index.at(Vec(d, 0));
  if (elements_out) *elements_out = elems;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return FinGroup(std::move(tab), id, {}, gens);
}

// Truncated exponential / logarithm between p^m * Mat_r(A_{m+i}) and the
// congruence classes 1 + p^m * Mat_r(A_{m+i}). Series are truncated at a
// certified order: term j carries p-valuation >= j*m - v_p(j!) (exp) or
// j*m - v_p(j) (log), and the first dropped term is verified to vanish.
struct MatExpLog {
  FinRing M;  // Mat_r(A_{m+i})
  Int p, q;   // q = p^{m+i}
  unsigned m = 1, i = 1;
  int exp_terms = 1, log_terms = 1;

  Vec exp(const Vec& x) const {
    std::vector<Int> X = lifts(x, "exp");
    std::vector<Int> acc = lifts(M.unit(), "");
    std::vector<Int> pw = X;
    for (int j = 1; j <= exp_terms; ++j) {
      if (j > 1) pw = raw_product(pw, X);
      unsigned v = factorial_valuation(j, p);
      Int u = factorial(j) / pow_int(p, v);
      add_term(acc, pw, v, inv_mod(u % q, q), 1, j == exp_terms,
               "exp: series truncation certificate fails");
    }
    return reduced(acc);
  }

  Vec log(const Vec& y) const {
    std::vector<Int> U = lifts(y, "");
    std::vector<Int> Z(U.size());
    Int pm = pow_int(p, m);
    for (std::size_t k = 0; k < U.size(); ++k) {
      Z[k] = U[k] - M.unit()[k];
      if (Z[k] % pm != 0) throw contract_error("log: argument not congruent to 1 mod p^m");
    }
    std::vector<Int> acc(U.size(), 0);
    std::vector<Int> pw = Z;
    for (int j = 1; j <= log_terms; ++j) {
      if (j > 1) pw = raw_product(pw, Z);
      unsigned v = Int(j) % p == 0 ? valuation(Int(j), p) : 0;
      Int u = Int(j) / pow_int(p, v);
      add_term(acc, pw, v, inv_mod(u % q, q), j % 2 == 1 ? 1 : -1, j == log_terms,
               "log: series truncation certificate fails");
    }
    return reduced(acc);
  }

 private:
  std::vector<Int> lifts(const Vec& x, const std::string& congruent) const {
    if (static_cast<int>(x.size()) != M.rank()) throw contract_error("MatExpLog: size mismatch");
    std::vector<Int> out(x.size());
    Int pm = pow_int(p, m);
    for (std::size_t k = 0; k < x.size(); ++k) {
      out[k] = M.base().reduce(x[k]);
      if (!congruent.empty() && out[k] % pm != 0)
        throw contract_error(congruent + ": argument not divisible by p^m");
    }
    return out;
  }

  // structure-constant product without reduction, so p-valuations are exact
  std::vector<Int> raw_product(const std::vector<Int>& a, const std::vector<Int>& b) const {
    const int n = M.rank();
    std::vector<Int> out(n, 0);
    for (int i2 = 0; i2 < n; ++i2) {
      if (a[i2] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (b[j] == 0) continue;
        const Vec& mm = M.basis_product(i2, j);
        for (int k = 0; k < n; ++k)
          if (mm[k] != 0) out[k] += a[i2] * b[j] * mm[k];
      }
    }
    return out;
  }

  void add_term(std::vector<Int>& acc, const std::vector<Int>& pw, unsigned v, const Int& uinv,
                int sign, bool verify_only, const std::string& failure) const {
    Int pv = pow_int(p, v);
    for (std::size_t k = 0; k < pw.size(); ++k) {
      if (pw[k] % pv != 0) throw contract_error("MatExpLog: term is not p-integral");
      Int t = pw[k] / pv % q * uinv % q;
      if (t < 0) t += q;
      t %= q;
      if (verify_only) {
        if (t != 0) throw contract_error(failure);
      } else {
        acc[k] += sign * t;
      }
    }
  }

  Vec reduced(const std::vector<Int>& acc) const {
    Vec out(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) {
      out[k] = acc[k] % q;
      if (out[k] < 0) out[k] += q;
    }
    return out;
  }
};

inline MatExpLog mat_exp_log(const PadicAlgebra& A, int r, unsigned m, unsigned i) {
  if (m < ch_required_m(A.p())) throw contract_error("mat_exp_log: m below the convergence threshold");
  if (i < 1 || m + i > A.precision()) throw contract_error("mat_exp_log: level out of range");
  MatExpLog out{matrix_ring(A.truncation(m + i), r), A.p(), pow_int(A.p(), m + i), m, i, 1, 1};
  out.exp_terms = detail::factorial_series_cap(A.p(), m, m + i);
  // least J with j*m - v_p(j) >= m + i for all j >= J; v_p(j) <= log_p(j)
  int last_bad = 0;
  for (int j = 1;; ++j) {
    unsigned vj = Int(j) % A.p() == 0 ? valuation(Int(j), A.p()) : 0;
    if (static_cast<long>(j) * m - vj < static_cast<long>(m + i)) last_bad = j;
    long flog = 0;
    Int pp = A.p();
    while (pp <= j) {
      pp *= A.p();
      ++flog;
    }
    if (static_cast<long>(j) * m - flog >= static_cast<long>(m + i) && j > last_bad) {
      out.log_terms = last_bad + 1;
      break;
    }
    if (j > 400) throw resource_error("mat_exp_log: no certified truncation order found");
  }
  return out;
}

enum class ExpLogDirection { exponential, logarithm };

inline Vec exp_log_matrix(const PadicAlgebra& A, int r, unsigned m, unsigned i,
                          ExpLogDirection dir, const Vec& x) {
  MatExpLog e = mat_exp_log(A, r, m, i);
  return dir == ExpLogDirection::exponential ? e.exp(x) : e.log(x);
}

// Truncated enveloping algebra U(g') / p^i with g' = p^{-m} g, presented on
// PBW monomials of degree <= degree_cap. Straightening is exact (integer
// coefficients), so p-divisibility of exponential terms is visible; any
// coefficient escaping the degree cap must vanish mod p^i and is checked.
class TruncatedEnveloping {
 public:
  using Elem = std::map<std::vector<int>, Int>;

  TruncatedEnveloping(const LieRing& g, unsigned m, unsigned i, int degree_cap)
      : g_(g), m_(m), i_(i), cap_(degree_cap) {
    auto f = factorize(g.base().mod);
    if (f.size() != 1) throw contract_error("TruncatedEnveloping: base must be Z/p^N");
    p_ = f[0].first;
    if (m < ch_required_m(p_))
      throw contract_error("TruncatedEnveloping: m below the convergence threshold");
    q_ = pow_int(p_, i_);
    Int pm = pow_int(p_, m_);
    const int d = g.rank();
    bq_.assign(d, std::vector<Vec>(d, Vec(d, 0)));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int k = 0; k < d; ++k) {
          Int c = g.base().reduce(g.basis_bracket(a, b)[k]);
          if (c % pm != 0)
            throw contract_error("TruncatedEnveloping: bracket not divisible by p^m");
          bq_[a][b][k] = c / pm;  // structure constants of g'
        }
    exp_terms_ = detail::factorial_series_cap(p_, m_, i_);
    if (cap_ < exp_terms_ - 1)
      throw resource_error("TruncatedEnveloping: degree cap below the certified threshold " +
                           std::to_string(exp_terms_ - 1));
  }

  const LieRing& lie() const { return g_; }
  const Int& modulus() const { return q_; }
  int degree_cap() const { return cap_; }
  int series_terms() const { return exp_terms_; }

  Elem one() const { return {{{}, Int(1)}}; }

  Elem multiply(const Elem& a, const Elem& b) const {
    Elem acc;
    for (const auto& [wa, ca] : a)
      for (const auto& [wb, cb] : b) {
        std::vector<int> w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        for (const auto& [mon, c] : nf(w)) absorb(acc, mon, ca * cb * c);
      }
    prune(acc);
    return acc;
  }

  // exp of p^m * x' for x in g coordinates (x' the same vector in g'), with
  // the series truncation and all degree-cap overflows certified
  Elem exp_of(const Vec& x) const {
    const int d = g_.rank();
    if (static_cast<int>(x.size()) != d) throw contract_error("exp_of: size mismatch");
    Int pm = pow_int(p_, m_);
    Elem X;
    for (int k = 0; k < d; ++k) {
      Int c = pm * g_.base().reduce(x[k]);
      if (c != 0) X[{k}] = c;
    }
    Elem acc = one();
    Elem cur = one();
    for (int j = 1; j <= exp_terms_; ++j) {
      cur = raw_multiply(cur, X);
      unsigned v = factorial_valuation(j, p_);
      Int pv = pow_int(p_, v);
      Int uinv = inv_mod(factorial(j) / pv % q_, q_);
      for (const auto& [mon, c] : cur) {
        if (c % pv != 0) throw contract_error("exp_of: term is not p-integral");
        Int t = c / pv % q_ * uinv % q_;
        if (t < 0) t += q_;
        t %= q_;
        if (t == 0) continue;
        if (j == exp_terms_) throw contract_error("exp_of: series truncation certificate fails");
        if (static_cast<int>(mon.size()) > cap_)
          throw resource_error("exp_of: nonzero coefficient beyond the degree cap");
        absorb(acc, mon, t);
      }
    }
    prune(acc);
    return acc;
  }

 private:
  // product without modular reduction (coefficients exact)
  Elem raw_multiply(const Elem& a, const Elem& b) const {
    Elem acc;
    for (const auto& [wa, ca] : a)
      for (const auto& [wb, cb] : b) {
        std::vector<int> w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        for (const auto& [mon, c] : nf(w)) {
          Int t = ca * cb * c;
          if (t != 0) acc[mon] += t;
        }
      }
    for (auto it = acc.begin(); it != acc.end();)
      it = it->second == 0 ? acc.erase(it) : std::next(it);
    return acc;
  }

  void absorb(Elem& acc, const std::vector<int>& mon, const Int& c) const {
    Int t = c % q_;
    if (t < 0) t += q_;
    if (t == 0) return;
    if (static_cast<int>(mon.size()) > cap_)
      throw resource_error("TruncatedEnveloping: nonzero coefficient beyond the degree cap");
    Int& slot = acc[mon];
    slot = (slot + t) % q_;
  }

  void prune(Elem& acc) const {
    for (auto it = acc.begin(); it != acc.end();)
      it = it->second == 0 ? acc.erase(it) : std::next(it);
  }

  // PBW normal form of an arbitrary letter word: exact integer coefficients
  const std::map<std::vector<int>, Int>& nf(const std::vector<int>& w) const {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    std::map<std::vector<int>, Int> out;
    int t = -1;
    for (std::size_t s = 0; s + 1 < w.size(); ++s)
      if (w[s] > w[s + 1]) {
        t = static_cast<int>(s);
        break;
      }
    if (t < 0) {
      out[w] = 1;
    } else {
      std::vector<int> sw = w;
      std::swap(sw[t], sw[t + 1]);
      for (const auto& [mon, c] : nf(sw)) out[mon] += c;
      const Vec& br = bq_[w[t]][w[t + 1]];
      for (int k = 0; k < g_.rank(); ++k) {
        if (br[k] == 0) continue;
        std::vector<int> sub;
        sub.reserve(w.size() - 1);
        sub.insert(sub.end(), w.begin(), w.begin() + t);
        sub.push_back(k);
        sub.insert(sub.end(), w.begin() + t + 2, w.end());
        for (const auto& [mon, c] : nf(sub)) out[mon] += br[k] * c;
      }
      for (auto it2 = out.begin(); it2 != out.end();)
        it2 = it2->second == 0 ? out.erase(it2) : std::next(it2);
    }
    return cache_.emplace(w, std::move(out)).first->second;
  }

  LieRing g_;
  Int p_, q_;
  unsigned m_, i_;
  int cap_;
  int exp_terms_;
  std::vector<std::vector<Vec>> bq_;
  mutable std::map<std::vector<int>, std::map<std::vector<int>, Int>> cache_;
};

// The map eta: G / G^{(i)} -> U(g')/p^i sending a group element (coordinate
// vector of g / p^{i-m} g) to exp of its lift; multiplicativity is the
// Campbell-Hausdorff identity inside the enveloping algebra.
struct EtaMap {
  unsigned m = 1, i = 2;
  FinGroup group;  // G / G^{(i)} = level_group(g, m, i - m)
  std::vector<Vec> elements;
  TruncatedEnveloping env;
  std::vector<TruncatedEnveloping::Elem> images;
};

inline EtaMap eta_map(const LieRing& g, unsigned m, unsigned i, int degree_cap) {
  if (i <= m) throw contract_error("eta_map: need i > m");
  TruncatedEnveloping env(g, m, i, degree_cap);
  std::vector<Vec> elems;
  FinGroup K = level_group(g, m, i - m, &elems);
  std::vector<TruncatedEnveloping::Elem> images;
  images.reserve(elems.size());
  for (const auto& e : elems) images.push_back(env.exp_of(e));
  return EtaMap{m, i, std::move(K), std::move(elems), std::move(env), std::move(images)};
}

// Exponent bound for the integral homology of a p-special group: a group
// filtered K = F_0 > F_1 > ... > F_n = 1 by normal subgroups with elementary
// abelian layers. The exponent of H_a(K, Z) must divide p^binomial(a+n-1, n-1).
struct PSpecialReport {
  Int p;
  int layers = 0;
  std::vector<FGAbelianGroup> homology;  // H_a(K, Z), a = 0..cap
  std::vector<Int> bounds;               // p^binomial(a+n-1, n-1), a >= 1
  bool ok = false;
};

inline PSpecialReport p_special_bound_check(const FinGroup& K,
                                            const std::vector<std::vector<int>>& filtration,
                                            const Int& p, int degree_cap) {
  if (filtration.size() < 2) throw contract_error("p_special_bound_check: filtration too short");
  const int n = static_cast<int>(filtration.size()) - 1;
  if (static_cast<int>(filtration.front().size()) != K.size())
    throw contract_error("p_special_bound_check: filtration must start at the whole group");
  if (filtration.back() != std::vector<int>{K.id()})
    throw contract_error("p_special_bound_check: filtration must end at the identity");
  for (int t = 0; t <= n; ++t) {
    std::vector<int> closed = K.subgroup(filtration[t]);
    std::vector<int> sorted = filtration[t];
    std::sort(sorted.begin(), sorted.end());
    if (closed != sorted) throw contract_error("p_special_bound_check: layer is not a subgroup");
    if (!K.is_normal(sorted)) throw contract_error("p_special_bound_check: layer is not normal");
  }
  for (int t = 0; t < n; ++t) {
    std::set<int> next(filtration[t + 1].begin(), filtration[t + 1].end());
    for (int a : filtration[t]) {
      if (!next.count(K.power(a, p)))
        throw contract_error("p_special_bound_check: p-th powers leave the next layer");
      for (int b : filtration[t]) {
        int comm = K.mul(K.mul(a, b), K.inv(K.mul(b, a)));
        if (!next.count(comm))
          throw contract_error("p_special_bound_check: commutators leave the next layer");
      }
    }
  }
  PSpecialReport out;
  out.p = p;
  out.layers = n;
  out.homology = group_homology_z(K, degree_cap);
  out.ok = true;
  for (int a = 1; a <= degree_cap; ++a) {
    unsigned long e = mpz_get_ui(binomial(a + n - 1, n - 1).get_mpz_t());
    Int bound = pow_int(p, static_cast<unsigned>(e));
    out.bounds.push_back(bound);
    Int ex = out.homology[a].exponent();
    if (ex == 0 || (ex != 1 && bound % ex != 0)) out.ok = false;
  }
  return out;
}

// Mod-p homology of the level groups of g across a window of levels, checked
// against the free graded coalgebra Lambda(h) (x) Gamma(h), h = g/pg: degree-n
// dimension sum_{a+2b=n} binomial(d, a) * binomial(d+b-1, b). Transition maps
// are computed through minimal resolutions; over F_p the small differentials
// vanish, so resolution Betti numbers are the homology dimensions and the
// transfer blocks are the induced maps.
struct LambdaReport {
  Int p;
  int level_start = 1, depth = 1, degree_cap = 1;
  std::vector<int> expected;             // coalgebra dimensions, n = 0..cap
  std::vector<std::vector<int>> dims;    // per level
  bool dims_match = false;
  std::vector<std::vector<int>> step_ranks;    // per consecutive pair, per degree
  std::vector<std::vector<int>> stable_ranks;  // top level -> level t composite, per degree
  bool h1_iso = false;                         // consecutive transitions iso on H_1
};

inline LambdaReport lambda_coalgebra_check(const LieRing& g, unsigned m, int level_start,
                                           int depth, int degree_cap) {
  if (depth < 2) throw contract_error("lambda_coalgebra_check: depth must be >= 2");
  if (level_start < 1) throw contract_error("lambda_coalgebra_check: levels start at 1");
  LambdaReport out;
  out.level_start = level_start;
  out.depth = depth;
  out.degree_cap = degree_cap;
  const int d = g.rank();
  for (int n = 0; n <= degree_cap; ++n) {
    Int e = 0;
    for (int b = 0; 2 * b <= n; ++b) e += binomial(d, n - 2 * b) * binomial(d + b - 1, b);
    out.expected.push_back(static_cast<int>(mpz_get_si(e.get_mpz_t())));
  }
  out.p = factorize(g.base().mod)[0].first;
  std::vector<FinGroup> groups;
  std::vector<std::vector<Vec>> elems(depth);
  std::vector<GroupChains> res;
  for (int t = 0; t < depth; ++t) {
    groups.push_back(level_group(g, m, level_start + t, &elems[t]));
    res.push_back(group_resolution(groups.back(), Ring::zmod(out.p), degree_cap + 1));
    std::vector<int> dims(res.back().betti.begin(), res.back().betti.begin() + degree_cap + 1);
    out.dims.push_back(dims);
  }
  out.dims_match = true;
  for (const auto& dims : out.dims) out.dims_match = out.dims_match && dims == out.expected;
  // coordinate reduction K_{level+1} -> K_level
  auto reduction = [&](int t) {  // t: index of the deeper level (t >= 1)
    Int q = pow_int(out.p, static_cast<unsigned>(level_start + t - 1));
    std::map<Vec, int> index;
    for (std::size_t a = 0; a < elems[t - 1].size(); ++a) index[elems[t - 1][a]] = static_cast<int>(a);
    std::vector<int> pi;
    for (const auto& e : elems[t]) {
      Vec v(e.size());
      for (std::size_t k = 0; k < e.size(); ++k) v[k] = e[k] % q;
      pi.push_back(index.at(v));
    }
    return pi;
  };
  std::vector<std::map<int, IntMatrix>> steps;
  for (int t = 1; t < depth; ++t)
    steps.push_back(resolution_transfer(res[t], res[t - 1], reduction(t)));
  out.h1_iso = true;
  for (int t = 0; t < depth - 1; ++t) {
    std::vector<int> ranks;
    for (int n = 0; n <= degree_cap; ++n) ranks.push_back(rank_mod(steps[t].at(n)));
    out.h1_iso = out.h1_iso && degree_cap >= 1 && ranks[1] == d &&
                 res[t].betti[1] == d && res[t + 1].betti[1] == d;
    out.step_ranks.push_back(std::move(ranks));
  }
  for (int t = 0; t < depth; ++t) {
    std::vector<int> ranks;
    for (int n = 0; n <= degree_cap; ++n) {
      IntMatrix comp = IntMatrix::identity(res[t].betti[n], Ring::zmod(out.p));
      for (int s = t; s < depth - 1; ++s) comp = comp * steps[s].at(n);
      ranks.push_back(rank_mod(comp));
    }
    out.stable_ranks.push_back(std::move(ranks));
  }
  return out;
}

namespace detail {

// Per-level image of the deepest composite transition on H_n, with a settled
// flag: the image no longer moves between the two deepest composites. Only
// settled levels carry pro-object information at finite depth.
struct StableLevels {
  std::vector<FGAbelianGroup> groups;
  std::vector<bool> settled;
};

inline StableLevels stable_level_images(const Tower& T, int n) {
  StableLevels out;
  const int depth = T.depth();
  std::vector<HomologySolver> H;
  for (const auto& L : T.levels) H.push_back(L.solver(n));
  for (int i = 1; i <= depth; ++i) {
    const auto& orders = H[i - 1].summand_orders();
    std::vector<Vec> ordcols;
    for (std::size_t t = 0; t < orders.size(); ++t)
      if (orders[t] != 0) {
        Vec v(orders.size(), 0);
        v[t] = orders[t];
        ordcols.push_back(std::move(v));
      }
    IntMatrix R = IntMatrix::from_columns(static_cast<int>(orders.size()), ordcols, Ring());
    auto image_with_orders = [&](int from) {
      IntMatrix M = T.composite(from, i).induced(H[from - 1], H[i - 1], n).with_base(Ring());
      return M.hstack(R);
    };
    IntMatrix full = image_with_orders(depth);
    bool settled = false;
    if (i < depth) {
      IntMatrix prev = image_with_orders(depth - 1);
      settled = solve_z(full, prev).has_value() && solve_z(prev, full).has_value();
    }
    out.settled.push_back(settled);
    out.groups.push_back(full.cols() == 0 ? FGAbelianGroup() : subquotient_group_z(full, R));
  }
  return out;
}

}  // namespace detail

// Degreewise comparison of the homology pro-systems of the congruence tower
// GL_r(A)^{(m)} / GL_r(A)^{(i)} and of the Lie tower p^m gl_r(A_i), both with
// Z/p^i coefficients at level i. The verdict per degree is numerical: stable
// images at settled levels are compared by mutual exponent divisibility up to
// a p-power multiplier.
struct ComparisonDegree {
  int degree = 0;
  std::vector<FGAbelianGroup> group_stable, lie_stable;
  std::vector<bool> settled;
  IsogenyVerdict verdict;
};

struct ComparisonReport {
  Int p;
  unsigned m = 1;
  int depth = 1, degree_cap = 0;
  std::vector<ComparisonDegree> degrees;

  std::string str() const {
    std::string s;
    for (const auto& d : degrees)
      s += "H_" + std::to_string(d.degree) + ": " + d.verdict.str() + "\n";
    return s;
  }
};

inline ComparisonReport congruence_lie_comparison(const PadicAlgebra& A, int r, unsigned m,
                                                  int depth, int degree_cap) {
  if (depth < 3) throw contract_error("congruence_lie_comparison: depth must be >= 3");
  if (depth > static_cast<int>(A.precision()))
    throw contract_error("congruence_lie_comparison: depth exceeds the precision");
  if (m < ch_required_m(A.p()))
    throw contract_error("congruence_lie_comparison: m below the convergence threshold");
  const Int p = A.p();
  // group side: K_i = GL^{(m)} / GL^{(i)}, resolutions over Z/p^i
  std::vector<FinGroup> groups;
  std::vector<std::vector<Vec>> elems(depth + 1);
  std::vector<GroupChains> res;
  std::vector<ChainComplex> glevels;
  for (int i = 1; i <= depth; ++i) {
    groups.push_back(static_cast<unsigned>(i) <= m
                         ? trivial_group()
                         : congruence_quotient(A, r, m, i - m, &elems[i]));
    res.push_back(group_resolution(groups.back(), Ring::zmod(pow_int(p, static_cast<unsigned>(i))),
                                   degree_cap + 1));
    glevels.push_back(integral_presentation(res.back().complex));
  }
  std::vector<ChainMap> gtrans;
  for (int i = 1; i < depth; ++i) {
    std::vector<int> pi(groups[i].size(), 0);
    if (groups[i - 1].size() > 1) {
      Int q = pow_int(p, static_cast<unsigned>(i));
      std::map<Vec, int> index;
      for (std::size_t a = 0; a < elems[i].size(); ++a) index[elems[i][a]] = static_cast<int>(a);
      for (int x = 0; x < groups[i].size(); ++x) {
        Vec v(elems[i + 1][x].size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = elems[i + 1][x][k] % q;
        pi[x] = index.at(v);
      }
    }
    auto blocks = resolution_transfer(res[i], res[i - 1], pi);
    std::map<int, IntMatrix> zblocks;
    for (auto& [n, b] : blocks) zblocks[n] = b.with_base(Ring());
    gtrans.emplace_back(glevels[i], glevels[i - 1], std::move(zblocks));
  }
  Tower TG(glevels, gtrans);
  // Lie side: Chevalley chains of p^m gl_r(A_i) over Z/p^i, lifted to Z
  std::vector<ChainComplex> llevels;
  Int pm = pow_int(p, m);
  for (int i = 1; i <= depth; ++i) {
    LieRing gl = gl_lie_ring(A.truncation(static_cast<unsigned>(i)), r).scaled_bracket(pm);
    llevels.push_back(integral_presentation(chevalley_complex(gl, degree_cap + 1).complex));
  }
  std::vector<ChainMap> ltrans;
  for (int i = 1; i < depth; ++i) {
    std::map<int, IntMatrix> blocks;
    for (int n = 0; n <= degree_cap + 1; ++n)
      if (llevels[i - 1].rank(n) > 0)
        blocks[n] = IntMatrix::identity(llevels[i - 1].rank(n), Ring());
    ltrans.emplace_back(llevels[i], llevels[i - 1], std::move(blocks));
  }
  Tower TL(llevels, ltrans);

  ComparisonReport out;
  out.p = p;
  out.m = m;
  out.depth = depth;
  out.degree_cap = degree_cap;
  for (int n = 0; n <= degree_cap; ++n) {
    ComparisonDegree deg;
    deg.degree = n;
    detail::StableLevels sg = detail::stable_level_images(TG, n);
    detail::StableLevels sl = detail::stable_level_images(TL, n);
    deg.group_stable = sg.groups;
    deg.lie_stable = sl.groups;
    for (int i = 0; i < depth; ++i) deg.settled.push_back(sg.settled[i] && sl.settled[i]);
    deg.verdict.depth = depth;
    bool any_settled = false, all_trivial = true;
    for (int i = 0; i < depth; ++i) {
      if (!deg.settled[i]) continue;
      any_settled = true;
      all_trivial = all_trivial && sg.groups[i].is_trivial() && sl.groups[i].is_trivial();
    }
    if (!any_settled) {
      deg.verdict.status = IsogenyVerdict::not_detected;
      deg.verdict.note = "no settled level";
    } else if (all_trivial) {
      deg.verdict.status = IsogenyVerdict::pro_zero;
    } else {
      deg.verdict.status = IsogenyVerdict::not_detected;
      deg.verdict.note = "no p-power multiplier matches";
      for (int e = 0; e <= depth + 2; ++e) {
        Int pe = pow_int(p, static_cast<unsigned>(e));
        bool ok = true;
        for (int i = 0; i < depth && ok; ++i) {
          if (!deg.settled[i]) continue;
          Int a = sg.groups[i].exponent(), b = sl.groups[i].exponent();
          if (a == 0 || b == 0)
            ok = a == b;
          else
            ok = (pe * b) % a == 0 && (pe * a) % b == 0;
        }
        if (ok) {
          deg.verdict.status = IsogenyVerdict::isogeny;
          deg.verdict.multiplier = pe;
          deg.verdict.note.clear();
          break;
        }
      }
    }
    out.degrees.push_back(std::move(deg));
  }
  return out;
}

}  // namespace prociso

#endif
