#ifndef PROCISO_HOMOLOGY_HPP
#define PROCISO_HOMOLOGY_HPP

#include "prociso/abelian.hpp"
#include "prociso/local.hpp"
#include "prociso/snf_z.hpp"

#include <optional>

namespace prociso {

// ---------------------------------------------------------------------------
// Smith normal form, public form: U * A * V = D over the base ring.
// ---------------------------------------------------------------------------

struct SNFResult {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  std::vector<Int> pivots;  // diagonal of D
};

namespace detail {

inline IntMatrix mat64_to_int(const Mat64& m, const Ring& base) {
  std::vector<Vec> d;
  d.reserve(m.size());
  for (const auto& row : m) d.emplace_back(row.begin(), row.end());
  return IntMatrix::from_dense(d, base);
}

inline IntMatrix densevec_to_int(const std::vector<Vec>& m, const Ring& base) {
  return IntMatrix::from_dense(m, base);
}

}  // namespace detail

inline SNFResult smith_normal_form(const IntMatrix& A) {
  const Ring& base = A.base();
  SNFResult out;
  if (base.is_integers()) {
    DenseSNF s = snf_z(A, SNF_U | SNF_V);
    out.pivots = s.diag;
    std::vector<Triplet> dts;
    for (int i = 0; i < s.rank; ++i) dts.push_back({i, i, s.diag[i]});
    out.D = IntMatrix::from_triplets(A.rows(), A.cols(), base, dts);
    out.U = detail::densevec_to_int(s.U, base);
    out.V = detail::densevec_to_int(s.V, base);
    return out;
  }
  auto factors = factorize(base.mod);
  if (factors.size() == 1) {
    LocalSNF s = local_snf(A, SNF_U | SNF_V);
    std::vector<Triplet> dts;
    for (int i = 0; i < s.rank; ++i) {
      Int d = pow_int(s.base.p, s.pivots[i]);
      out.pivots.push_back(d);
      dts.push_back({i, i, d});
    }
    out.D = IntMatrix::from_triplets(A.rows(), A.cols(), base, dts);
    out.U = detail::mat64_to_int(s.U, base);
    out.V = detail::mat64_to_int(s.V, base);
    return out;
  }
  // composite modulus: Smith forms over each Z/p^k glued with CRT
  std::vector<std::vector<Vec>> Us, Vs, Ds;
  std::vector<Int> mods;
  for (auto& [p, k] : factors) {
    Int q = pow_int(p, k);
    SNFResult s = smith_normal_form(A.with_base(Ring::zmod(q)));
    Us.push_back(s.U.to_dense());
    Vs.push_back(s.V.to_dense());
    Ds.push_back(s.D.to_dense());
    mods.push_back(q);
  }
  auto glue = [&](const std::vector<std::vector<Vec>>& parts, int r, int c) {
    std::vector<Vec> g(r, Vec(c, 0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        Int x = parts[0][i][j], m = mods[0];
        for (std::size_t f = 1; f < mods.size(); ++f) {
          x = crt_pair(x, m, parts[f][i][j], mods[f]);
          m *= mods[f];
        }
        g[i][j] = x;
      }
    return g;
  };
  out.U = detail::densevec_to_int(glue(Us, A.rows(), A.rows()), base);
  out.V = detail::densevec_to_int(glue(Vs, A.cols(), A.cols()), base);
  out.D = detail::densevec_to_int(glue(Ds, A.rows(), A.cols()), base);
  for (int i = 0; i < std::min(A.rows(), A.cols()); ++i) {
    Int d = out.D.at(i, i);
    if (d != 0) out.pivots.push_back(d);
  }
  return out;
}

// Solve A X = B over the common base (Z, Z/p^k, or composite via CRT).
inline std::optional<IntMatrix> solve_in_base(const IntMatrix& A, const IntMatrix& B) {
  const Ring& base = A.base();
  if (base != B.base()) throw contract_error("solve_in_base: base mismatch");
  if (base.is_integers()) return solve_z(A, B);
  auto factors = factorize(base.mod);
  if (factors.size() == 1) return solve_mod(A, B);
  std::vector<std::vector<Vec>> parts;
  std::vector<Int> mods;
  for (auto& [p, k] : factors) {
    Ring rq = Ring::zmod(pow_int(p, k));
    auto x = solve_mod(A.with_base(rq), B.with_base(rq));
    if (!x) return std::nullopt;
    parts.push_back(x->to_dense());
    mods.push_back(rq.mod);
  }
  std::vector<Vec> glued(A.cols(), Vec(B.cols(), 0));
  for (int i = 0; i < A.cols(); ++i)
    for (int j = 0; j < B.cols(); ++j) {
      Int x = parts[0][i][j], m = mods[0];
      for (std::size_t f = 1; f < mods.size(); ++f) {
        x = crt_pair(x, m, parts[f][i][j], mods[f]);
        m *= mods[f];
      }
      glued[i][j] = x;
    }
  return detail::densevec_to_int(glued, base);
}

// Do all columns of M lie in the column span of W over the base?
inline bool columns_in_span(const IntMatrix& M, const IntMatrix& W) {
  if (M.is_zero()) return true;
  if (W.cols() == 0) return false;
  return solve_in_base(W, M).has_value();
}

// ---------------------------------------------------------------------------
// Subquotient groups
// ---------------------------------------------------------------------------

// Z^rank(ambient) / column span of M, as an abelian group.
inline FGAbelianGroup cokernel_group_z(const IntMatrix& M) {
  DenseSNF s = snf_z(M);
  std::vector<Int> orders;
  for (const auto& d : s.diag) orders.push_back(d);
  FGAbelianGroup g = FGAbelianGroup::from_cyclic_orders(orders);
  g.free_rank += M.rows() - s.rank;
  return g;
}

// P / Q for integer lattices given by generator matrices, Q contained in P.
inline FGAbelianGroup subquotient_group_z(const IntMatrix& P, const IntMatrix& Q) {
  IntMatrix B = column_lattice_basis_z(P);
  if (B.cols() == 0) return FGAbelianGroup();
  if (Q.cols() == 0 || Q.is_zero()) return FGAbelianGroup(B.cols(), {});
  auto X = solve_z(B, Q);
  if (!X) throw contract_error("subquotient_group_z: Q not contained in P");
  return cokernel_group_z(*X);
}

// P / Q for submodules of (Z/p^k)^r given by generator matrices.
inline FGAbelianGroup subquotient_group_mod(const IntMatrix& P, const IntMatrix& Q) {
  LocalSNF s = local_snf(P, SNF_U);
  const LocalBase& B = s.base;
  if (s.rank == 0) return FGAbelianGroup();
  // pseudo-basis b_i = p^{a_i} Uinv e_i with order p^{k - a_i}
  std::vector<Vec> pres;  // columns of the integer presentation of P/Q
  for (int j = 0; j < Q.cols(); ++j) {
    Vec q = Q.column(j);
    Vec y(s.rows, 0);
    for (int i = 0; i < s.rows; ++i) {
      Int acc = 0;
      for (int t = 0; t < s.rows; ++t)
        if (s.U[i][t] != 0 && q[t] != 0) acc += s.U[i][t] * q[t];
      y[i] = B.reduce(acc);
    }
    Vec lam(s.rank, 0);
    for (int i = 0; i < s.rows; ++i) {
      if (i < s.rank) {
        std::int64_t pa = B.ppow(s.pivots[i]);
        std::int64_t yi = mpz_get_si(y[i].get_mpz_t());
        if (yi % pa != 0) throw contract_error("subquotient_group_mod: Q not contained in P");
        lam[i] = yi / pa;
      } else if (y[i] != 0) {
        throw contract_error("subquotient_group_mod: Q not contained in P");
      }
    }
    pres.push_back(std::move(lam));
  }
  for (int i = 0; i < s.rank; ++i) {
    Vec rel(s.rank, 0);
    rel[i] = B.ppow(B.k - s.pivots[i]);
    pres.push_back(std::move(rel));
  }
  IntMatrix presm = IntMatrix::from_columns(s.rank, pres, Ring());
  return cokernel_group_z(presm);
}

// ---------------------------------------------------------------------------
// Homology of (sub)(quotient) complexes
// ---------------------------------------------------------------------------
//
// H = { x in L_n : d_n x in span(W_{n-1}) } / ( d_{n+1} L_{n+1} + span(W_n) ),
// with L (sub-lattice) and W (relations) optional. Over Z/m the computation
// dispatches on the prime factorization; over a residue field only ranks are
// needed.

struct SubquotientSpec {
  std::optional<IntMatrix> L_n;    // generators of the allowed sub-lattice in degree n
  std::optional<IntMatrix> L_np1;  // same in degree n+1 (defaults to everything)
  std::optional<IntMatrix> W_n;    // relation generators in degree n
  std::optional<IntMatrix> W_nm1;  // relation generators in degree n-1
};

namespace detail {

inline FGAbelianGroup homology_field(const IntMatrix& dn, const IntMatrix& dn1,
                                     const SubquotientSpec& sq, std::int64_t p) {
  // dimensions only: H is an F_p-vector space
  const Ring base = dn.base();
  if (p == 2) {
    BitMatrix Dn = BitMatrix::from_int_matrix(dn);
    int dimP;
    if (sq.L_n) {
      BitMatrix B = BitMatrix::from_int_matrix(*sq.L_n);
      BitMatrix T = Dn * B;
      // cycles inside L: { y : (dn B) y in span W_{n-1} }
      std::vector<Triplet> ts;
      for (int i = 0; i < T.rows(); ++i)
        for (int j = 0; j < T.cols(); ++j)
          if (T.get(i, j)) ts.push_back({i, j, 1});
      IntMatrix TB = IntMatrix::from_triplets(T.rows(), T.cols(), base, ts);
      IntMatrix Y = sq.W_nm1 ? preimage_mod(TB, *sq.W_nm1) : kernel_mod(TB);
      dimP = (B * BitMatrix::from_int_matrix(Y)).rank();
    } else if (sq.W_nm1) {
      dimP = BitMatrix::from_int_matrix(preimage_mod(dn, *sq.W_nm1)).rank();
    } else {
      dimP = dn.cols() - Dn.rank();
    }
    // boundaries
    int dimQ = 0;
    {
      BitMatrix Dn1 = BitMatrix::from_int_matrix(dn1);
      BitMatrix Qg = sq.L_np1 ? Dn1 * BitMatrix::from_int_matrix(*sq.L_np1) : Dn1;
      if (sq.W_n) {
        BitMatrix Wn = BitMatrix::from_int_matrix(*sq.W_n);
        BitMatrix both(Qg.rows(), Qg.cols() + Wn.cols());
        for (int i = 0; i < Qg.rows(); ++i) {
          for (int j = 0; j < Qg.cols(); ++j)
            if (Qg.get(i, j)) both.flip(i, j);
          for (int j = 0; j < Wn.cols(); ++j)
            if (Wn.get(i, j)) both.flip(i, Qg.cols() + j);
        }
        dimQ = both.rank();
      } else {
        dimQ = Qg.rank();
      }
    }
    int dim = dimP - dimQ;
    if (dim < 0) throw contract_error("homology_field: negative dimension (boundaries not inside cycles)");
    std::vector<Int> orders(dim, Int(2));
    return FGAbelianGroup::from_cyclic_orders(orders);
  }
  // odd p: int64 dense ranks
  IntMatrix Pg(0, 0);
  int dimP;
  if (sq.L_n) {
    IntMatrix T = dn * (*sq.L_n);
    IntMatrix Y = sq.W_nm1 ? preimage_mod(T, *sq.W_nm1) : kernel_mod(T);
    Pg = (*sq.L_n) * Y;
    dimP = rank_mod(Pg);
  } else if (sq.W_nm1) {
    Pg = preimage_mod(dn, *sq.W_nm1);
    dimP = rank_mod(Pg);
  } else {
    dimP = dn.cols() - rank_mod(dn);
  }
  IntMatrix Qg = sq.L_np1 ? dn1 * (*sq.L_np1) : dn1;
  if (sq.W_n) Qg = Qg.hstack(*sq.W_n);
  int dimQ = rank_mod(Qg);
  int dim = dimP - dimQ;
  if (dim < 0) throw contract_error("homology_field: negative dimension (boundaries not inside cycles)");
  std::vector<Int> orders(dim, Int(p));
  return FGAbelianGroup::from_cyclic_orders(orders);
}

inline FGAbelianGroup homology_local(const IntMatrix& dn, const IntMatrix& dn1,
                                     const SubquotientSpec& sq) {
  LocalBase B = LocalBase::from_ring(dn.base());
  if (B.k == 1) return homology_field(dn, dn1, sq, B.pi);
  IntMatrix Pg(0, 0);
  if (sq.L_n) {
    IntMatrix T = dn * (*sq.L_n);
    IntMatrix Y = sq.W_nm1 ? preimage_mod(T, *sq.W_nm1) : kernel_mod(T);
    Pg = (*sq.L_n) * Y;
  } else {
    Pg = sq.W_nm1 ? preimage_mod(dn, *sq.W_nm1) : kernel_mod(dn);
  }
  IntMatrix Qg = sq.L_np1 ? dn1 * (*sq.L_np1) : dn1;
  if (sq.W_n) Qg = Qg.hstack(*sq.W_n);
  return subquotient_group_mod(Pg, Qg);
}

inline FGAbelianGroup homology_z(const IntMatrix& dn, const IntMatrix& dn1,
                                 const SubquotientSpec& sq) {
  IntMatrix Pg(0, 0);
  if (sq.L_n) {
    IntMatrix T = dn * (*sq.L_n);
    IntMatrix Y = sq.W_nm1 ? preimage_lattice_z(T, *sq.W_nm1) : kernel_z(T);
    Pg = (*sq.L_n) * Y;
  } else {
    Pg = sq.W_nm1 ? preimage_lattice_z(dn, *sq.W_nm1) : kernel_z(dn);
  }
  IntMatrix Qg = dn1;
  if (sq.L_np1) Qg = dn1 * (*sq.L_np1);
  if (sq.W_n) Qg = Qg.hstack(*sq.W_n);
  return subquotient_group_z(Pg, Qg);
}

}  // namespace detail

// Homology of a (sub/quotient of a) complex of free modules at one degree.
inline FGAbelianGroup homology_general(const IntMatrix& dn, const IntMatrix& dn1,
                                       const SubquotientSpec& sq = {}) {
  const Ring& base = dn.base();
  if (base.is_integers()) return detail::homology_z(dn, dn1, sq);
  auto factors = factorize(base.mod);
  if (factors.size() == 1) return detail::homology_local(dn, dn1, sq);
  // composite: the ring splits, homology is the direct sum over prime powers
  FGAbelianGroup acc;
  for (auto& [p, k] : factors) {
    Ring rq = Ring::zmod(pow_int(p, k));
    SubquotientSpec sq2;
    if (sq.L_n) sq2.L_n = sq.L_n->with_base(rq);
    if (sq.L_np1) sq2.L_np1 = sq.L_np1->with_base(rq);
    if (sq.W_n) sq2.W_n = sq.W_n->with_base(rq);
    if (sq.W_nm1) sq2.W_nm1 = sq.W_nm1->with_base(rq);
    acc = acc.direct_sum(homology_general(dn.with_base(rq), dn1.with_base(rq), sq2));
  }
  return acc;
}

// H_n = ker d_n / im d_{n+1}; validates composability and d o d = 0.
inline FGAbelianGroup homology_at(const IntMatrix& dn, const IntMatrix& dn1) {
  if (dn.base() != dn1.base()) throw contract_error("homology_at: base ring mismatch");
  if (dn.cols() != dn1.rows()) throw contract_error("homology_at: incompatible shapes");
  IntMatrix comp = dn * dn1;
  if (!comp.is_zero()) {
    const auto& w = comp.entries().front();
    throw contract_error("homology_at: d o d != 0, witness entry (" + std::to_string(w.row) + ", " +
                         std::to_string(w.col) + ") = " + w.val.get_str());
  }
  return homology_general(dn, dn1);
}

// ---------------------------------------------------------------------------
// Homology with generators: supports induced maps on homology.
// ---------------------------------------------------------------------------

// Presents H in invariant-factor coordinates and can express any cycle in
// them. Bases Z and Z/p^k (not composite).
class HomologySolver {
 public:
  HomologySolver(const IntMatrix& dn, const IntMatrix& dn1, const SubquotientSpec& sq = {})
      : base_(dn.base()), ambient_(dn.cols()) {
    if (!base_.is_integers() && factorize(base_.mod).size() != 1)
      throw contract_error("HomologySolver: composite modulus not supported");
    // cycle lattice generators
    IntMatrix Pg(0, 0);
    if (sq.L_n) {
      IntMatrix T = dn * (*sq.L_n);
      IntMatrix Y = base_.is_integers()
                        ? (sq.W_nm1 ? preimage_lattice_z(T, *sq.W_nm1) : kernel_z(T))
                        : (sq.W_nm1 ? preimage_mod(T, *sq.W_nm1) : kernel_mod(T));
      Pg = (*sq.L_n) * Y;
    } else if (base_.is_integers()) {
      Pg = sq.W_nm1 ? preimage_lattice_z(dn, *sq.W_nm1) : kernel_z(dn);
    } else {
      Pg = sq.W_nm1 ? preimage_mod(dn, *sq.W_nm1) : kernel_mod(dn);
    }
    IntMatrix Qg = sq.L_np1 ? dn1 * (*sq.L_np1) : dn1;
    if (sq.W_n) Qg = Qg.hstack(*sq.W_n);

    if (base_.is_integers())
      init_z(Pg, Qg);
    else
      init_local(Pg, Qg);
  }

  const FGAbelianGroup& group() const { return group_; }

  // invariant factors incl. 0 entries for free summands, aligned with coords()
  const std::vector<Int>& summand_orders() const { return orders_; }
  int num_summands() const { return static_cast<int>(orders_.size()); }

  // chain representative of the i-th summand generator
  const Vec& generator(int i) const { return gens_[i]; }

  // coordinates of a cycle in the summand presentation
  Vec coords(const Vec& cycle) const {
    Vec lam = pseudo_coords(cycle);
    Vec z(orders_.size(), 0);
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      Int acc = 0;
      for (std::size_t j = 0; j < lam.size(); ++j)
        if (U2_[keep_[i]][j] != 0 && lam[j] != 0) acc += U2_[keep_[i]][j] * lam[j];
      if (orders_[i] != 0) {
        acc %= orders_[i];
        if (acc < 0) acc += orders_[i];
      }
      z[i] = acc;
    }
    return z;
  }

  bool is_zero_class(const Vec& cycle) const {
    for (const auto& c : coords(cycle))
      if (c != 0) return false;
    return true;
  }

  int ambient_rank() const { return ambient_; }

 private:
  void init_z(const IntMatrix& Pg, const IntMatrix& Qg) {
    Pbasis_ = column_lattice_basis_z(Pg);
    const int k = Pbasis_.cols();
    IntMatrix X(k, 0, Ring());
    if (k > 0 && Qg.cols() > 0 && !Qg.is_zero()) {
      auto sol = solve_z(Pbasis_, Qg);
      if (!sol) throw contract_error("HomologySolver: boundaries not inside cycles");
      X = *sol;
    }
    DenseSNF s = snf_z(X, SNF_U | SNF_UINV);
    finish(s.U, s.diag, k);
    // generators: Pbasis * Uinv e_i
    gens_.clear();
    for (int idx : keep_) {
      Vec col(k, 0);
      for (int r = 0; r < k; ++r) col[r] = s.Uinv[r][idx];
      Vec g(ambient_, 0);
      for (const auto& t : Pbasis_.entries()) g[t.row] += t.val * col[t.col];
      gens_.push_back(std::move(g));
    }
  }

  void init_local(const IntMatrix& Pg, const IntMatrix& Qg) {
    lb_ = LocalBase::from_ring(base_);
    LocalSNF s = local_snf(Pg, SNF_U | SNF_UINV);
    ls_ = s;
    const int k = s.rank;
    // presentation over Z: columns = Q in pseudo-coords, then order relations
    std::vector<Vec> pres;
    for (int j = 0; j < Qg.cols(); ++j) pres.push_back(pseudo_coords_local(Qg.column(j)));
    for (int i = 0; i < k; ++i) {
      Vec rel(k, 0);
      rel[i] = lb_.ppow(lb_.k - s.pivots[i]);
      pres.push_back(std::move(rel));
    }
    IntMatrix X = IntMatrix::from_columns(k, pres, Ring());
    DenseSNF sz = snf_z(X, SNF_U | SNF_UINV);
    finish(sz.U, sz.diag, k);
    gens_.clear();
    for (int idx : keep_) {
      Vec g(ambient_, 0);
      for (int r = 0; r < ambient_; ++r) {
        Int acc = 0;
        for (int i = 0; i < k; ++i) {
          // b_i = p^{a_i} Uinv e_i
          Int bi = Int(ls_.Uinv[r][i]) * lb_.ppow(ls_.pivots[i]);
          acc += sz.Uinv[i][idx] * bi;
        }
        g[r] = base_.reduce(acc);
      }
      gens_.push_back(std::move(g));
    }
  }

  void finish(const std::vector<Vec>& U2, const std::vector<Int>& diag, int k) {
    U2_ = U2;
    orders_.clear();
    keep_.clear();
    std::vector<Int> cyclic;
    for (int i = 0; i < k; ++i) {
      Int d = i < static_cast<int>(diag.size()) ? diag[i] : Int(0);
      if (d == 1) continue;  // trivial summand
      keep_.push_back(i);
      orders_.push_back(d);
      cyclic.push_back(d);
    }
    group_ = FGAbelianGroup::from_cyclic_orders(cyclic);
  }

  Vec pseudo_coords_local(const Vec& x) const {
    Vec y(ls_.rows, 0);
    for (int i = 0; i < ls_.rows; ++i) {
      Int acc = 0;
      for (int t = 0; t < ls_.rows; ++t)
        if (ls_.U[i][t] != 0 && x[t] != 0) acc += ls_.U[i][t] * x[t];
      y[i] = base_.reduce(acc);
    }
    Vec lam(ls_.rank, 0);
    for (int i = 0; i < ls_.rows; ++i) {
      if (i < ls_.rank) {
        std::int64_t pa = lb_.ppow(ls_.pivots[i]);
        std::int64_t yi = mpz_get_si(y[i].get_mpz_t());
        if (yi % pa != 0) throw contract_error("HomologySolver: vector not in cycle module");
        lam[i] = yi / pa;
      } else if (y[i] != 0) {
        throw contract_error("HomologySolver: vector not in cycle module");
      }
    }
    return lam;
  }

  Vec pseudo_coords(const Vec& x) const {
    if (!base_.is_integers()) return pseudo_coords_local(x);
    auto sol = solve_z(Pbasis_, IntMatrix::from_columns(ambient_, {x}, Ring()));
    if (!sol) throw contract_error("HomologySolver: vector is not a cycle");
    return sol->column(0);
  }

  Ring base_;
  int ambient_;
  FGAbelianGroup group_;
  std::vector<Int> orders_;  // one per kept summand (0 = free)
  std::vector<int> keep_;    // indices into the presentation coordinates
  std::vector<Vec> U2_;      // integer presentation transform
  std::vector<Vec> gens_;
  // Z path
  IntMatrix Pbasis_;
  // local path
  LocalBase lb_;
  LocalSNF ls_;
};

// ---------------------------------------------------------------------------
// Maps of finitely presented abelian groups (in invariant-factor coordinates)
// ---------------------------------------------------------------------------

// Matrix of the map induced on homology by the chain map f (degree n block).
inline IntMatrix induced_on_homology(const HomologySolver& src, const HomologySolver& dst,
                                     const IntMatrix& f) {
  std::vector<Vec> cols;
  for (int i = 0; i < src.num_summands(); ++i) {
    Vec img = f.apply(src.generator(i));
    cols.push_back(dst.coords(img));
  }
  return IntMatrix::from_columns(dst.num_summands(), cols, Ring());
}

// Kernel of a map M : (+) Z/a_i -> (+) Z/b_j (order 0 encodes Z).
inline FGAbelianGroup abelian_map_kernel(const IntMatrix& M, const std::vector<Int>& src_orders,
                                         const std::vector<Int>& dst_orders) {
  std::vector<Vec> relcols;
  for (std::size_t j = 0; j < dst_orders.size(); ++j)
    if (dst_orders[j] != 0) {
      Vec v(dst_orders.size(), 0);
      v[j] = dst_orders[j];
      relcols.push_back(std::move(v));
    }
  IntMatrix R = IntMatrix::from_columns(static_cast<int>(dst_orders.size()), relcols, Ring());
  IntMatrix K = preimage_lattice_z(M, R);
  std::vector<Vec> srel;
  for (std::size_t i = 0; i < src_orders.size(); ++i)
    if (src_orders[i] != 0) {
      Vec v(src_orders.size(), 0);
      v[i] = src_orders[i];
      srel.push_back(std::move(v));
    }
  IntMatrix S = IntMatrix::from_columns(static_cast<int>(src_orders.size()), srel, Ring());
  return subquotient_group_z(K, S);
}

inline FGAbelianGroup abelian_map_cokernel(const IntMatrix& M, const std::vector<Int>& dst_orders) {
  std::vector<Vec> cols;
  for (int j = 0; j < M.cols(); ++j) cols.push_back(M.column(j));
  for (std::size_t j = 0; j < dst_orders.size(); ++j)
    if (dst_orders[j] != 0) {
      Vec v(dst_orders.size(), 0);
      v[j] = dst_orders[j];
      cols.push_back(std::move(v));
    }
  IntMatrix A = IntMatrix::from_columns(static_cast<int>(dst_orders.size()), cols, Ring());
  return cokernel_group_z(A);
}

}  // namespace prociso

#endif
