#ifndef PROCISO_TOWER_HPP
#define PROCISO_TOWER_HPP

#include "prociso/chain_complex.hpp"

#include <algorithm>
#include <set>

namespace prociso {

// Sequential pro-object: levels 1..depth (vector index 0-based), transitions
// going down, transitions[i]: level i+2 -> level i+1.
struct Tower {
  std::vector<ChainComplex> levels;
  std::vector<ChainMap> transitions;

  Tower() = default;
  Tower(std::vector<ChainComplex> ls, std::vector<ChainMap> ts)
      : levels(std::move(ls)), transitions(std::move(ts)) {
    if (levels.size() < 1) throw contract_error("Tower: empty");
    if (transitions.size() + 1 != levels.size())
      throw contract_error("Tower: transition count mismatch");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      if (!(transitions[i].source() == levels[i + 1]) || !(transitions[i].target() == levels[i]))
        throw contract_error("Tower: transition endpoints mismatch at level " + std::to_string(i + 1));
    }
  }

  int depth() const { return static_cast<int>(levels.size()); }

  // composite transition: level j -> level i (1-based), identity when j == i
  ChainMap composite(int j, int i) const {
    if (j < i || i < 1 || j > depth()) throw contract_error("Tower: bad composite range");
    ChainMap m = ChainMap::identity(levels[i - 1]);
    for (int t = i; t < j; ++t) m = m.compose(transitions[t - 1]);
    return m;
  }
};

// Levelwise map of towers; squares with the transitions commute exactly.
struct TowerMap {
  Tower source, target;
  std::vector<ChainMap> components;  // components[i]: source level i+1 -> target level i+1

  TowerMap() = default;
  TowerMap(Tower src, Tower dst, std::vector<ChainMap> comps)
      : source(std::move(src)), target(std::move(dst)), components(std::move(comps)) {
    if (source.depth() != target.depth()) throw contract_error("TowerMap: depth mismatch");
    if (static_cast<int>(components.size()) != source.depth())
      throw contract_error("TowerMap: component count mismatch");
    for (int i = 0; i + 1 < source.depth(); ++i) {
      ChainMap a = components[i].compose(source.transitions[i]);
      ChainMap b = target.transitions[i].compose(components[i + 1]);
      int lo = std::min(a.source().min_degree(), a.target().min_degree());
      int hi = std::max(a.source().max_degree(), a.target().max_degree());
      for (int n = lo; n <= hi; ++n)
        if (!columns_in_span(a.block(n) - b.block(n), a.target().relations(n)))
          throw contract_error("TowerMap: square does not commute at level " + std::to_string(i + 1));
    }
  }
};

struct IsogenyVerdict {
  enum Status { isogeny, pro_zero, bounded_torsion, not_detected };
  Status status = not_detected;
  Int multiplier = 0;  // for isogeny / bounded_torsion
  int depth = 0;
  Int bound = 0;  // search bound for negative verdicts
  std::string note;

  std::string str() const {
    switch (status) {
      case isogeny:
        return "isogeny(" + multiplier.get_str() + ")";
      case pro_zero:
        return "pro_zero";
      case bounded_torsion:
        return "bounded_torsion(" + multiplier.get_str() + ")";
      default:
        return "not_detected(depth=" + std::to_string(depth) + ", bound=" + bound.get_str() + ")";
    }
  }
};

namespace detail {

inline Vec reduce_coords(Vec v, const std::vector<Int>& orders) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (orders[i] != 0) {
      v[i] %= orders[i];
      if (v[i] < 0) v[i] += orders[i];
    }
  return v;
}

// matrix of H_n(composite transition) in solver coordinates
inline IntMatrix induced_matrix(const ChainMap& f, const HomologySolver& hsrc,
                                const HomologySolver& hdst, int n) {
  return f.induced(hsrc, hdst, n);
}

}  // namespace detail

// pro_zero iff for every level i <= depth-1 some composite transition on H_n
// into level i vanishes (within the available depth). Never claims a negative.
inline IsogenyVerdict pro_zero_verdict(const Tower& T, int n) {
  if (T.depth() < 2) throw contract_error("pro_zero_verdict: depth < 2");
  std::vector<HomologySolver> H;
  for (const auto& L : T.levels) H.push_back(L.solver(n));
  IsogenyVerdict out;
  out.depth = T.depth();
  for (int i = 1; i <= T.depth() - 1; ++i) {
    bool killed = H[i - 1].group().is_trivial();
    for (int j = i + 1; j <= T.depth() && !killed; ++j) {
      IntMatrix M = detail::induced_matrix(T.composite(j, i), H[j - 1], H[i - 1], n);
      killed = true;
      for (int c = 0; c < M.cols() && killed; ++c)
        for (const auto& x : detail::reduce_coords(M.column(c), H[i - 1].summand_orders()))
          if (x != 0) killed = false;
    }
    if (!killed) {
      out.status = IsogenyVerdict::not_detected;
      out.note = "no vanishing composite into level " + std::to_string(i);
      return out;
    }
  }
  out.status = IsogenyVerdict::pro_zero;
  return out;
}

namespace detail {

// candidate multipliers: p-powers first (ascending), then factorials, capped by B
inline std::vector<Int> multiplier_candidates(const std::vector<Int>& primes, const Int& B) {
  std::vector<Int> out{1};
  std::vector<Int> ppows;
  for (const auto& p : primes)
    for (Int q = p; q <= B; q *= p) ppows.push_back(q);
  std::sort(ppows.begin(), ppows.end());
  for (const auto& q : ppows)
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  Int f = 1;
  for (Int m = 2; (f *= m) <= B; ++m)
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  return out;
}

}  // namespace detail

// Searches one uniform multiplier c <= B such that, in every degree n <= N and
// at every level i, some deeper level j witnesses: the composite transition
// kills c * ker H_n(f_j), and c * (composite transition) H_n(Y_j) lands in the
// image of H_n(f_i). Levelwise killing is the j = i case; pro-zero defects are
// caught by deeper j.
inline IsogenyVerdict quasi_isogeny_verdict(const TowerMap& f, int N, const Int& B) {
  const Tower& X = f.source;
  const Tower& Y = f.target;
  const int depth = X.depth();
  std::set<Int> prime_set;
  auto note_primes = [&](const FGAbelianGroup& g) {
    for (const auto& t : g.torsion)
      for (auto& [p, e] : factorize(t)) prime_set.insert(p);
  };
  // per degree/level data
  struct LevelData {
    IntMatrix M;                 // induced map in coords
    std::vector<Vec> ker_gens;   // coords in H(X_i)
    std::vector<Int> x_orders, y_orders;
  };
  std::vector<std::vector<HomologySolver>> HX, HY;
  std::vector<std::vector<LevelData>> data(N + 1);
  for (int n = 0; n <= N; ++n) {
    std::vector<HomologySolver> hx, hy;
    for (int i = 0; i < depth; ++i) {
      hx.emplace_back(X.levels[i].solver(n));
      hy.emplace_back(Y.levels[i].solver(n));
    }
    for (int i = 0; i < depth; ++i) {
      LevelData ld;
      ld.M = f.components[i].induced(hx[i], hy[i], n);
      ld.x_orders = hx[i].summand_orders();
      ld.y_orders = hy[i].summand_orders();
      note_primes(hx[i].group());
      note_primes(hy[i].group());
      // kernel generators of M as a map of (+) Z/a -> (+) Z/b
      std::vector<Vec> relcols;
      for (std::size_t j = 0; j < ld.y_orders.size(); ++j)
        if (ld.y_orders[j] != 0) {
          Vec v(ld.y_orders.size(), 0);
          v[j] = ld.y_orders[j];
          relcols.push_back(std::move(v));
        }
      IntMatrix R = IntMatrix::from_columns(static_cast<int>(ld.y_orders.size()), relcols, Ring());
      IntMatrix K = relcols.empty() ? kernel_z(ld.M) : preimage_lattice_z(ld.M, R);
      for (int c = 0; c < K.cols(); ++c) ld.ker_gens.push_back(K.column(c));
      data[n].push_back(std::move(ld));
    }
    HX.push_back(std::move(hx));
    HY.push_back(std::move(hy));
  }
  IsogenyVerdict out;
  out.depth = depth;
  out.bound = B;
  std::vector<Int> primes(prime_set.begin(), prime_set.end());
  for (const Int& c : detail::multiplier_candidates(primes, B)) {
    bool works = true;
    // the top level has no deeper witness available; pro-object morphisms are
    // insensitive to it, so it is excluded when depth >= 2
    const int top = depth >= 2 ? depth - 1 : 1;
    for (int n = 0; n <= N && works; ++n) {
      for (int i = 1; i <= top && works; ++i) {
        bool witness = false;
        for (int j = i; j <= depth && !witness; ++j) {
          // composite transitions level j -> level i on homology, in coords
          IntMatrix TX = detail::induced_matrix(X.composite(j, i), HX[n][j - 1], HX[n][i - 1], n);
          IntMatrix TY = detail::induced_matrix(Y.composite(j, i), HY[n][j - 1], HY[n][i - 1], n);
          const LevelData& lj = data[n][j - 1];
          const LevelData& li = data[n][i - 1];
          bool ok = true;
          // c * (transition of kernel classes) dies in H(X_i)
          for (const auto& k : lj.ker_gens) {
            Vec img = TX.apply(k);
            for (auto& v : img) v *= c;
            for (const auto& v : detail::reduce_coords(img, li.x_orders))
              if (v != 0) ok = false;
            if (!ok) break;
          }
          // c * (transition) hits the image of f at level i
          if (ok) {
            std::vector<Vec> need;
            for (int col = 0; col < TY.cols(); ++col) {
              Vec v = TY.column(col);
              for (auto& x : v) x *= c;
              need.push_back(std::move(v));
            }
            std::vector<Vec> span;
            for (int col = 0; col < li.M.cols(); ++col) span.push_back(li.M.column(col));
            for (std::size_t t = 0; t < li.y_orders.size(); ++t)
              if (li.y_orders[t] != 0) {
                Vec v(li.y_orders.size(), 0);
                v[t] = li.y_orders[t];
                span.push_back(std::move(v));
              }
            IntMatrix A = IntMatrix::from_columns(static_cast<int>(li.y_orders.size()), span, Ring());
            IntMatrix Bm = IntMatrix::from_columns(static_cast<int>(li.y_orders.size()), need, Ring());
            if (Bm.cols() > 0 && !Bm.is_zero() && !solve_z(A, Bm)) ok = false;
          }
          witness = ok;
        }
        works = witness;
      }
    }
    if (works) {
      out.status = IsogenyVerdict::isogeny;
      out.multiplier = c;
      return out;
    }
  }
  out.status = IsogenyVerdict::not_detected;
  return out;
}

}  // namespace prociso

#endif
