#include <catch2/catch_amalgamated.hpp>

#include "prociso/lazard.hpp"

using namespace prociso;

namespace {

LieRing heisenberg_lie(const Ring& base) {
  // [e1, e2] = 3 e3, two-step nilpotent over Z/3^4
  return lie_from_upper(base, 3, {{{0, 1}, Vec{0, 0, 3}}});
}

}  // namespace

TEST_CASE("campbell hausdorff on a two-step ring matches the closed formula") {
  Ring B = Ring::zmod(Int(81));
  LieRing g = heisenberg_lie(B);
  CHSeries s(g, 2);
  REQUIRE(s.weight_cap() == 4);
  // two-step: x * y = x + y + [x,y]/2 exactly
  Int inv2 = inv_mod(2, 9);
  for (long a = 0; a < 9; a += 2)
    for (long b = 0; b < 9; b += 3)
      for (long c = 0; c < 9; c += 4)
        for (long d = 1; d < 9; d += 3)
          for (long e = 0; e < 9; e += 2) {
            Vec x{a, b, c}, y{d, e, (a * 7 + e) % 9};
            Vec br = g.bracket(x, y);
            Vec want{(a + d) % 9, (b + e) % 9, 0};
            Int t = (c + (a * 7 + e) % 9 + Int(br[2]) * inv2) % 9;
            want[2] = t < 0 ? t + 9 : t;
            REQUIRE(s.multiply(x, y) == want);
          }
}

TEST_CASE("campbell hausdorff weight-three terms match the dynkin formula") {
  // [e1,e2] = 3 e3, [e1,e3] = 3 e4: three-step, so weights up to 3 survive
  Ring B = Ring::zmod(Int(81));
  LieRing g = lie_from_upper(B, 4, {{{0, 1}, Vec{0, 0, 3, 0}}, {{0, 2}, Vec{0, 0, 0, 3}}});
  CHSeries s(g, 3);
  Int q = 27, i2 = inv_mod(2, q), i4 = inv_mod(4, q);
  for (int trial = 0; trial < 200; ++trial) {
    Vec x(4), y(4);
    for (int k = 0; k < 4; ++k) {
      x[k] = (trial * 7 + k * 5) % 27;
      y[k] = (trial * 11 + k * 13 + 3) % 27;
    }
    Vec br = g.bracket(x, y);
    Vec xxy = g.bracket(x, br), yyx = g.bracket(y, g.bracket(y, x));
    // z = x + y + [x,y]/2 + [x,[x,y]]/12 + [y,[y,x]]/12; the double brackets
    // are divisible by 9, so /12 is (/3) * inv(4)
    Vec want(4);
    for (int k = 0; k < 4; ++k) {
      Int dbl = xxy[k] + yyx[k];
      REQUIRE(dbl % 3 == 0);
      Int t = (x[k] + y[k] + Int(br[k]) * i2 + dbl / 3 * i4) % q;
      want[k] = t < 0 ? t + q : t;
    }
    REQUIRE(s.multiply(x, y) == want);
  }
}

TEST_CASE("campbell hausdorff group laws hold on random triples") {
  Ring B3 = Ring::zmod(Int(81));
  LieRing g3 = lie_from_upper(B3, 4, {{{0, 1}, Vec{0, 0, 3, 0}}, {{0, 2}, Vec{0, 0, 0, 3}}});
  CHSeries s3(g3, 3);
  Vec id3(4, 0);
  for (int trial = 0; trial < 200; ++trial) {
    Vec x(4), y(4), z(4);
    for (int k = 0; k < 4; ++k) {
      x[k] = (trial * 3 + k) % 27;
      y[k] = (trial * 5 + 2 * k + 1) % 27;
      z[k] = (trial * 17 + 5 * k + 2) % 27;
    }
    REQUIRE(s3.multiply(s3.multiply(x, y), z) == s3.multiply(x, s3.multiply(y, z)));
    REQUIRE(s3.multiply(x, s3.inverse(x)) == id3);
  }
  // p = 2 needs bracket divisibility by 4
  Ring B2 = Ring::zmod(Int(64));
  LieRing g2 = lie_from_upper(B2, 2, {{{0, 1}, Vec{0, 4}}});
  CHSeries s2(g2, 3);
  REQUIRE(s2.weight_cap() == 5);
  for (int trial = 0; trial < 200; ++trial) {
    Vec x{trial % 8, (trial / 8) % 8}, y{(trial * 3 + 1) % 8, (trial * 5 + 2) % 8},
        z{(trial * 7 + 3) % 8, (trial * 11 + 5) % 8};
    REQUIRE(s2.multiply(s2.multiply(x, y), z) == s2.multiply(x, s2.multiply(y, z)));
  }
}

TEST_CASE("campbell hausdorff rejects insufficient bracket divisibility") {
  Ring B3 = Ring::zmod(Int(81));
  REQUIRE_THROWS_AS(CHSeries(lie_from_upper(B3, 3, {{{0, 1}, Vec{0, 0, 1}}}), 2), contract_error);
  Ring B2 = Ring::zmod(Int(64));
  REQUIRE_THROWS_AS(CHSeries(lie_from_upper(B2, 2, {{{0, 1}, Vec{0, 2}}}), 2), contract_error);
  REQUIRE_THROWS_AS(ch_multiply(abelian_lie_ring(B3, 1), 5, Vec{1}, Vec{1}), contract_error);
}

TEST_CASE("level groups of abelian and two-step rings") {
  Ring B = Ring::zmod(Int(81));
  FinGroup A = level_group(abelian_lie_ring(B, 2), 1, 2);
  REQUIRE(A.size() == 81);
  REQUIRE(abelian_invariants(A) == FGAbelianGroup::from_cyclic_orders({Int(9), Int(9)}));

  LieRing g = heisenberg_lie(B);
  std::vector<Vec> elems;
  FinGroup H = level_group(g, 1, 2, &elems);
  REQUIRE(H.size() == 729);
  REQUIRE_FALSE(H.is_abelian());
  // abelianization oracle: g / ([g,g] + 9g) with [g,g] = 3Z e3
  REQUIRE(abelianization(H) == FGAbelianGroup::from_cyclic_orders({Int(9), Int(9), Int(3)}));
  // the next congruence layer: elements with all coordinates divisible by 3
  std::map<Vec, int> index;
  for (std::size_t t = 0; t < elems.size(); ++t) index[elems[t]] = static_cast<int>(t);
  std::vector<int> layer;
  for (std::size_t t = 0; t < elems.size(); ++t) {
    bool deep = true;
    for (const auto& c : elems[t]) deep = deep && c % 3 == 0;
    if (deep) layer.push_back(static_cast<int>(t));
  }
  REQUIRE(static_cast<int>(layer.size()) == 27);
  REQUIRE(H.is_normal(layer));
  REQUIRE(abelian_invariants(H.quotient(layer)) ==
          FGAbelianGroup::from_cyclic_orders({Int(3), Int(3), Int(3)}));
  // p-th power law: the class of 3x is the cube of the class of x
  for (std::size_t t = 0; t < elems.size(); t += 31) {
    Vec px(3);
    for (int k = 0; k < 3; ++k) px[k] = elems[t][k] * 3 % 9;
    REQUIRE(H.power(static_cast<int>(t), 3) == index.at(px));
  }
}

TEST_CASE("matrix exponential and logarithm invert each other") {
  PadicAlgebra Z3 = zp_algebra(Int(3), 4);
  MatExpLog E = mat_exp_log(Z3, 2, 1, 2);
  // nilpotent argument: exp(3 E12) = 1 + 3 E12
  REQUIRE(E.exp(Vec{0, 3, 0, 0}) == Vec{1, 3, 0, 1});
  for (int t = 0; t < 100; ++t) {
    Vec a{3 * ((t * 5) % 9), 3 * ((t * 7 + 1) % 9), 3 * ((t * 11 + 2) % 9), 3 * ((t * 13 + 3) % 9)};
    for (auto& c : a) c %= 27;
    REQUIRE(E.log(E.exp(a)) == a);
    // exp turns scaling by p into a p-th power
    Vec u = E.exp(a), a3(a);
    for (auto& c : a3) c = c * 3 % 27;
    REQUIRE(E.exp(a3) == E.M.multiply(E.M.multiply(u, u), u));
  }
  REQUIRE_THROWS_AS(E.exp(Vec{1, 0, 0, 0}), contract_error);  // not divisible by p
  REQUIRE_THROWS_AS(E.log(Vec{0, 0, 0, 1}), contract_error);  // not congruent to 1
  // p = 2 requires m >= 2
  REQUIRE_THROWS_AS(mat_exp_log(zp_algebra(Int(2), 4), 2, 1, 2), contract_error);
  REQUIRE(exp_log_matrix(Z3, 2, 1, 2, ExpLogDirection::logarithm, Vec{1, 3, 0, 1}) ==
          Vec{0, 3, 0, 0});
}

TEST_CASE("eta is multiplicative and respects the filtration") {
  Ring B = Ring::zmod(Int(81));
  LieRing g = lie_from_upper(B, 2, {{{0, 1}, Vec{0, 3}}});
  EtaMap eta = eta_map(g, 1, 3, 4);
  REQUIRE(eta.group.size() == 81);
  for (int a = 0; a < eta.group.size(); ++a)
    for (int b = 0; b < eta.group.size(); ++b)
      REQUIRE(eta.env.multiply(eta.images[a], eta.images[b]) ==
              eta.images[eta.group.mul(a, b)]);
  // degree-l coefficients of eta - 1 carry valuation >= l*m - v_p(l!)
  for (int a = 0; a < eta.group.size(); ++a)
    for (const auto& [mon, c] : eta.images[a]) {
      if (mon.empty()) continue;
      unsigned l = static_cast<unsigned>(mon.size());
      unsigned v = l - factorial_valuation(static_cast<unsigned>(l), Int(3));
      REQUIRE(c % pow_int(Int(3), std::min(v, 3u)) == 0);
    }
  // identity maps to 1
  REQUIRE(eta.images[eta.group.id()] == eta.env.one());
  REQUIRE_THROWS_AS(eta_map(g, 1, 1, 4), contract_error);  // needs i > m
}

TEST_CASE("truncated enveloping certifies its degree cap") {
  Ring B = Ring::zmod(Int(81));
  LieRing g = heisenberg_lie(B);
  // i = 3 needs monomials up to degree 3
  REQUIRE_THROWS_AS(TruncatedEnveloping(g, 1, 3, 2), resource_error);
  TruncatedEnveloping U(g, 1, 3, 3);
  // PBW relation: e2' e1' = e1' e2' - e3' (bracket of g' = g/3)
  auto prod = U.multiply({{{1}, Int(1)}}, {{{0}, Int(1)}});
  TruncatedEnveloping::Elem want{{{0, 1}, Int(1)}, {{2}, Int(27 - 1)}};
  REQUIRE(prod == want);
  // associativity on single letters
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        TruncatedEnveloping::Elem ea{{{a}, Int(1)}}, eb{{{b}, Int(1)}}, ec{{{c}, Int(1)}};
        REQUIRE(U.multiply(U.multiply(ea, eb), ec) == U.multiply(ea, U.multiply(eb, ec)));
      }
}

TEST_CASE("bar complex computes small group homology") {
  FinGroup C2 = cyclic_group(2);
  BarComplex bc = bar_complex(C2, Ring(), 3);
  REQUIRE(bc.complex.homology(0) == FGAbelianGroup(1, {}));
  REQUIRE(bc.complex.homology(1) == FGAbelianGroup(0, {2}));
  REQUIRE(bc.complex.homology(2).is_trivial());
  // unnormalized variant agrees
  BarComplex bu = bar_complex(C2, Ring(), 3, false);
  for (int n = 0; n <= 2; ++n) REQUIRE(bu.complex.homology(n) == bc.complex.homology(n));
  // trivial group: a point
  BarComplex bt = bar_complex(trivial_group(), Ring(), 2);
  REQUIRE(bt.complex.homology(0) == FGAbelianGroup(1, {}));
  REQUIRE(bt.complex.homology(1).is_trivial());
  // Heisenberg group of order 27 over F_3: H_1 has dimension 2
  BarComplex bh = bar_complex(heisenberg_group(3), Ring::zmod(Int(3)), 2);
  REQUIRE(bh.complex.homology(1) == FGAbelianGroup::from_cyclic_orders({Int(3), Int(3)}));
}

TEST_CASE("integral group homology through minimal resolutions") {
  auto z4 = group_homology_z(cyclic_group(4), 4);
  REQUIRE(z4[0] == FGAbelianGroup(1, {}));
  REQUIRE(z4[1] == FGAbelianGroup(0, {4}));
  REQUIRE(z4[2].is_trivial());
  REQUIRE(z4[3] == FGAbelianGroup(0, {4}));
  REQUIRE(z4[4].is_trivial());

  FinGroup H27 = heisenberg_group(3);
  auto hh = group_homology_z(H27, 3);
  // H_1 is the abelianization, H_2 the Schur multiplier (Z/3)^2
  REQUIRE(hh[1] == abelianization(H27));
  REQUIRE(hh[2] == FGAbelianGroup::from_cyclic_orders({Int(3), Int(3)}));
  REQUIRE(hh[3] == FGAbelianGroup::from_cyclic_orders({Int(3), Int(3), Int(3), Int(3)}));
  // mod-3 Betti numbers of the minimal resolution
  GroupChains rc = group_resolution(H27, Ring::zmod(Int(3)), 4);
  REQUIRE(rc.betti == std::vector<int>{1, 2, 4, 6, 7});
  // consistency: dim H_n(F_p) = dim H_n(Z)/p + dim Tor(H_{n-1}(Z), Z/p)
  REQUIRE(rc.betti[3] == 4 + 2);
}

TEST_CASE("homology exponent bound for filtered groups") {
  FinGroup C3 = cyclic_group(3);
  auto r1 = p_special_bound_check(C3, {{0, 1, 2}, {0}}, Int(3), 3);
  REQUIRE(r1.ok);
  REQUIRE(r1.bounds == std::vector<Int>{3, 3, 3});

  std::vector<std::array<long, 3>> el;
  FinGroup K = heisenberg_group(3, &el);
  std::vector<int> all, center;
  for (int t = 0; t < K.size(); ++t) {
    all.push_back(t);
    if (el[t][0] == 0 && el[t][1] == 0) center.push_back(t);
  }
  auto r2 = p_special_bound_check(K, {all, center, {0}}, Int(3), 3);
  REQUIRE(r2.ok);
  REQUIRE(r2.bounds == std::vector<Int>{9, 27, 81});
  REQUIRE(r2.homology[2].exponent() == 3);

  // Z/9 with a length-one filtration is not elementary in the layer
  FinGroup C9 = cyclic_group(9);
  std::vector<int> all9;
  for (int t = 0; t < 9; ++t) all9.push_back(t);
  REQUIRE_THROWS_AS(p_special_bound_check(C9, {all9, {0}}, Int(3), 2), contract_error);
}

TEST_CASE("level group homology matches the free graded coalgebra") {
  Ring B = Ring::zmod(Int(81));
  LambdaReport r = lambda_coalgebra_check(abelian_lie_ring(B, 2), 1, 1, 2, 3);
  REQUIRE(r.expected == std::vector<int>{1, 2, 3, 4});
  REQUIRE(r.dims_match);
  REQUIRE(r.h1_iso);
  // transition ranks: binom(2, n) survives, the divided-power part dies
  REQUIRE(r.step_ranks == std::vector<std::vector<int>>{{1, 2, 1, 0}});
  REQUIRE(r.stable_ranks[0] == std::vector<int>{1, 2, 1, 0});

  // rank one: H_2 is pure divided-power, so consecutive transitions kill it
  LambdaReport r1 = lambda_coalgebra_check(abelian_lie_ring(B, 1), 1, 1, 3, 4);
  REQUIRE(r1.expected == std::vector<int>{1, 1, 1, 1, 1});
  REQUIRE(r1.dims_match);
  REQUIRE(r1.step_ranks == std::vector<std::vector<int>>{{1, 1, 0, 0, 0}, {1, 1, 0, 0, 0}});
  REQUIRE(r1.stable_ranks[0] == std::vector<int>{1, 1, 0, 0, 0});

  // nonabelian at p = 2: [e1, e2] = 4 e2 over Z/2^5
  Ring B2 = Ring::zmod(Int(32));
  LieRing n2 = lie_from_upper(B2, 2, {{{0, 1}, Vec{0, 4}}});
  LambdaReport r2 = lambda_coalgebra_check(n2, 2, 1, 3, 3);
  REQUIRE(r2.expected == std::vector<int>{1, 2, 3, 4});
  REQUIRE(r2.dims_match);
  REQUIRE(r2.h1_iso);
  REQUIRE(r2.step_ranks == std::vector<std::vector<int>>{{1, 2, 1, 0}, {1, 2, 1, 0}});
  REQUIRE(r2.stable_ranks[0] == std::vector<int>{1, 2, 1, 0});
}

TEST_CASE("congruence tower and lie tower homology are isogenous") {
  ComparisonReport r3 = congruence_lie_comparison(zp_algebra(Int(3), 5), 1, 1, 5, 2);
  REQUIRE(r3.degrees[0].verdict.status == IsogenyVerdict::isogeny);
  REQUIRE(r3.degrees[0].verdict.multiplier == 1);
  REQUIRE(r3.degrees[1].verdict.status == IsogenyVerdict::isogeny);
  REQUIRE(r3.degrees[1].verdict.multiplier == 3);
  REQUIRE(r3.degrees[2].verdict.status == IsogenyVerdict::pro_zero);
  // settled stable groups in degree 1: Z/p^{i-1} against Z/p^i
  REQUIRE(r3.degrees[1].group_stable[2] == FGAbelianGroup(0, {9}));
  REQUIRE(r3.degrees[1].lie_stable[2] == FGAbelianGroup(0, {27}));
  REQUIRE(r3.degrees[1].settled == std::vector<bool>{true, true, true, true, false});

  ComparisonReport r2 = congruence_lie_comparison(zp_algebra(Int(2), 6), 1, 2, 4, 2);
  REQUIRE(r2.degrees[0].verdict.multiplier == 1);
  REQUIRE(r2.degrees[1].verdict.status == IsogenyVerdict::isogeny);
  REQUIRE(r2.degrees[1].verdict.multiplier == 4);  // p^m
  REQUIRE(r2.degrees[2].verdict.status == IsogenyVerdict::pro_zero);
}
