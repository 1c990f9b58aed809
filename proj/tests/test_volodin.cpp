#include <catch2/catch_amalgamated.hpp>

#include "prociso/volodin.hpp"

using namespace prociso;

TEST_CASE("general linear groups of tiny rings") {
  REQUIRE(general_linear_group(cyclic_ring(4), 1).size() == 2);
  FinGroup g2 = general_linear_group(cyclic_ring(2), 2);
  REQUIRE(g2.size() == 6);
  REQUIRE_FALSE(g2.is_abelian());
  REQUIRE(general_linear_group(cyclic_ring(4), 2).size() == 96);
  REQUIRE(general_linear_group(cyclic_ring(2), 3).size() == 168);
}

TEST_CASE("absolute rank-one volodin complex is a point") {
  VolodinComplex X = volodin_complex(1, cyclic_ring(4), {}, 2);
  REQUIRE(X.complex.rank(0) == 1);
  REQUIRE(X.complex.rank(1) == 0);
  REQUIRE(reduced_homology(X, 0).is_trivial());
  REQUIRE(reduced_homology(X, 1).is_trivial());
}

TEST_CASE("relative volodin complex of (2) in Z/4 is the bar of Z/2") {
  VolodinComplex X = volodin_complex(1, cyclic_ring(4), {Vec{2}}, 2);
  REQUIRE(X.complex.rank(1) == 1);
  REQUIRE(reduced_homology(X, 0).is_trivial());
  REQUIRE(X.complex.homology(1) == FGAbelianGroup(0, {2}));
}

TEST_CASE("rank two over F_2 is a wedge of two circles mod 2") {
  VolodinComplex X = volodin_complex(2, cyclic_ring(2), {}, 2);
  // two triangular subgroups of order 2, meeting at the identity
  REQUIRE(X.sigma_index.size() == 2);
  REQUIRE(X.complex.rank(1) == 2);
  REQUIRE(X.complex.rank(2) == 2);
  REQUIRE(reduced_homology(X, 1) == FGAbelianGroup::from_cyclic_orders({Int(2), Int(2)}));
}

TEST_CASE("reduced homology vanishes in the stable range") {
  AcyclicityReport a = acyclicity_check(3, cyclic_ring(2), 1);
  REQUIRE(a.ok);
  REQUIRE(a.reduced.is_trivial());
  // r = 2 is outside the range, and indeed the wedge above is nonzero
  REQUIRE_THROWS_AS(acyclicity_check(2, cyclic_ring(2), 1), contract_error);
}

TEST_CASE("ideal inputs are validated") {
  // the additive span of 1 + eps is not multiplicatively closed
  REQUIRE_THROWS_AS(volodin_complex(1, dual_numbers(4), {Vec{1, 1}}, 2), contract_error);
  // the unit ideal is two-sided but not nilpotent
  REQUIRE_THROWS_AS(volodin_complex(1, cyclic_ring(4), {Vec{1}}, 2), contract_error);
}

TEST_CASE("congruence subgroup bar chains include into the relative complex") {
  // r = 1: the congruence subgroup 1 + 2 Z/4 is the whole relative complex
  CongruenceVolodinReport c1 = congruence_volodin_check(zp_algebra(Int(2), 2), 1, 1, 2);
  REQUIRE(c1.subgroup_h1 == FGAbelianGroup(0, {2}));
  REQUIRE(c1.volodin_h1 == FGAbelianGroup(0, {2}));
  REQUIRE(c1.cokernel.is_trivial());

  // r = 2: H_1 of 1 + 2 Mat_2(Z/4) is elementary abelian of rank 4
  CongruenceVolodinReport c2 = congruence_volodin_check(zp_algebra(Int(2), 2), 2, 1, 2);
  REQUIRE(c2.subgroup_h1 == FGAbelianGroup::from_cyclic_orders({Int(2), Int(2), Int(2), Int(2)}));
  REQUIRE(c2.volodin_h1 == FGAbelianGroup::from_cyclic_orders({Int(2), Int(2), Int(2)}));
  REQUIRE(c2.cokernel == FGAbelianGroup::from_cyclic_orders({Int(2), Int(2)}));
}

TEST_CASE("subgroup tuples outside the span are rejected") {
  // GL_2(F_2) itself is not contained in any union of triangular subgroups
  VolodinComplex X = volodin_complex(2, cyclic_ring(2), {}, 2);
  std::vector<int> all;
  for (int g = 0; g < X.gl.size(); ++g) all.push_back(g);
  REQUIRE_THROWS_AS(bar_into_volodin(X, all), contract_error);
}
