#include <catch2/catch_amalgamated.hpp>

#include "prociso/lie_ring.hpp"
#include "prociso/padic.hpp"

using namespace prociso;

TEST_CASE("cyclic and dual-number rings validate") {
  FinRing z4 = cyclic_ring(4);
  REQUIRE(z4.size() == 4);
  REQUIRE(z4.multiply(Vec{3}, Vec{3}) == Vec{1});
  FinRing eps = dual_numbers(2);
  REQUIRE(eps.size() == 4);
  REQUIRE(eps.multiply(eps.basis(1), eps.basis(1)) == eps.zero());  // e^2 = 0
}

TEST_CASE("matrix ring structure") {
  FinRing f2 = cyclic_ring(2);
  // r = 1 recovers A up to relabeling
  FinRing m1 = matrix_ring(f2, 1);
  REQUIRE(m1.rank() == 1);
  REQUIRE(m1.basis_product(0, 0) == f2.basis_product(0, 0));
  // Mat_2(F_2): 16 elements, unit validates on construction
  FinRing m2 = matrix_ring(f2, 2);
  REQUIRE(m2.size() == 16);
  REQUIRE(m2.rank() == 4);
  // E_12 E_21 = E_11, E_12 E_12 = 0
  Vec e12 = m2.basis(1), e21 = m2.basis(2);
  REQUIRE(m2.multiply(e12, e21) == m2.basis(0));
  REQUIRE(m2.multiply(e12, e12) == m2.zero());
  // associativity re-validation for Mat_2(Z/4)
  REQUIRE_NOTHROW(matrix_ring(cyclic_ring(4), 2));
  // trace
  Vec x = m2.add(m2.basis(0), m2.basis(3));
  REQUIRE(matrix_trace(f2, 2, x) == Vec{0});  // 1 + 1 = 0 over F_2
  REQUIRE(matrix_trace(f2, 2, m2.basis(0)) == Vec{1});
}

TEST_CASE("corrupted structure constants fail validation") {
  FinRing m2 = matrix_ring(cyclic_ring(2), 2);
  // rebuild the tensor, bump one structure constant, expect a law violation
  int failures = 0, total = 0;
  for (int i = 0; i < 4 && failures == 0; ++i)
    for (int j = 0; j < 4 && failures == 0; ++j)
      for (int k = 0; k < 4 && failures == 0; ++k) {
        std::vector<std::vector<Vec>> mult(4, std::vector<Vec>(4, Vec(4, 0)));
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) mult[a][b] = m2.basis_product(a, b);
        mult[i][j][k] += 1;
        ++total;
        try {
          FinRing bad(m2.base(), 4, std::move(mult), m2.unit());
        } catch (const contract_error&) {
          ++failures;
        }
      }
  REQUIRE(failures > 0);
  (void)total;
}

TEST_CASE("gl Lie rings") {
  FinRing f2 = cyclic_ring(2);
  // gl_1 of a commutative ring is abelian
  REQUIRE(gl_lie_ring(f2, 1).is_abelian());
  LieRing g = gl_lie_ring(f2, 2);
  REQUIRE(g.rank() == 4);  // r^2 * rank(A)
  // [E_11, E_12] = E_12 (basis order E11, E12, E21, E22)
  REQUIRE(g.bracket(g.basis(0), g.basis(1)) == g.basis(1));
  // corrupting one bracket constant breaks antisymmetry or Jacobi
  std::vector<std::vector<Vec>> b(4, std::vector<Vec>(4, Vec(4, 0)));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) b[i][j] = g.basis_bracket(i, j);
  b[0][1][2] += 1;
  REQUIRE_THROWS_AS(LieRing(g.base(), 4, std::move(b)), contract_error);
}

TEST_CASE("scaled bracket models p^m gl") {
  FinRing z9 = cyclic_ring(9);
  LieRing g = gl_lie_ring(z9, 2);
  LieRing g3 = g.scaled_bracket(3);
  REQUIRE(g3.bracket(g3.basis(0), g3.basis(1)) == g.scaled_bracket(3).basis_bracket(0, 1));
  Vec v = g.bracket(g.basis(0), g.basis(1));
  Vec w = g3.bracket(g3.basis(0), g3.basis(1));
  for (int k = 0; k < 4; ++k) REQUIRE(w[k] == (3 * v[k]) % 9);
}

TEST_CASE("finite group validation") {
  FinGroup c6 = cyclic_group(6);
  REQUIRE(c6.element_order(1) == 6);
  REQUIRE(c6.inv(2) == 4);
  // broken table: make a row non-associative
  std::vector<std::vector<int>> tab(3, std::vector<int>(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) tab[a][b] = (a + b) % 3;
  std::swap(tab[1][1], tab[1][2]);
  REQUIRE_THROWS_AS(FinGroup(tab, 0), contract_error);
  // Light's test path on a larger cyclic group with declared generators
  int n = 600;
  std::vector<std::vector<int>> big(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) big[a][b] = (a + b) % n;
  REQUIRE_NOTHROW(FinGroup(big, 0, {}, {1}));
}

TEST_CASE("abelian invariants and abelianization") {
  REQUIRE(abelian_invariants(cyclic_group(12)) == FGAbelianGroup(0, {12}));
  REQUIRE(abelian_invariants(cyclic_group(2).direct_product(cyclic_group(4))) ==
          FGAbelianGroup(0, {2, 4}));
  FinGroup H = heisenberg_group(3);
  REQUIRE(H.size() == 27);
  REQUIRE_FALSE(H.is_abelian());
  REQUIRE(abelianization(H) == FGAbelianGroup(0, {3, 3}));
  REQUIRE(static_cast<int>(H.commutator_subgroup().size()) == 3);
}

TEST_CASE("group from closure") {
  // Z/4 from the generator 1 under addition mod 4
  FinGroup g = group_from_closure<long>(0, {1}, [](long a, long b) { return (a + b) % 4; });
  REQUIRE(g.size() == 4);
  REQUIRE(abelian_invariants(g) == FGAbelianGroup(0, {4}));
}

TEST_CASE("p-adic algebras and truncations") {
  PadicAlgebra A = zp_algebra(3, 3);
  REQUIRE(A.truncation(1).base().mod == 3);
  REQUIRE(A.truncation(3).base().mod == 27);
  REQUIRE_THROWS_AS(A.truncation(4), contract_error);
  // non-ideal rejected: {e} in the dual numbers is an ideal, {1} spans all,
  // but a vector whose span is not closed must throw
  Ring z4 = Ring::zmod(4);
  FinRing eps = dual_numbers(4);
  PadicAlgebra B(2, 2, eps, {Vec{0, 1}});  // (e) is an ideal
  REQUIRE_THROWS_AS(PadicAlgebra(2, 2, dual_numbers(4), {Vec{1, 1}}), contract_error);
  (void)z4;
  (void)B;
}

TEST_CASE("congruence quotients") {
  // r=1, A=Z_p, m=1, i=1, p odd: cyclic of order p
  PadicAlgebra A3 = zp_algebra(3, 3);
  FinGroup G = congruence_quotient(A3, 1, 1, 1);
  REQUIRE(G.size() == 3);
  REQUIRE(abelian_invariants(G) == FGAbelianGroup(0, {3}));
  // order formula p^{i r^2 d} for (3,1,1,2,1): 9, and the group is (1+3Z)/(1+27Z) = Z/9
  FinGroup G2 = congruence_quotient(A3, 1, 1, 2);
  REQUIRE(G2.size() == 9);
  REQUIRE(abelian_invariants(G2) == FGAbelianGroup(0, {9}));
  // r=2, A=Z_2 precision 3, m=2, i=1: elementary abelian of order 2^4
  PadicAlgebra A2 = zp_algebra(2, 3);
  FinGroup E = congruence_quotient(A2, 2, 2, 1);
  REQUIRE(E.size() == 16);
  REQUIRE(abelian_invariants(E) == FGAbelianGroup(0, {2, 2, 2, 2}));
}

TEST_CASE("congruence quotient levels surject with kernel of order p^{r^2 d}") {
  PadicAlgebra A = zp_algebra(3, 3);
  std::vector<Vec> e2, e1;
  FinGroup G2 = congruence_quotient(A, 1, 1, 2, &e2);
  FinGroup G1 = congruence_quotient(A, 1, 1, 1, &e1);
  REQUIRE(G2.size() == G1.size() * 3);  // kernel order p^{r^2 d} = 3
  // reduction mod p^{m+i-1} is a surjective homomorphism
  FinRing M1 = matrix_ring(A.truncation(2), 1);
  std::map<Vec, int> idx1;
  for (std::size_t t = 0; t < e1.size(); ++t) idx1[e1[t]] = static_cast<int>(t);
  auto reduce = [&](const Vec& x) {
    Vec y(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) y[t] = M1.base().reduce(x[t]);
    return idx1.at(y);
  };
  std::set<int> image;
  for (std::size_t a = 0; a < e2.size(); ++a) {
    image.insert(reduce(e2[a]));
    for (std::size_t b = 0; b < e2.size(); ++b)
      REQUIRE(reduce(e2[G2.mul(static_cast<int>(a), static_cast<int>(b))]) ==
              G1.mul(reduce(e2[a]), reduce(e2[b])));
  }
  REQUIRE(static_cast<int>(image.size()) == G1.size());
}
