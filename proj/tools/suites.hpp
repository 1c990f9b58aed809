#ifndef PROCISO_TOOLS_SUITES_HPP
#define PROCISO_TOOLS_SUITES_HPP

#include "claims.hpp"
#include "io.hpp"
#include "prociso/hochschild.hpp"
#include "prociso/lazard.hpp"
#include "prociso/lqt.hpp"
#include "prociso/volodin.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <random>
#include <sstream>
#include <vector>

namespace prociso::cli {

struct Caps {
  long max_group_order = 10000;
  long max_chain_rank = 300000;
  int max_pbw_degree = 8;
};

struct Config {
  std::uint64_t seed = 741953;
  int workers = 1;
  Caps caps;
};

inline Config parse_config(const std::string& path) {
  Config cfg;
  if (path.empty()) return cfg;
  json j = load_json(path);
  check_fields(j, {"seed", "workers", "caps"}, path);
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("workers")) cfg.workers = std::max(1, j.at("workers").get<int>());
  if (j.contains("caps")) {
    const json& c = j.at("caps");
    check_fields(c, {"max_group_order", "max_chain_rank", "max_pbw_degree"}, path + ".caps");
    if (c.contains("max_group_order")) cfg.caps.max_group_order = c.at("max_group_order").get<long>();
    if (c.contains("max_chain_rank")) cfg.caps.max_chain_rank = c.at("max_chain_rank").get<long>();
    if (c.contains("max_pbw_degree")) cfg.caps.max_pbw_degree = c.at("max_pbw_degree").get<int>();
  }
  return cfg;
}

namespace detail {

struct Check {
  std::string name;  // for resource-error attribution
  std::function<CheckRecord()> run;
};

inline Vec pairing_trace(const FinRing& A, int r, const std::vector<int>& sigma,
                         const std::vector<Vec>& F) {
  const int n = static_cast<int>(sigma.size());
  const int dR = A.rank();
  std::vector<int> inv(n);
  for (int i = 0; i < n; ++i) inv[sigma[i]] = i;
  std::vector<int> a(n, 0);
  Vec tot = A.zero();
  while (true) {
    Vec term = A.unit();
    for (int i = 0; i < n; ++i) {
      Vec coeff(dR);
      for (int t = 0; t < dR; ++t) coeff[t] = F[i][(a[i] * r + a[inv[i]]) * dR + t];
      term = A.multiply(term, coeff);
    }
    for (int t = 0; t < dR; ++t) tot[t] = A.base().reduce(tot[t] + term[t]);
    int i = n - 1;
    while (i >= 0 && a[i] == r - 1) a[i--] = 0;
    if (i < 0) break;
    ++a[i];
  }
  return tot;
}

inline std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(s);
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

inline std::string ranks_str(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

// [Z --q--> Z], H_0 = Z/q
inline ChainComplex two_term(const Int& q) {
  return ChainComplex(Ring(), {{0, 1}, {1, 1}}, {{1, IntMatrix::scalar(1, q)}});
}

inline std::vector<Check> connes_bound_checks(const Config&) {
  std::vector<std::pair<std::string, FinRing>> rings = {
      {"Z/4", cyclic_ring(4)},
      {"Z/9", cyclic_ring(9)},
      {"F_2[e]", dual_numbers(2)},
      {"Mat_2(F_2)", matrix_ring(cyclic_ring(2), 2)}};
  std::vector<Check> out;
  for (auto& [name, R] : rings) {
    std::string rn = name;
    FinRing ring = R;
    out.push_back({"connes-bound " + rn, [rn, ring]() {
                     CyclicPackage P = cyclic_package(ring, 4);
                     bool ok = connes_kernel_homology(P, 0).is_trivial();
                     std::string obs = "H_0 = " + connes_kernel_homology(P, 0).str();
                     for (int n = 1; n <= 4; ++n) {
                       FGAbelianGroup H = connes_kernel_homology(P, n);
                       Int e = torsion_exponent(H);
                       ok = ok && e != 0 && factorial(n) % e == 0;
                       obs += "; H_" + std::to_string(n) + " = " + H.str();
                     }
                     return make_record("connes-projection-kernel-torsion", "R = " + rn + ", n <= 4",
                                        "exponent of H_n divides n!", obs, ok);
                   }});
  }
  return out;
}

inline std::vector<Check> lqt_checks(const Config& cfg) {
  std::vector<Check> out;
  out.push_back({"kappa chain map", []() {
                   // construction validates the chain-map identity exactly
                   kappa(1, cyclic_ring(4), 1);
                   LQTKappa K2 = kappa(2, cyclic_ring(2), 2);
                   LQTKappa K3 = kappa(2, cyclic_ring(3), 2);
                   bool ok = true;
                   std::string obs = "surjective degrees:";
                   for (auto* K : {&K2, &K3})
                     for (int n = 0; n <= 2; ++n) {
                       bool s = kappa_surjective(*K, n);
                       ok = ok && s;
                       obs += s ? " y" : " n";
                     }
                   return make_record("kappa-chain-map",
                                      "r = 1 over Z/4; r = 2 over F_2 and F_3, degrees <= 2",
                                      "boundaries commute", obs, ok);
                 }});
  out.push_back({"kappa surjectivity", []() {
                   LQTKappa K = kappa(2, cyclic_ring(2), 2);
                   bool ok = kappa_surjective(K, 1) && kappa_surjective(K, 2);
                   return make_record("kappa-surjective-low-degrees", "r = 2 over F_2",
                                      "surjective in degrees 1, 2", ok ? "surjective" : "gap", ok);
                 }});
  out.push_back({"kernel killing search", []() {
                   std::vector<FinRing> rings{cyclic_ring(2), cyclic_ring(3), cyclic_ring(4)};
                   KillingSearchResult res = kernel_killing_search(2, 2, rings, Int(10000));
                   return make_record("kappa-kernel-uniform-exponent",
                                      "r = 2, n = 2, rings F_2, F_3, Z/4, bound 10^4",
                                      "a finite uniform exponent exists",
                                      "e = " + res.exponent.get_str(), res.exponent != 0);
                 }});
  out.push_back({"theta duality", [seed = cfg.seed]() {
                   FinRing A = cyclic_ring(9);
                   int r = 2;
                   FinRing M = matrix_ring(A, r);
                   std::mt19937_64 rng(seed);
                   bool ok = true;
                   for (int n = 2; n <= 3; ++n)
                     for (int rep = 0; rep < 10; ++rep) {
                       std::vector<Vec> F;
                       for (int i = 0; i < n; ++i) {
                         Vec v(M.rank());
                         for (int t = 0; t < M.rank(); ++t) v[t] = static_cast<long>(rng() % 9);
                         F.push_back(v);
                       }
                       for (const auto& sigma : all_perms(n))
                         ok = ok && theta_sigma(A, r, sigma, F) == pairing_trace(A, r, sigma, F);
                     }
                   return make_record("theta-duality-pairing",
                                      "r = 2 over Z/9, n <= 3, 10 seeded samples per degree",
                                      "single-trace pairing identity", ok ? "exact" : "mismatch",
                                      ok);
                 }});
  return out;
}

inline std::vector<Check> lazard_lambda_checks(const Config&) {
  std::vector<Check> out;
  Ring B = Ring::zmod(Int(81));
  out.push_back({"lambda abelian", [B]() {
                   LambdaReport r = lambda_coalgebra_check(abelian_lie_ring(B, 2), 1, 1, 2, 3);
                   bool ok = r.dims_match && r.h1_iso;
                   return make_record("lambda-coalgebra-dimensions",
                                      "abelian rank 2, p = 3, m = 1, levels 1..2, degrees <= 3",
                                      "dims " + ranks_str(r.expected) + ", H_1 iso",
                                      "dims " + ranks_str(r.dims[0]), ok);
                 }});
  out.push_back({"lambda nonabelian", [B]() {
                   LieRing g = lie_from_upper(B, 2, {{{0, 1}, Vec{0, 3}}});
                   LambdaReport r = lambda_coalgebra_check(g, 1, 1, 2, 2);
                   bool ok = r.dims_match && r.h1_iso && r.step_ranks[0][2] == 1;
                   return make_record("lambda-transition-image",
                                      "[x,y] = 3y, p = 3, m = 1, levels 1..2, degrees <= 2",
                                      "dims 1 2 3; transition rank 1 in degree 2",
                                      "dims " + ranks_str(r.dims[0]) + "; step ranks " +
                                          ranks_str(r.step_ranks[0]),
                                      ok);
                 }});
  return out;
}

inline std::vector<Check> p_special_checks(const Config&) {
  std::vector<Check> out;
  out.push_back({"p-special C3", []() {
                   PSpecialReport r = p_special_bound_check(cyclic_group(3), {{0, 1, 2}, {0}},
                                                           Int(3), 3);
                   std::string obs;
                   for (std::size_t a = 1; a < r.homology.size(); ++a)
                     obs += (a > 1 ? "; " : "") + std::string("H_") + std::to_string(a) + " = " +
                            r.homology[a].str();
                   return make_record("p-special-exponent-bound", "Z/3, one-layer filtration",
                                      "exponents divide 3, 3, 3", obs, r.ok);
                 }});
  out.push_back({"p-special heisenberg", []() {
                   std::vector<std::array<long, 3>> el;
                   FinGroup K = heisenberg_group(3, &el);
                   std::vector<int> all, center;
                   for (int t = 0; t < K.size(); ++t) {
                     all.push_back(t);
                     if (el[t][0] == 0 && el[t][1] == 0) center.push_back(t);
                   }
                   PSpecialReport r = p_special_bound_check(K, {all, center, {0}}, Int(3), 3);
                   std::string obs;
                   for (std::size_t a = 1; a < r.homology.size(); ++a)
                     obs += (a > 1 ? "; " : "") + std::string("H_") + std::to_string(a) + " = " +
                            r.homology[a].str();
                   return make_record("p-special-exponent-bound",
                                      "Heisenberg group of order 27, two-layer filtration",
                                      "exponents divide 9, 27, 81", obs, r.ok);
                 }});
  return out;
}

inline std::vector<Check> ch_exp_log_checks(const Config& cfg) {
  std::vector<Check> out;
  out.push_back({"ch associativity", [seed = cfg.seed]() {
                   Ring B = Ring::zmod(Int(81));
                   LieRing g = lie_from_upper(
                       B, 4, {{{0, 1}, Vec{0, 0, 3, 0}}, {{0, 2}, Vec{0, 0, 0, 3}}});
                   CHSeries s(g, 3);
                   std::mt19937_64 rng(seed);
                   int fails = 0;
                   for (int t = 0; t < 200; ++t) {
                     Vec x(4), y(4), z(4);
                     for (int k = 0; k < 4; ++k) {
                       x[k] = static_cast<long>(rng() % 27);
                       y[k] = static_cast<long>(rng() % 27);
                       z[k] = static_cast<long>(rng() % 27);
                     }
                     if (s.multiply(s.multiply(x, y), z) != s.multiply(x, s.multiply(y, z)))
                       ++fails;
                   }
                   return make_record("ch-associativity",
                                      "three-step rank-4 ring, p = 3, precision 3, 200 triples",
                                      "0 failures", std::to_string(fails) + " failures",
                                      fails == 0);
                 }});
  out.push_back({"exp log inverse", [seed = cfg.seed]() {
                   MatExpLog E = mat_exp_log(zp_algebra(Int(3), 4), 2, 1, 2);
                   std::mt19937_64 rng(seed + 1);
                   int fails = 0;
                   for (int t = 0; t < 100; ++t) {
                     Vec a(4);
                     for (auto& c : a) c = 3 * static_cast<long>(rng() % 9);
                     if (E.log(E.exp(a)) != a) ++fails;
                   }
                   return make_record("exp-log-inverse",
                                      "p gl_2(Z/27), m = 1, i = 2, 100 seeded samples",
                                      "log(exp(a)) = a", std::to_string(fails) + " failures",
                                      fails == 0);
                 }});
  out.push_back({"exp power law", [seed = cfg.seed]() {
                   MatExpLog E = mat_exp_log(zp_algebra(Int(3), 4), 2, 1, 2);
                   std::mt19937_64 rng(seed + 2);
                   int fails = 0;
                   for (int t = 0; t < 100; ++t) {
                     Vec a(4), a3(4);
                     for (int k = 0; k < 4; ++k) {
                       a[k] = 3 * static_cast<long>(rng() % 9);
                       a3[k] = a[k] * 3 % 27;
                     }
                     Vec u = E.exp(a);
                     if (E.exp(a3) != E.M.multiply(E.M.multiply(u, u), u)) ++fails;
                   }
                   return make_record("exp-power-law", "p gl_2(Z/27), 100 seeded samples",
                                      "exp(3a) = exp(a)^3", std::to_string(fails) + " failures",
                                      fails == 0);
                 }});
  return out;
}

inline std::vector<Check> eta_checks(const Config& cfg) {
  std::vector<Check> out;
  int cap = std::min(4, cfg.caps.max_pbw_degree);
  out.push_back({"eta multiplicative", [cap]() {
                   Ring B = Ring::zmod(Int(27));
                   LieRing g = lie_from_upper(B, 2, {{{0, 1}, Vec{0, 3}}});
                   EtaMap eta = eta_map(g, 1, 2, cap);
                   int fails = 0;
                   for (int a = 0; a < eta.group.size(); ++a)
                     for (int b = 0; b < eta.group.size(); ++b)
                       if (eta.env.multiply(eta.images[a], eta.images[b]) !=
                           eta.images[eta.group.mul(a, b)])
                         ++fails;
                   return make_record("eta-multiplicative",
                                      "[x,y] = 3y, p = 3, m = 1, i = 2, all 81 pairs",
                                      "eta(gh) = eta(g)eta(h) mod 9",
                                      std::to_string(fails) + " failures", fails == 0);
                 }});
  out.push_back({"eta filtration", [cap]() {
                   Ring B = Ring::zmod(Int(27));
                   LieRing g = lie_from_upper(B, 2, {{{0, 1}, Vec{0, 3}}});
                   EtaMap eta = eta_map(g, 1, 2, cap);
                   bool ok = true;
                   for (const auto& img : eta.images)
                     for (const auto& [mon, c] : img) {
                       if (mon.empty()) continue;
                       unsigned l = static_cast<unsigned>(mon.size());
                       unsigned v = l - factorial_valuation(l, Int(3));
                       ok = ok && c % pow_int(Int(3), std::min(v, 2u)) == 0;
                     }
                   return make_record("eta-filtration", "[x,y] = 3y, p = 3, m = 1, i = 2",
                                      "degree-l terms divisible by 3^(l - v_3(l!))",
                                      ok ? "holds on all images" : "violated", ok);
                 }});
  return out;
}

inline std::vector<Check> volodin_checks(const Config&) {
  std::vector<Check> out;
  out.push_back({"volodin stable", []() {
                   AcyclicityReport a = acyclicity_check(3, cyclic_ring(2), 1);
                   return make_record("volodin-stable-vanishing", "X_3(F_2), degree 1",
                                      "reduced H_1 = 0", a.reduced.str(), a.ok);
                 }});
  out.push_back({"volodin wedge", []() {
                   VolodinComplex X = volodin_complex(2, cyclic_ring(2), {}, 2);
                   FGAbelianGroup h = reduced_homology(X, 1);
                   bool ok = h == FGAbelianGroup::from_cyclic_orders({Int(2), Int(2)});
                   return make_record("volodin-wedge-control", "X_2(F_2), degree 1",
                                      "reduced H_1 = Z/2 + Z/2", h.str(), ok);
                 }});
  out.push_back({"volodin relative", []() {
                   VolodinComplex X = volodin_complex(1, cyclic_ring(4), {Vec{2}}, 2);
                   FGAbelianGroup h = X.complex.homology(1);
                   bool ok = h == FGAbelianGroup(0, {2});
                   return make_record("volodin-relative-bar", "X_1(Z/4, (2)), degree 1",
                                      "H_1 = Z/2", h.str(), ok);
                 }});
  return out;
}

inline std::vector<Check> towers_checks(const Config&) {
  std::vector<Check> out;
  out.push_back({"pi tower", []() {
                   CyclicTower T = cyclic_tower(zp_algebra(Int(3), 3), 3);
                   IsogenyVerdict v = quasi_isogeny_verdict(T.projection, 3, 6);
                   bool ok = v.status == IsogenyVerdict::isogeny && factorial(3) % v.multiplier == 0;
                   return make_record("pi-tower-isogeny", "A = Z_3, precision 3, degrees <= 3",
                                      "isogeny with multiplier dividing 3!", v.str(), ok);
                 }});
  out.push_back({"lqt tower", []() {
                   LQTTower tw = lqt_tower(zp_algebra(Int(3), 3), 2, 3);
                   IsogenyVerdict v = quasi_isogeny_verdict(tw.kappa_map, 2, 200);
                   bool ok = v.status == IsogenyVerdict::isogeny && v.multiplier == 1;
                   return make_record("lqt-tower-isogeny", "A = Z_3, precision 3, r = 2",
                                      "isogeny(1) in degrees <= 2", v.str(), ok);
                 }});
  out.push_back({"chevalley scaling", []() {
                   // abelian rank-2 levels over Z/3^i; the inclusion of the
                   // p-rescaled tower is multiplication by 3^n in degree n
                   std::vector<ChainComplex> levels;
                   std::vector<ChainMap> steps, comps;
                   for (unsigned i = 1; i <= 3; ++i) {
                     LieRing g = abelian_lie_ring(Ring::zmod(pow_int(Int(3), i)), 2);
                     levels.push_back(integral_presentation(chevalley_complex(g, 3).complex));
                   }
                   for (int i = 1; i <= 2; ++i) {
                     std::map<int, IntMatrix> id;
                     for (int n = 0; n <= 2; ++n)
                       id[n] = IntMatrix::scalar(levels[i].rank(n), 1);
                     steps.push_back(ChainMap(levels[i], levels[i - 1], std::move(id)));
                   }
                   Tower T(levels, steps);
                   for (int i = 0; i < 3; ++i) {
                     std::map<int, IntMatrix> bl;
                     for (int n = 0; n <= 2; ++n)
                       bl[n] = IntMatrix::scalar(levels[i].rank(n), pow_int(Int(3), n));
                     comps.push_back(ChainMap(levels[i], levels[i], std::move(bl)));
                   }
                   TowerMap f(T, T, comps);
                   IsogenyVerdict v = quasi_isogeny_verdict(f, 2, 100);
                   bool ok = v.status == IsogenyVerdict::isogeny && v.multiplier == 9;
                   return make_record("chevalley-scaling-isogeny",
                                      "abelian rank 2 over Z/3^i, i <= 3, degrees <= 2",
                                      "isogeny(3^2)", v.str(), ok);
                 }});
  out.push_back({"pro zero tower", []() {
                   ChainComplex L1 = two_term(Int(3)), L2 = two_term(Int(9));
                   ChainMap mul(L2, L1,
                                {{0, IntMatrix::scalar(1, Int(3))}, {1, IntMatrix::scalar(1, Int(9))}});
                   Tower T({L1, L2}, {mul});
                   IsogenyVerdict v = pro_zero_verdict(T, 0);
                   return make_record("tower-pro-zero",
                                      "H_0 levels Z/3, Z/9 with multiplication-by-3 transition",
                                      "pro-zero", v.str(), v.status == IsogenyVerdict::pro_zero);
                 }});
  return out;
}

inline std::vector<Check> primitives_checks(const Config&) {
  std::vector<Check> out;
  out.push_back({"primitives weight one", []() {
                   FinRing R = cyclic_ring(5);
                   SymShifted S = sym_shifted(R, 4);
                   ChainComplex T = tensor_complexes(S.complex, S.complex, 4);
                   ChainMap delta = sym_coproduct(S, T, 4);
                   ChainComplex CL = connes_complex(R, 3);
                   bool ok = true;
                   std::string obs;
                   for (int n = 1; n <= 3; ++n) {
                     PrimitivesResult pr = coproduct_and_primitives(S.complex, delta, n);
                     ok = ok && pr.group == CL.homology(n - 1);
                     obs += (n > 1 ? "; " : "") + std::string("Prim_") + std::to_string(n) +
                            " = " + pr.group.str();
                   }
                   return make_record("primitives-weight-one",
                                      "rank-1 input over F_5, degrees <= 3",
                                      "Prim H_n = weight-1 image", obs, ok);
                 }});
  return out;
}

inline std::vector<Check> suite_checks(const std::string& name, const Config& cfg) {
  if (name == "connes-bound") return connes_bound_checks(cfg);
  if (name == "lqt") return lqt_checks(cfg);
  if (name == "lazard-lambda") return lazard_lambda_checks(cfg);
  if (name == "p-special") return p_special_checks(cfg);
  if (name == "ch-exp-log") return ch_exp_log_checks(cfg);
  if (name == "eta") return eta_checks(cfg);
  if (name == "volodin") return volodin_checks(cfg);
  if (name == "towers") return towers_checks(cfg);
  if (name == "primitives") return primitives_checks(cfg);
  throw usage_error("unknown suite: " + name);
}

}  // namespace detail

struct SuiteResult {
  std::string name;
  std::vector<CheckRecord> records;
  std::vector<double> millis;  // human summary only, never in the report
  bool pass = false;
};

inline SuiteResult run_suite_checks(const std::string& name, const Config& cfg) {
  std::vector<detail::Check> checks = detail::suite_checks(name, cfg);
  SuiteResult res;
  res.name = name;
  res.records.resize(checks.size());
  res.millis.resize(checks.size(), 0.0);
  auto run_one = [&](std::size_t k) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      res.records[k] = checks[k].run();
    } catch (const resource_error& e) {
      throw resource_error(checks[k].name + ": " + e.what());
    }
    auto t1 = std::chrono::steady_clock::now();
    res.millis[k] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  };
  if (cfg.workers <= 1) {
    for (std::size_t k = 0; k < checks.size(); ++k) run_one(k);
  } else {
    std::vector<std::future<void>> pend;
    for (std::size_t k = 0; k < checks.size(); ++k) {
      if (static_cast<int>(pend.size()) >= cfg.workers) {
        pend.front().get();
        pend.erase(pend.begin());
      }
      pend.push_back(std::async(std::launch::async, run_one, k));
    }
    for (auto& f : pend) f.get();
  }
  res.pass = true;
  for (const auto& r : res.records) res.pass = res.pass && r.pass;
  return res;
}

inline json report_json(const SuiteResult& res) {
  json checks = json::array();
  for (const auto& r : res.records)
    checks.push_back({{"id", r.id},
                      {"reference", r.reference},
                      {"inputs", r.inputs},
                      {"bound", r.bound},
                      {"observed", r.observed},
                      {"pass", r.pass}});
  return json{{"suite", res.name}, {"status", res.pass ? "pass" : "fail"}, {"checks", checks}};
}

}  // namespace prociso::cli

#endif
