#include "CLI11.hpp"
#include "claims.hpp"
#include "io.hpp"
#include "suites.hpp"
#include "prociso/chevalley.hpp"
#include "prociso/group_homology.hpp"
#include "prociso/hochschild.hpp"
#include "prociso/lazard.hpp"
#include "prociso/lqt.hpp"
#include "prociso/volodin.hpp"

#include <fstream>
#include <iostream>

namespace {

using namespace prociso;
using prociso::cli::json;
using prociso::cli::usage_error;

struct ComputeOpts {
  std::string ring, lie, group, coeff, format = "human", perm, x, y, dn, dnext;
  std::vector<std::string> matrices;
  int degree = 2, depth = 0, r = 1, boundary = -1;
  unsigned m = 1;
};

std::string vec_str(const Vec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

void print_homology(const std::string& cmd, const std::vector<FGAbelianGroup>& hs,
                    const std::string& format) {
  if (format == "json") {
    json out{{"command", cmd}, {"homology", json::array()}};
    for (const auto& h : hs) out["homology"].push_back(h.str());
    std::cout << out.dump(2) << "\n";
    return;
  }
  for (std::size_t n = 0; n < hs.size(); ++n)
    std::cout << (n ? "; " : "") << "H_" << n << " = " << hs[n].str();
  std::cout << "\n";
}

void print_vector(const std::string& cmd, const std::string& key, const Vec& v,
                  const std::string& format) {
  if (format == "json") {
    json out{{"command", cmd}, {key, json::array()}};
    for (const auto& c : v) out[key].push_back(c.get_str());
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::cout << key << " = " << vec_str(v) << "\n";
}

FinRing need_ring(const ComputeOpts& o, std::vector<Vec>* ideal = nullptr) {
  if (o.ring.empty()) throw usage_error("this subcommand needs --ring FILE");
  prociso::cli::RingInput in = prociso::cli::load_ring(o.ring);
  if (ideal) *ideal = in.ideal;
  return in.ring;
}

LieRing need_lie(const ComputeOpts& o) {
  if (o.lie.empty()) throw usage_error("this subcommand needs --lie FILE");
  return prociso::cli::load_lie(o.lie);
}

FinGroup need_group(const ComputeOpts& o) {
  if (o.group.empty()) throw usage_error("this subcommand needs --group FILE");
  return prociso::cli::load_group(o.group);
}

// --coeff is meaningful where a coefficient choice exists (bar, homology);
// for structure-constant complexes it must match the base ring if given
void check_base_coeff(const ComputeOpts& o, const Ring& base) {
  if (o.coeff.empty()) return;
  if (prociso::cli::parse_coeff(o.coeff) != base)
    throw usage_error("--coeff must match the input base ring " + base.str() +
                      " for this subcommand");
}

void maybe_boundary(const ComputeOpts& o, const ChainComplex& C) {
  if (o.boundary < 0) return;
  std::cout << prociso::cli::write_triplets(C.boundary(o.boundary));
}

int do_compute(const std::string& sub, const ComputeOpts& o) {
  if (sub == "hochschild") {
    FinRing R = need_ring(o);
    check_base_coeff(o, R.base());
    ChainComplex C = hochschild_complex(R, o.degree + 1);
    if (o.boundary >= 0) return maybe_boundary(o, C), 0;
    std::vector<FGAbelianGroup> hs;
    for (int n = 0; n <= o.degree; ++n) hs.push_back(C.homology(n));
    print_homology(sub, hs, o.format);
    return 0;
  }
  if (sub == "cyclic") {
    FinRing R = need_ring(o);
    check_base_coeff(o, R.base());
    ChainComplex C = connes_complex(R, o.degree + 1);
    if (o.boundary >= 0) return maybe_boundary(o, C), 0;
    std::vector<FGAbelianGroup> hs;
    for (int n = 0; n <= o.degree; ++n) hs.push_back(C.homology(n));
    print_homology(sub, hs, o.format);
    return 0;
  }
  if (sub == "chevalley") {
    LieRing g = need_lie(o);
    check_base_coeff(o, g.base());
    ChevalleyComplex CC = chevalley_complex(g, o.degree + 1);
    if (o.boundary >= 0) return maybe_boundary(o, CC.complex), 0;
    std::vector<FGAbelianGroup> hs;
    for (int n = 0; n <= o.degree; ++n) hs.push_back(CC.complex.homology(n));
    print_homology(sub, hs, o.format);
    return 0;
  }
  if (sub == "bar") {
    FinGroup K = need_group(o);
    Ring coeff = o.coeff.empty() ? Ring() : prociso::cli::parse_coeff(o.coeff);
    BarComplex B = bar_complex(K, coeff, o.degree + 1);
    if (o.boundary >= 0) return maybe_boundary(o, B.complex), 0;
    std::vector<FGAbelianGroup> hs;
    for (int n = 0; n <= o.degree; ++n) hs.push_back(B.complex.homology(n));
    print_homology(sub, hs, o.format);
    return 0;
  }
  if (sub == "kappa") {
    FinRing R = need_ring(o);
    check_base_coeff(o, R.base());
    LQTKappa K = kappa(o.r, R, o.degree);
    if (o.format == "json") {
      json out{{"command", sub}, {"kernel_homology", json::array()}, {"surjective", json::array()}};
      for (int n = 0; n <= o.degree; ++n) {
        out["kernel_homology"].push_back(kappa_kernel_homology(K, n).str());
        out["surjective"].push_back(kappa_surjective(K, n));
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    for (int n = 0; n <= o.degree; ++n)
      std::cout << "H_" << n << " Ker(kappa) = " << kappa_kernel_homology(K, n).str()
                << "; surjective: " << (kappa_surjective(K, n) ? "yes" : "no") << "\n";
    return 0;
  }
  if (sub == "theta") {
    FinRing A = need_ring(o);
    if (o.matrices.empty()) throw usage_error("theta needs at least one --matrix");
    FinRing M = matrix_ring(A, o.r);
    std::vector<Vec> F;
    for (const auto& s : o.matrices)
      F.push_back(prociso::cli::parse_comma_vec(s, M.rank(), "--matrix"));
    std::vector<int> sigma =
        prociso::cli::parse_permutation(o.perm, static_cast<int>(F.size()));
    print_vector(sub, "theta", theta_sigma(A, o.r, sigma, F), o.format);
    return 0;
  }
  if (sub == "ch-mult") {
    LieRing g = need_lie(o);
    if (o.depth < 1) throw usage_error("ch-mult needs --depth (the precision)");
    Vec x = prociso::cli::parse_comma_vec(o.x, g.rank(), "--x");
    Vec y = prociso::cli::parse_comma_vec(o.y, g.rank(), "--y");
    print_vector(sub, "product", ch_multiply(g, o.depth, x, y), o.format);
    return 0;
  }
  if (sub == "level-group") {
    LieRing g = need_lie(o);
    if (o.depth < 1) throw usage_error("level-group needs --depth (the level i)");
    FinGroup K = level_group(g, o.m, static_cast<unsigned>(o.depth));
    FGAbelianGroup ab = abelianization(K);
    if (o.format == "json") {
      json out{{"command", sub},
               {"order", K.size()},
               {"abelian", K.is_abelian()},
               {"abelianization", ab.str()}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    std::cout << "order = " << K.size() << "; abelian: " << (K.is_abelian() ? "yes" : "no")
              << "; abelianization = " << ab.str() << "\n";
    return 0;
  }
  if (sub == "volodin") {
    std::vector<Vec> ideal;
    FinRing R = need_ring(o, &ideal);
    check_base_coeff(o, Ring());
    VolodinComplex X = volodin_complex(o.r, R, ideal, std::max(o.degree, 1));
    if (o.boundary >= 0) return maybe_boundary(o, X.complex), 0;
    std::vector<FGAbelianGroup> hs;
    for (int n = 0; n < X.degree_cap; ++n) hs.push_back(reduced_homology(X, n));
    if (o.format == "json") {
      json out{{"command", sub}, {"reduced_homology", json::array()}};
      for (const auto& h : hs) out["reduced_homology"].push_back(h.str());
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    for (std::size_t n = 0; n < hs.size(); ++n)
      std::cout << (n ? "; " : "") << "reduced H_" << n << " = " << hs[n].str();
    std::cout << "\n";
    return 0;
  }
  if (sub == "homology") {
    if (o.dn.empty() || o.dnext.empty())
      throw usage_error("homology needs --dn FILE and --dnext FILE (sparse triplet format)");
    Ring base = o.coeff.empty() ? Ring() : prociso::cli::parse_coeff(o.coeff);
    IntMatrix dn = prociso::cli::read_triplets(o.dn, base);
    IntMatrix dn1 = prociso::cli::read_triplets(o.dnext, base);
    FGAbelianGroup h = homology_general(dn, dn1);
    if (o.format == "json") {
      std::cout << json{{"command", sub}, {"homology", h.str()}}.dump(2) << "\n";
      return 0;
    }
    std::cout << "H = " << h.str() << "\n";
    return 0;
  }
  throw usage_error("unknown compute subcommand: " + sub);
}

int do_suite(const std::string& name, const std::string& config_path,
             const std::string& output_path) {
  prociso::cli::Config cfg = prociso::cli::parse_config(config_path);
  prociso::cli::SuiteResult res = prociso::cli::run_suite_checks(name, cfg);
  std::string report = prociso::cli::report_json(res).dump(2) + "\n";
  std::ostream* human = &std::cout;
  if (!output_path.empty()) {
    std::ofstream out(output_path);
    if (!out) throw usage_error(output_path + ": cannot write");
    out << report;
  } else {
    std::cout << report;
    human = &std::cerr;
  }
  for (std::size_t k = 0; k < res.records.size(); ++k) {
    const auto& r = res.records[k];
    *human << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " (" << r.inputs << "): " << r.observed
           << " [" << static_cast<long>(res.millis[k]) << " ms]\n";
  }
  *human << "suite " << name << ": " << (res.pass ? "pass" : "FAIL") << "\n";
  return res.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact chain-level invariants of finite rings, Lie rings and groups"};
  app.require_subcommand(1);

  std::string suite_name, config_path, output_path;
  CLI::App* suite = app.add_subcommand("suite", "run a named verification suite");
  suite->add_option("name", suite_name, "suite name")->required();
  suite->add_option("--config", config_path, "JSON config (seed, workers, caps)");
  suite->add_option("--output", output_path, "report path (defaults to stdout)");

  std::string compute_name;
  ComputeOpts o;
  CLI::App* compute = app.add_subcommand("compute", "compute one invariant");
  compute->add_option("subcommand", compute_name, "what to compute")->required();
  compute->add_option("--ring", o.ring, "ring input file");
  compute->add_option("--lie", o.lie, "Lie ring input file");
  compute->add_option("--group", o.group, "group input file");
  compute->add_option("--degree", o.degree, "top degree (default 2)");
  compute->add_option("--depth", o.depth, "depth / precision / level");
  compute->add_option("--coeff", o.coeff, "coefficients: Z or Zmod:k");
  compute->add_option("--format", o.format, "human or json")
      ->check(CLI::IsMember({"human", "json"}));
  compute->add_option("--r", o.r, "matrix size r");
  compute->add_option("--m", o.m, "congruence shift m");
  compute->add_option("--perm", o.perm, "permutation in cycle notation, e.g. \"(1 2 3)\"");
  compute->add_option("--matrix", o.matrices, "matrix coordinates, comma separated (repeatable)");
  compute->add_option("--x", o.x, "first argument vector");
  compute->add_option("--y", o.y, "second argument vector");
  compute->add_option("--dn", o.dn, "boundary d_n triplet file");
  compute->add_option("--dnext", o.dnext, "boundary d_{n+1} triplet file");
  compute->add_option("--boundary", o.boundary, "print this boundary matrix as triplets instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*suite) return do_suite(suite_name, config_path, output_path);
    return do_compute(compute_name, o);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const prociso::resource_error& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const prociso::contract_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
