#ifndef PROCISO_TOOLS_CLAIMS_HPP
#define PROCISO_TOOLS_CLAIMS_HPP

#include <map>
#include <stdexcept>
#include <string>

namespace prociso::cli {

// Checked-in registry of claim ids; every suite record must reference one of
// these, so a renamed or retired check cannot drift silently.
inline const std::map<std::string, std::string>& claim_registry() {
  static const std::map<std::string, std::string> reg = {
      {"connes-projection-kernel-torsion",
       "degree-n homology of the kernel of the projection onto the Connes complex is killed by "
       "n factorial"},
      {"kappa-chain-map", "kappa commutes with the boundaries exactly"},
      {"kappa-surjective-low-degrees", "kappa is surjective in degrees up to r"},
      {"kappa-kernel-uniform-exponent",
       "one integer kills the kappa kernel homology across all configured base rings"},
      {"theta-duality-pairing",
       "theta pairs against the permutation action through a single trace"},
      {"lambda-coalgebra-dimensions",
       "mod-p homology of the level groups has the dimensions of the free graded coalgebra on "
       "the abelianized Lie ring"},
      {"lambda-transition-image",
       "tower transitions retain the exterior part of level homology and kill the "
       "divided-power part"},
      {"p-special-exponent-bound",
       "integral homology exponents of a p-special group divide the binomial p-power bound"},
      {"ch-associativity",
       "the Campbell-Hausdorff product is associative at the certified precision"},
      {"exp-log-inverse",
       "truncated matrix exp and log are mutually inverse between p^m matrices and the "
       "congruence units"},
      {"exp-power-law", "exp turns scaling by p into a p-th power"},
      {"eta-multiplicative",
       "eta is a homomorphism into the units of the truncated enveloping algebra"},
      {"eta-filtration", "eta lands in 1 plus the positive part of the PBW filtration"},
      {"volodin-stable-vanishing", "reduced Volodin homology vanishes in the stable range"},
      {"volodin-wedge-control",
       "the rank-two Volodin complex over F_2 has reduced H_1 of order four (negative "
       "control outside the stable range)"},
      {"volodin-relative-bar",
       "the relative rank-one Volodin complex is the bar complex of the congruence units"},
      {"pi-tower-isogeny",
       "the projection tower onto the Connes complexes is a quasi-isogeny with multiplier "
       "dividing n factorial"},
      {"lqt-tower-isogeny", "the kappa tower over the p-adic truncations is a quasi-isogeny"},
      {"chevalley-scaling-isogeny",
       "rescaling the bracket by p^m multiplies Chevalley degree n by p^(mn), a quasi-isogeny"},
      {"tower-pro-zero", "towers whose composite transitions vanish are pro-zero"},
      {"primitives-weight-one",
       "primitives of the symmetric coalgebra are exactly the weight-one classes away from "
       "small primes"},
  };
  return reg;
}

struct CheckRecord {
  std::string id;         // claim id, must exist in the registry
  std::string reference;  // registry description
  std::string inputs;
  std::string bound;      // asserted bound / expectation
  std::string observed;   // exact observed data
  bool pass = false;
};

inline CheckRecord make_record(const std::string& id, const std::string& inputs,
                               const std::string& bound, const std::string& observed, bool pass) {
  auto it = claim_registry().find(id);
  if (it == claim_registry().end())
    throw std::logic_error("claim id not in the registry: " + id);
  return CheckRecord{id, it->second, inputs, bound, observed, pass};
}

}  // namespace prociso::cli

#endif
