#ifndef PROCISO_TOOLS_IO_HPP
#define PROCISO_TOOLS_IO_HPP

#include "json.hpp"
#include "prociso/fin_group.hpp"
#include "prociso/lazard.hpp"
#include "prociso/lie_ring.hpp"
#include "prociso/padic.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace prociso::cli {

using nlohmann::json;

// malformed input / bad usage; mapped to exit code 2
struct usage_error : std::runtime_error {
  explicit usage_error(const std::string& m) : std::runtime_error(m) {}
};

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw usage_error(path + ": " + e.what());
  }
}

inline void check_fields(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!j.is_object()) throw usage_error(where + ": expected a JSON object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw usage_error(where + ": unknown field \"" + k + "\"");
}

struct BaseInput {
  Ring ring;                 // Z/m, or Z/p^N for p-adic bases
  std::optional<Int> p;      // set for p-adic bases
  unsigned precision = 0;
};

inline BaseInput parse_base(const json& j, const std::string& where) {
  if (j.contains("m")) {
    check_fields(j, {"m"}, where + ".base");
    return BaseInput{Ring::zmod(Int(j.at("m").get<long>())), std::nullopt, 0};
  }
  check_fields(j, {"p", "precision"}, where + ".base");
  if (!j.contains("p") || !j.contains("precision"))
    throw usage_error(where + ".base: need either m or p with precision");
  Int p(j.at("p").get<long>());
  unsigned N = j.at("precision").get<unsigned>();
  if (N < 1) throw usage_error(where + ".base: precision must be >= 1");
  return BaseInput{Ring::zmod(pow_int(p, N)), p, N};
}

inline Vec parse_vec(const json& j, int rank, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank)
    throw usage_error(where + ": expected " + std::to_string(rank) + " coefficients");
  Vec v;
  for (const auto& c : j) v.push_back(Int(c.get<long>()));
  return v;
}

struct RingInput {
  FinRing ring;                       // working truncation for p-adic bases
  std::optional<PadicAlgebra> padic;
  std::vector<Vec> ideal;
};

inline RingInput parse_ring(const json& j, const std::string& where) {
  check_fields(j, {"base", "rank", "unit", "mult", "ideal", "labels"}, where);
  for (const char* f : {"base", "rank", "unit", "mult"})
    if (!j.contains(f)) throw usage_error(where + ": missing field \"" + f + "\"");
  BaseInput base = parse_base(j.at("base"), where);
  int d = j.at("rank").get<int>();
  if (d < 1) throw usage_error(where + ": rank must be >= 1");
  std::vector<std::vector<Vec>> mult(d, std::vector<Vec>(d, Vec(d, 0)));
  for (const auto& e : j.at("mult")) {
    if (!e.is_array() || e.size() != 4) throw usage_error(where + ".mult: entries are [i,j,k,c]");
    int i = e[0].get<int>(), jj = e[1].get<int>(), k = e[2].get<int>();
    if (i < 0 || i >= d || jj < 0 || jj >= d || k < 0 || k >= d)
      throw usage_error(where + ".mult: index out of range");
    mult[i][jj][k] = base.ring.reduce(Int(e[3].get<long>()));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& s : j.at("labels")) labels.push_back(s.get<std::string>());
    if (static_cast<int>(labels.size()) != d)
      throw usage_error(where + ".labels: need one label per basis element");
  } else {
    for (int k = 0; k < d; ++k) labels.push_back("e" + std::to_string(k));
  }
  FinRing R(base.ring, d, std::move(mult), parse_vec(j.at("unit"), d, where + ".unit"),
            std::move(labels));
  std::vector<Vec> ideal;
  if (j.contains("ideal"))
    for (const auto& v : j.at("ideal")) ideal.push_back(parse_vec(v, d, where + ".ideal"));
  std::optional<PadicAlgebra> A;
  if (base.p) A.emplace(*base.p, base.precision, R, ideal);
  return RingInput{std::move(R), std::move(A), std::move(ideal)};
}

inline RingInput load_ring(const std::string& path) { return parse_ring(load_json(path), path); }

inline LieRing parse_lie(const json& j, const std::string& where) {
  check_fields(j, {"base", "rank", "bracket", "labels"}, where);
  for (const char* f : {"base", "rank", "bracket"})
    if (!j.contains(f)) throw usage_error(where + ": missing field \"" + f + "\"");
  BaseInput base = parse_base(j.at("base"), where);
  int d = j.at("rank").get<int>();
  if (d < 1) throw usage_error(where + ": rank must be >= 1");
  std::map<std::pair<int, int>, Vec> upper;
  for (const auto& e : j.at("bracket")) {
    if (!e.is_array() || e.size() != 4)
      throw usage_error(where + ".bracket: entries are [i,j,k,c]");
    int i = e[0].get<int>(), jj = e[1].get<int>(), k = e[2].get<int>();
    if (i < 0 || jj >= d || k < 0 || k >= d || i >= jj)
      throw usage_error(where + ".bracket: need 0 <= i < j < rank (antisymmetry is implied)");
    auto it = upper.find({i, jj});
    if (it == upper.end()) it = upper.emplace(std::pair<int, int>{i, jj}, Vec(d, 0)).first;
    it->second[k] = base.ring.reduce(Int(e[3].get<long>()));
  }
  std::vector<std::string> labels;
  if (j.contains("labels"))
    for (const auto& s : j.at("labels")) labels.push_back(s.get<std::string>());
  return lie_from_upper(base.ring, d, upper, labels);
}

inline LieRing load_lie(const std::string& path) { return parse_lie(load_json(path), path); }

inline FinGroup parse_group(const json& j, const std::string& where) {
  if (j.contains("table")) {
    check_fields(j, {"table", "identity", "labels"}, where);
    if (!j.contains("identity")) throw usage_error(where + ": missing field \"identity\"");
    std::vector<std::vector<int>> tab;
    for (const auto& row : j.at("table")) {
      std::vector<int> r;
      for (const auto& c : row) r.push_back(c.get<int>());
      tab.push_back(std::move(r));
    }
    std::vector<std::string> labels;
    if (j.contains("labels"))
      for (const auto& s : j.at("labels")) labels.push_back(s.get<std::string>());
    return FinGroup(std::move(tab), j.at("identity").get<int>(), std::move(labels));
  }
  if (j.contains("congruence_quotient")) {
    check_fields(j, {"congruence_quotient"}, where);
    const json& c = j.at("congruence_quotient");
    check_fields(c, {"ring", "r", "m", "i"}, where + ".congruence_quotient");
    for (const char* f : {"ring", "r", "m", "i"})
      if (!c.contains(f))
        throw usage_error(where + ".congruence_quotient: missing field \"" + f + "\"");
    RingInput R = parse_ring(c.at("ring"), where + ".congruence_quotient.ring");
    if (!R.padic)
      throw usage_error(where + ".congruence_quotient: ring must have a p-adic base");
    return congruence_quotient(*R.padic, c.at("r").get<int>(), c.at("m").get<unsigned>(),
                               c.at("i").get<unsigned>());
  }
  if (j.contains("level_group")) {
    check_fields(j, {"level_group"}, where);
    const json& c = j.at("level_group");
    check_fields(c, {"lie", "m", "i"}, where + ".level_group");
    for (const char* f : {"lie", "m", "i"})
      if (!c.contains(f)) throw usage_error(where + ".level_group: missing field \"" + f + "\"");
    return level_group(parse_lie(c.at("lie"), where + ".level_group.lie"),
                       c.at("m").get<unsigned>(), c.at("i").get<unsigned>());
  }
  throw usage_error(where + ": expected table, congruence_quotient or level_group");
}

inline FinGroup load_group(const std::string& path) { return parse_group(load_json(path), path); }

inline Ring parse_coeff(const std::string& s) {
  if (s == "Z") return Ring();
  if (s.rfind("Zmod:", 0) == 0) {
    try {
      return Ring::zmod(Int(std::stol(s.substr(5))));
    } catch (const std::exception&) {
      throw usage_error("--coeff: malformed modulus in \"" + s + "\"");
    }
  }
  throw usage_error("--coeff: expected Z or Zmod:k, got \"" + s + "\"");
}

// sparse triplet text: first line "rows cols", then "row col value", 0-indexed
inline IntMatrix read_triplets(const std::string& path, const Ring& base) {
  std::ifstream in(path);
  if (!in) throw usage_error(path + ": cannot open");
  int rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw usage_error(path + ": missing dimension header");
  std::map<std::pair<int, int>, Int> acc;
  int r = 0, c = 0;
  std::string v;
  while (in >> r >> c >> v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw usage_error(path + ": triplet index out of range");
    acc[{r, c}] += Int(v);
  }
  std::vector<Triplet> ts;
  for (auto& [rc, val] : acc) {
    Int red = base.reduce(val);
    if (red != 0) ts.push_back({rc.first, rc.second, red});
  }
  return IntMatrix::from_triplets(rows, cols, base, ts);
}

inline std::string write_triplets(const IntMatrix& M) {
  std::ostringstream os;
  os << M.rows() << " " << M.cols() << "\n";
  std::map<std::pair<int, int>, Int> sorted;
  for (const auto& t : M.entries()) sorted[{t.row, t.col}] = t.val;
  for (const auto& [rc, v] : sorted)
    os << rc.first << " " << rc.second << " " << v.get_str() << "\n";
  return os.str();
}

inline Vec parse_comma_vec(const std::string& s, int rank, const std::string& flag) {
  Vec out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(Int(tok));
    } catch (const std::exception&) {
      throw usage_error(flag + ": malformed integer \"" + tok + "\"");
    }
  }
  if (static_cast<int>(out.size()) != rank)
    throw usage_error(flag + ": expected " + std::to_string(rank) + " comma-separated entries");
  return out;
}

// cycle notation, 1-based: "(1 2 3)(4 5)" -> permutation on 0..n-1
inline std::vector<int> parse_permutation(const std::string& s, int n) {
  std::vector<int> sigma(n);
  for (int k = 0; k < n; ++k) sigma[k] = k;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
      continue;
    }
    if (s[pos] != '(') throw usage_error("--perm: expected cycle notation like \"(1 2 3)\"");
    std::size_t close = s.find(')', pos);
    if (close == std::string::npos) throw usage_error("--perm: unbalanced parenthesis");
    std::stringstream cyc(s.substr(pos + 1, close - pos - 1));
    std::vector<int> c;
    int x = 0;
    while (cyc >> x) {
      if (x < 1 || x > n) throw usage_error("--perm: entry out of range");
      c.push_back(x - 1);
    }
    for (std::size_t k = 0; k < c.size(); ++k) sigma[c[k]] = c[(k + 1) % c.size()];
    pos = close + 1;
  }
  std::vector<bool> seen(n, false);
  for (int v : sigma) {
    if (seen[v]) throw usage_error("--perm: repeated entry");
    seen[v] = true;
  }
  return sigma;
}

}  // namespace prociso::cli

#endif
