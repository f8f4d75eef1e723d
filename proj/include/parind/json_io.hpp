#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "parind/algebra.hpp"
#include "parind/common.hpp"
#include "parind/lattice.hpp"
#include "parind/verify.hpp"

namespace parind {

// nlohmann objects are backed by std::map, so dumped keys are sorted and
// identical inputs produce byte-identical documents.
using Json = nlohmann::json;

/// Bad user input (flags, spec files); reported with exit code 2 and the
/// offending field named.
class usage_error : public error {
 public:
  explicit usage_error(const std::string& what) : error(what) {}
};

inline std::string qstr(const mpq_class& q) { return q.get_str(); }

inline mpq_class parse_q(const std::string& s, const std::string& field) {
  if (s.empty()) throw usage_error(field + ": empty rational");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw usage_error(field + ": not a rational: '" + s + "'");
  if (q.get_den() == 0) throw usage_error(field + ": zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline FieldTag parse_field(const std::string& s, const std::string& field) {
  if (s == "Q" || s == "q") return rationals();
  if (s.size() > 1 && (s[0] == 'F' || s[0] == 'f')) {
    try {
      return prime_field(std::stoull(s.substr(1)));
    } catch (const error& e) {
      throw usage_error(field + ": " + e.what());
    } catch (const std::exception&) {
      throw usage_error(field + ": bad prime in '" + s + "'");
    }
  }
  throw usage_error(field + ": expected Q or F<prime>, got '" + s + "'");
}

// ---------------------------------------------------------------------------
// algebra elements

inline Json algebra_to_json(const AlgebraElement& a) {
  Json arr = Json::array();
  for (const auto& [g, c] : a.terms()) {
    Json t;
    t["element"] = a.host()->elem(g).str();
    t["coeff"] = c.str();
    arr.push_back(std::move(t));
  }
  return arr;
}

// ---------------------------------------------------------------------------
// lattices and lattice functions

inline Json lattice_to_json(const PAdicLattice& l) {
  Json cols = Json::array();
  for (const auto& c : l.basis()) {
    Json col = Json::array();
    for (const auto& x : c) col.push_back(qstr(x));
    cols.push_back(std::move(col));
  }
  Json j;
  j["dim"] = l.dim();
  j["columns"] = std::move(cols);
  return j;
}

/// {"n": 2, "p": 3, "jumps": ["0", "1/2"], "bases": [cols, cols]} where each
/// cols entry lists the generating columns of the lattice at that jump.
inline Json lattice_function_to_json(const LatticeFunction& lf) {
  Json j;
  j["n"] = lf.dim();
  j["p"] = lf.p();
  Json jumps = Json::array(), bases = Json::array();
  for (const auto& r : lf.jumps()) jumps.push_back(qstr(r));
  for (const auto& l : lf.lattices()) {
    Json cols = Json::array();
    for (const auto& c : l.basis()) {
      Json col = Json::array();
      for (const auto& x : c) col.push_back(qstr(x));
      cols.push_back(std::move(col));
    }
    bases.push_back(std::move(cols));
  }
  j["jumps"] = std::move(jumps);
  j["bases"] = std::move(bases);
  return j;
}

inline LatticeFunction lattice_function_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw usage_error(where + ": expected an object");
  for (const char* key : {"n", "p", "jumps", "bases"})
    if (!j.contains(key)) throw usage_error(where + "." + key + ": missing");
  if (!j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0)
    throw usage_error(where + ".n: expected a positive integer");
  if (!j["p"].is_number_unsigned() || j["p"].get<unsigned long>() < 2)
    throw usage_error(where + ".p: expected an integer >= 2");
  std::size_t n = j["n"].get<std::size_t>();
  unsigned long p = j["p"].get<unsigned long>();
  const Json& jumps = j["jumps"];
  const Json& bases = j["bases"];
  if (!jumps.is_array() || jumps.empty())
    throw usage_error(where + ".jumps: expected a nonempty array");
  if (!bases.is_array() || bases.size() != jumps.size())
    throw usage_error(where + ".bases: expected one basis per jump");
  std::vector<mpq_class> rs;
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    if (!jumps[i].is_string())
      throw usage_error(where + ".jumps[" + std::to_string(i) + "]: expected a string rational");
    rs.push_back(parse_q(jumps[i].get<std::string>(),
                         where + ".jumps[" + std::to_string(i) + "]"));
  }
  std::vector<PAdicLattice> ls;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    std::string bw = where + ".bases[" + std::to_string(i) + "]";
    const Json& cols = bases[i];
    if (!cols.is_array() || cols.size() != n)
      throw usage_error(bw + ": expected " + std::to_string(n) + " columns");
    latdetail::QMat m;
    for (std::size_t c = 0; c < n; ++c) {
      if (!cols[c].is_array() || cols[c].size() != n)
        throw usage_error(bw + "[" + std::to_string(c) + "]: expected " + std::to_string(n) +
                          " entries");
      std::vector<mpq_class> col;
      for (std::size_t r = 0; r < n; ++r) {
        if (!cols[c][r].is_string())
          throw usage_error(bw + "[" + std::to_string(c) + "][" + std::to_string(r) +
                            "]: expected a string rational");
        col.push_back(parse_q(cols[c][r].get<std::string>(),
                              bw + "[" + std::to_string(c) + "][" + std::to_string(r) + "]"));
      }
      m.push_back(std::move(col));
    }
    try {
      ls.emplace_back(p, std::move(m));
    } catch (const error& e) {
      throw usage_error(bw + ": " + e.what());
    }
  }
  try {
    return LatticeFunction(std::move(rs), std::move(ls));
  } catch (const error& e) {
    throw usage_error(where + ": " + e.what());
  }
}

inline Json ray_report_to_json(const RayJumpReport& rep) {
  Json j;
  Json jumps = Json::array();
  for (const auto& t : rep.jumps) jumps.push_back(qstr(t));
  j["jumps"] = std::move(jumps);
  j["samples"] = rep.samples;
  j["alternation_ok"] = rep.alternation_ok;
  j["strict_at_jumps"] = rep.strict_at_jumps;
  j["upper_nondecreasing"] = rep.upper_nondecreasing;
  j["lower_nonincreasing"] = rep.lower_nonincreasing;
  j["growth_ok"] = rep.growth_ok;
  j["all_ok"] = rep.all_ok();
  return j;
}

// ---------------------------------------------------------------------------
// verification specs and results

inline Json check_spec_to_json(const CheckSpec& s) {
  Json j;
  j["name"] = s.name;
  j["group"] = s.group;
  j["pattern"] = s.pattern;
  j["idempotent"] = s.idempotent;
  j["target"] = s.target;
  j["field"] = s.field.str();
  j["expected"] = s.expected;
  j["guardrail"] = s.guardrail;
  return j;
}

inline CheckSpec check_spec_from_json(const Json& j, const std::string& where,
                                      std::size_t default_guardrail) {
  if (!j.is_object()) throw usage_error(where + ": expected an object");
  CheckSpec s;
  s.guardrail = default_guardrail;
  auto need_string = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string())
      throw usage_error(where + "." + key + ": expected a string");
    return j[key].get<std::string>();
  };
  s.name = need_string("name");
  s.group = need_string("group");
  auto opt_string = [&](const char* key, std::string& into) {
    if (!j.contains(key)) return;
    if (!j[key].is_string()) throw usage_error(where + "." + key + ": expected a string");
    into = j[key].get<std::string>();
  };
  opt_string("pattern", s.pattern);
  opt_string("idempotent", s.idempotent);
  opt_string("target", s.target);
  opt_string("expected", s.expected);
  if (s.expected != "true" && s.expected != "false" && s.expected != "open")
    throw usage_error(where + ".expected: must be true, false or open");
  if (j.contains("field")) {
    if (!j["field"].is_string()) throw usage_error(where + ".field: expected a string");
    s.field = parse_field(j["field"].get<std::string>(), where + ".field");
  }
  if (j.contains("guardrail")) {
    if (!j["guardrail"].is_number_unsigned() || j["guardrail"].get<std::size_t>() == 0)
      throw usage_error(where + ".guardrail: expected a positive integer");
    s.guardrail = j["guardrail"].get<std::size_t>();
  }
  return s;
}

inline Json check_result_to_json(const CheckResult& r) {
  Json j;
  j["name"] = r.name;
  j["verdict"] = r.verdict;
  j["witness_digest"] = r.witness_digest;
  j["detail"] = r.detail;
  return j;
}

}  // namespace parind
