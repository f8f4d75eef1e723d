#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "parind/algebra.hpp"
#include "parind/common.hpp"
#include "parind/group.hpp"
#include "parind/iwahori.hpp"

namespace parind {

/**
 * Batch harness for the finite-level idempotent membership claims.  Each
 * check is a pure computation described by a CheckSpec; expected verdicts
 * live in the registry, never in the check code, so a falsifying instance
 * is reported rather than explained away.
 */
struct CheckSpec {
  std::string name;                  // "<check-type>/<label>"
  std::string group;                 // congruence host or bundled decomposition key
  std::string pattern = "borel";     // borel | borel-degenerate | block-2-1
  std::string idempotent = "unit";   // unit | level-zero | level-zero-full |
                                     // character-trivial | character-heisenberg |
                                     // character-degenerate | sign-central
  std::string target = "standard";   // standard | identity (negative control)
  FieldTag field = rationals();
  std::string expected = "true";     // "true" | "false" | "open"
  std::size_t guardrail = 5000;      // ideal-closure dimension bound
};

struct CheckResult {
  std::string name;
  std::string verdict;  // "true" | "false" | "open"
  std::string witness_digest;
  long long wall_time_ms = 0;
  std::string detail;
};

/// "open" expectations never fail; otherwise the verdict must match.
inline bool matches_expected(const CheckSpec& spec, const CheckResult& res) {
  return spec.expected == "open" || res.verdict == spec.expected;
}

// ---------------------------------------------------------------------------
// subgroup extraction on full congruence quotients

struct ParahoricData {
  GroupRef host;
  Subgroup U, Uplus, Ubar, M, Mplus;
};

inline ParahoricData borel_parahoric(const GroupRef& host) {
  if (host->dim() != 2) throw error("borel pattern extraction needs 2x2 matrices");
  unsigned p = host->p();
  auto upper = [](const GroupElement& g) {
    return g.at(0, 0) == 1 && g.at(1, 1) == 1 && g.at(1, 0) == 0;
  };
  auto lower = [](const GroupElement& g) {
    return g.at(0, 0) == 1 && g.at(1, 1) == 1 && g.at(0, 1) == 0;
  };
  auto diag = [](const GroupElement& g) { return g.at(0, 1) == 0 && g.at(1, 0) == 0; };
  ParahoricData d;
  d.host = host;
  d.U = Subgroup::from_predicate(host, upper, "U");
  d.Uplus = Subgroup::from_predicate(
      host, [&](const GroupElement& g) { return upper(g) && g.at(0, 1) % p == 0; }, "U+");
  d.Ubar = Subgroup::from_predicate(host, lower, "Ubar");
  d.M = Subgroup::from_predicate(host, diag, "M");
  d.Mplus = Subgroup::from_predicate(
      host,
      [&](const GroupElement& g) {
        return diag(g) && g.at(0, 0) % p == 1 && g.at(1, 1) % p == 1;
      },
      "M+");
  return d;
}

/// (2,1) block pattern on a 3x3 host; Uborel is the radical of the minimal
/// refinement, the "finer" unipotent group entering the general claim.
struct BlockParahoricData {
  GroupRef host;
  Subgroup U, Ubar, M, Mplus, Uborel;
};

inline BlockParahoricData block21_parahoric(const GroupRef& host) {
  if (host->dim() != 3) throw error("(2,1) pattern extraction needs 3x3 matrices");
  unsigned p = host->p();
  auto unip = [](const GroupElement& g) {
    return g.at(0, 0) == 1 && g.at(1, 1) == 1 && g.at(2, 2) == 1;
  };
  auto blockdiag = [](const GroupElement& g) {
    return g.at(0, 2) == 0 && g.at(1, 2) == 0 && g.at(2, 0) == 0 && g.at(2, 1) == 0;
  };
  BlockParahoricData d;
  d.host = host;
  d.U = Subgroup::from_predicate(
      host,
      [&](const GroupElement& g) {
        return unip(g) && g.at(0, 1) == 0 && g.at(1, 0) == 0 && g.at(2, 0) == 0 &&
               g.at(2, 1) == 0;
      },
      "U(2,1)");
  d.Ubar = Subgroup::from_predicate(
      host,
      [&](const GroupElement& g) {
        return unip(g) && g.at(0, 1) == 0 && g.at(1, 0) == 0 && g.at(0, 2) == 0 &&
               g.at(1, 2) == 0;
      },
      "Ubar(2,1)");
  d.M = Subgroup::from_predicate(host, blockdiag, "M(2,1)");
  d.Mplus = Subgroup::from_predicate(
      host,
      [&](const GroupElement& g) {
        if (!blockdiag(g)) return false;
        for (unsigned i = 0; i < 3; ++i)
          for (unsigned j = 0; j < 3; ++j)
            if (g.at(i, j) % p != (i == j ? 1u : 0u)) return false;
        return true;
      },
      "M+(2,1)");
  d.Uborel = Subgroup::from_predicate(
      host,
      [&](const GroupElement& g) {
        return unip(g) && g.at(1, 0) == 0 && g.at(2, 0) == 0 && g.at(2, 1) == 0;
      },
      "U(minimal)");
  return d;
}

// ---------------------------------------------------------------------------
// sizing guardrail

/// Order of the named congruence quotient, computed without enumerating it.
inline unsigned long long projected_congruence_order(Family fam, unsigned p, unsigned level) {
  unsigned n = (fam == Family::GL3) ? 3u : 2u;
  unsigned long long pn = 1;
  for (unsigned i = 0; i < n; ++i) pn *= p;
  unsigned long long base = 1, pi = 1;
  for (unsigned i = 0; i < n; ++i) {
    base *= (pn - pi);
    pi *= p;
  }
  if (fam == Family::SL2) base /= (p - 1);
  unsigned dim = (fam == Family::SL2) ? 3u : n * n;  // dimension of the Lie algebra
  unsigned long long lift = 1;
  for (unsigned i = 1; i < level; ++i)
    for (unsigned k = 0; k < dim; ++k) lift *= p;
  return base * lift;
}

/// Resolve a check's ambient group, refusing to enumerate past the guardrail.
inline GroupRef check_host(const std::string& group, std::size_t guardrail) {
  struct Entry {
    const char* key;
    Family fam;
    unsigned p, level;
  };
  static const Entry table[] = {
      {"sl2-mod4", Family::SL2, 2, 2},  {"sl2-mod9", Family::SL2, 3, 2},
      {"gl2-mod4", Family::GL2, 2, 2},  {"gl3-mod2", Family::GL3, 2, 1},
      {"gl3-mod4", Family::GL3, 2, 2},
  };
  for (const auto& e : table)
    if (group == e.key) {
      unsigned long long order = projected_congruence_order(e.fam, e.p, e.level);
      if (order > guardrail)
        throw error("group " + group + " has order " + std::to_string(order) +
                    ", so the ideal closure could reach dimension " + std::to_string(order) +
                    " and exceed the guardrail of " + std::to_string(guardrail) +
                    "; aborting before enumeration");
      return FiniteGroup::congruence_quotient(e.fam, e.p, e.level);
    }
  throw error("unknown check group '" + group + "'");
}

// ---------------------------------------------------------------------------
// character data for the essentially-level-zero checks

struct CharacterData {
  GroupRef gdag;                 // ambient group
  Subgroup udag, ubardag, mdag;  // its triangular decomposition parts
  Subgroup ustar, ubarstar;      // the smaller pair the character ignores
  Subgroup gstar;                // domain of the character
  std::map<std::uint32_t, Scalar> theta;  // value at each element of gstar
  FieldTag field = rationals();
};

/**
 * Assemble the character domain G* = U* M Ubar* inside a bundled
 * decomposition and define theta(u m ubar) = chi(m).  Uniqueness of the
 * factorization is verified by counting; collisions with conflicting values
 * throw.
 */
inline CharacterData make_character_data(
    const IwahoriDecomposition& dec,
    const std::function<bool(const GroupElement&)>& in_ustar,
    const std::function<bool(const GroupElement&)>& in_ubarstar,
    const std::function<Scalar(const GroupElement&)>& chi, FieldTag f) {
  CharacterData cd;
  cd.gdag = dec.host;
  cd.udag = dec.U;
  cd.ubardag = dec.Ubar;
  cd.mdag = dec.M;
  cd.field = f;
  const GroupRef& host = cd.gdag;
  std::vector<std::uint32_t> us, ubs;
  for (auto i : dec.U.indices())
    if (in_ustar(host->elem(i))) us.push_back(i);
  for (auto i : dec.Ubar.indices())
    if (in_ubarstar(host->elem(i))) ubs.push_back(i);
  cd.ustar = Subgroup(host, std::move(us), "U*");
  cd.ubarstar = Subgroup(host, std::move(ubs), "Ubar*");
  std::vector<std::uint32_t> gs;
  for (auto u : cd.ustar.indices())
    for (auto m : dec.M.indices())
      for (auto ub : cd.ubarstar.indices()) {
        std::uint32_t g = host->mult(host->mult(u, m), ub);
        Scalar v = chi(host->elem(m));
        auto it = cd.theta.find(g);
        if (it == cd.theta.end()) {
          cd.theta.emplace(g, v);
          gs.push_back(g);
        } else if (!(it->second == v)) {
          throw error("character ill-defined: conflicting values on one element");
        }
      }
  if (cd.theta.size() != cd.ustar.size() * dec.M.size() * cd.ubarstar.size())
    throw error("star factorization is not unique");
  cd.gstar = Subgroup(host, std::move(gs), "G*");
  return cd;
}

namespace detail {

/// Canonical coset representatives of big/small with an element -> rep map.
inline std::pair<std::map<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>>
left_coset_reps(const GroupRef& host, const Subgroup& big, const Subgroup& small) {
  std::map<std::uint32_t, std::uint32_t> to_rep;
  std::vector<std::uint32_t> reps;
  for (auto u : big.indices()) {
    if (to_rep.count(u)) continue;  // ascending scan: u is minimal in its coset
    reps.push_back(u);
    for (auto s : small.indices()) to_rep[host->mult(u, s)] = u;
  }
  return {std::move(to_rep), std::move(reps)};
}

}  // namespace detail

/**
 * Staged check for a character-based central idempotent: verify the
 * hypotheses, test nondegeneracy of the commutator pairing on the quotients,
 * then test two-sided membership of the averaged character.  Nondegeneracy
 * is expected to imply membership; a counterexample is reported as a plain
 * "false" so the registry comparison flags it.
 */
inline CheckResult check_essentially_level_zero(const CheckSpec& spec, const CharacterData& cd) {
  CheckResult res;
  res.name = spec.name;
  const GroupRef& host = cd.gdag;
  FieldTag f = cd.field;
  std::vector<std::string> broken;

  for (auto i : cd.ustar.indices())
    if (!cd.udag.contains(i)) {
      broken.push_back("U* escapes the upper part");
      break;
    }
  for (auto i : cd.ubarstar.indices())
    if (!cd.ubardag.contains(i)) {
      broken.push_back("Ubar* escapes the lower part");
      break;
    }

  Scalar one = Scalar::one(f);
  bool homo = true, trivial_small = true;
  for (auto a : cd.gstar.indices()) {
    for (auto b : cd.gstar.indices())
      if (!(cd.theta.at(host->mult(a, b)) == cd.theta.at(a) * cd.theta.at(b))) {
        homo = false;
        break;
      }
    if (!homo) break;
  }
  if (!homo) broken.push_back("theta is not a homomorphism");
  for (auto u : cd.ustar.indices())
    if (!(cd.theta.at(u) == one)) trivial_small = false;
  for (auto u : cd.ubarstar.indices())
    if (!(cd.theta.at(u) == one)) trivial_small = false;
  if (!trivial_small) broken.push_back("theta is nontrivial on the small pair");

  bool comm_ok = true;
  for (std::uint32_t g = 0; g < host->size() && comm_ok; ++g)
    for (std::uint32_t h = 0; h < host->size(); ++h) {
      std::uint32_t c = host->mult(host->mult(g, h),
                                   host->mult(host->inverse(g), host->inverse(h)));
      if (!cd.gstar.contains(c)) {
        comm_ok = false;
        break;
      }
    }
  if (!comm_ok) broken.push_back("commutators escape the character domain");

  bool normalized = true;
  for (std::uint32_t g = 0; g < host->size() && normalized; ++g)
    for (auto x : cd.gstar.indices()) {
      std::uint32_t cx = host->conj(g, x);
      if (!cd.gstar.contains(cx) || !(cd.theta.at(cx) == cd.theta.at(x))) {
        normalized = false;
        break;
      }
    }
  if (!normalized) broken.push_back("theta is not conjugation-invariant");

  if (!broken.empty()) {
    res.verdict = "open";
    res.detail = "hypotheses not satisfied: " + broken[0];
    for (std::size_t i = 1; i < broken.size(); ++i) res.detail += "; " + broken[i];
    res.witness_digest = hex64(fnv1a(res.detail));
    return res;
  }

  // commutator pairing on the coset quotients
  auto [urep, ureps] = detail::left_coset_reps(host, cd.udag, cd.ustar);
  auto [vrep, vreps] = detail::left_coset_reps(host, cd.ubardag, cd.ubarstar);
  std::map<std::pair<std::uint32_t, std::uint32_t>, Scalar> pairing;
  bool constant_on_cosets = true;
  for (auto u : cd.udag.indices())
    for (auto v : cd.ubardag.indices()) {
      std::uint32_t c = host->mult(host->mult(u, v),
                                   host->mult(host->inverse(u), host->inverse(v)));
      Scalar val = cd.theta.at(c);
      auto key = std::make_pair(urep.at(u), vrep.at(v));
      auto it = pairing.find(key);
      if (it == pairing.end())
        pairing.emplace(key, val);
      else if (!(it->second == val))
        constant_on_cosets = false;
    }
  if (!constant_on_cosets) {
    res.verdict = "open";
    res.detail = "hypotheses not satisfied: the pairing is not constant on cosets";
    res.witness_digest = hex64(fnv1a(res.detail));
    return res;
  }

  std::uint32_t utriv = urep.at(host->identity()), vtriv = vrep.at(host->identity());
  bool nondeg = true;
  for (auto ur : ureps) {
    if (ur == utriv) continue;
    bool hit = false;
    for (auto vr : vreps)
      if (!(pairing.at({ur, vr}) == one)) hit = true;
    if (!hit) nondeg = false;
  }
  for (auto vr : vreps) {
    if (vr == vtriv) continue;
    bool hit = false;
    for (auto ur : ureps)
      if (!(pairing.at({ur, vr}) == one)) hit = true;
    if (!hit) nondeg = false;
  }

  // averaged character and the two-sided membership
  Scalar inv = Scalar::inverse_of_integer(cd.gstar.size(), f);
  AlgebraElement th(host, f);
  for (auto g : cd.gstar.indices()) th.add_term(g, inv * cd.theta.at(host->inverse(g)));
  AlgebraElement t = haar_idempotent(cd.udag, f) * haar_idempotent(cd.ubardag, f);
  MembershipWitness w = two_sided_ideal_membership(th, t, spec.guardrail);
  std::string memb = w.member ? "true" : "false";
  res.witness_digest = w.digest;
  if (nondeg) {
    res.verdict = memb;
    res.detail = "pairing nondegenerate; two-sided membership " + memb;
    if (!w.member) res.detail += " (nondegeneracy did not force membership)";
  } else {
    res.verdict = "open";
    res.detail = "pairing degenerate; informational membership " + memb;
  }
  return res;
}

// ---------------------------------------------------------------------------
// the registry of named checks

inline std::vector<CheckSpec> verification_registry() {
  auto mk = [](std::string name, std::string group, std::string pattern, std::string idem,
               std::string target, FieldTag f, std::string expected) {
    CheckSpec s;
    s.name = std::move(name);
    s.group = std::move(group);
    s.pattern = std::move(pattern);
    s.idempotent = std::move(idem);
    s.target = std::move(target);
    s.field = f;
    s.expected = std::move(expected);
    return s;
  };
  FieldTag q = rationals(), f5 = prime_field(5), f7 = prime_field(7);
  return {
      mk("minimal-membership/sl2-z4", "sl2-mod4", "borel", "unit", "standard", q, "true"),
      mk("minimal-membership/sl2-z9", "sl2-mod9", "borel", "unit", "standard", q, "true"),
      mk("minimal-membership/gl2-z4", "gl2-mod4", "borel", "unit", "standard", q, "true"),
      mk("minimal-membership/degenerate-uplus-equals-u", "sl2-mod4", "borel-degenerate", "unit",
         "standard", q, "true"),
      mk("minimal-membership/negative-control-identity", "sl2-mod4", "borel", "unit", "identity",
         q, "false"),
      mk("level-zero-membership/gl2-z4", "gl2-mod4", "borel", "level-zero", "standard", q,
         "true"),
      mk("level-zero-membership/sl2-z9", "sl2-mod9", "borel", "level-zero", "standard", q,
         "true"),
      mk("level-zero-membership/sl2-z9-coarse", "sl2-mod9", "borel", "level-zero-full",
         "standard", q, "true"),
      mk("essentially-level-zero/trivial-theta", "sl2-p2-level4-pro-p", "borel",
         "character-trivial", "standard", q, "true"),
      mk("essentially-level-zero/heisenberg-p2", "sl2-p2-level8-pro-p", "borel",
         "character-heisenberg", "standard", f5, "true"),
      mk("essentially-level-zero/heisenberg-p3", "sl2-p3-level9-pro-p", "borel",
         "character-heisenberg", "standard", f7, "true"),
      mk("essentially-level-zero/degenerate-pairing", "sl2-p2-level8-pro-p", "borel",
         "character-degenerate", "standard", f5, "open"),
      mk("hl-general/gl3-f2-parabolic21", "gl3-mod2", "block-2-1", "level-zero", "standard", q,
         "true"),
      mk("hl-general/unit-minimal-consistency", "sl2-mod4", "borel", "unit", "standard", q,
         "true"),
      mk("hl-general/sign-idempotent", "sl2-mod4", "borel", "sign-central", "standard", q,
         "open"),
  };
}

inline const CheckSpec& registry_check(const std::string& name) {
  static const std::vector<CheckSpec> reg = verification_registry();
  for (const auto& s : reg)
    if (s.name == name) return s;
  std::string names;
  for (const auto& s : reg) names += (names.empty() ? "" : ", ") + s.name;
  throw error("unknown check '" + name + "' (available: " + names + ")");
}

// ---------------------------------------------------------------------------
// check dispatch

namespace detail {

inline CheckResult membership_result(const CheckSpec& spec, const MembershipWitness& w) {
  CheckResult res;
  res.name = spec.name;
  res.verdict = w.member ? "true" : "false";
  res.witness_digest = w.digest;
  res.detail = w.member ? ("witness with " + std::to_string(w.coeffs.size()) +
                           " terms, recombination verified")
                        : "target lies outside the ideal";
  return res;
}

inline CharacterData character_for(const CheckSpec& spec) {
  IwahoriDecomposition dec = build_instance_by_key(spec.group);
  if (dec.host->size() > spec.guardrail)
    throw error("ambient group of " + spec.group + " larger than the guardrail");
  unsigned long p = dec.host->p();
  auto whole = [](const GroupElement&) { return true; };
  if (spec.idempotent == "character-trivial") {
    auto triv = [f = spec.field](const GroupElement&) { return Scalar::one(f); };
    return make_character_data(dec, whole, whole, triv, spec.field);
  }
  if (p == 2) {
    // inside SL2(Z/8): U* = u(2x), Ubar* = ubar(4y); chi on the diagonal has
    // order two, or is trivial for the engineered degenerate pairing
    auto in_ustar = [](const GroupElement& g) { return g.at(0, 1) % 2 == 0; };
    auto in_ubarstar = [](const GroupElement& g) { return g.at(1, 0) % 4 == 0; };
    if (spec.idempotent == "character-degenerate") {
      auto triv = [f = spec.field](const GroupElement&) { return Scalar::one(f); };
      return make_character_data(dec, in_ustar, in_ubarstar, triv, spec.field);
    }
    auto chi = [f = spec.field](const GroupElement& m) {
      return m.at(0, 0) % 4 == 3 ? Scalar::modular(f.ell - 1, f) : Scalar::one(f);
    };
    return make_character_data(dec, in_ustar, in_ubarstar, chi, spec.field);
  }
  // inside SL2(Z/9): U* = u(3x), Ubar* trivial; chi has order three via a
  // cube root of unity in the coefficient field
  auto in_ustar = [](const GroupElement& g) { return g.at(0, 1) % 3 == 0; };
  auto in_ubarstar = [](const GroupElement& g) { return g.at(1, 0) == 0; };
  std::uint64_t zeta = 0;
  for (std::uint64_t c = 2; c < spec.field.ell; ++c)
    if (c * c % spec.field.ell != 1 && c * c % spec.field.ell * c % spec.field.ell == 1) {
      zeta = c;
      break;
    }
  if (!zeta) throw error("no cube root of unity in the chosen field");
  auto chi = [f = spec.field, zeta](const GroupElement& m) {
    unsigned k = (m.at(0, 0) - 1) / 3;  // diagonal entries are 1, 4, 7
    std::uint64_t v = 1;
    for (unsigned i = 0; i < k; ++i) v = v * zeta % f.ell;
    return Scalar::modular(v, f);
  };
  return make_character_data(dec, in_ustar, in_ubarstar, chi, spec.field);
}

}  // namespace detail

inline CheckResult run_check(const CheckSpec& spec) {
  auto start = std::chrono::steady_clock::now();
  CheckResult res;
  std::string type = spec.name.substr(0, spec.name.find('/'));
  FieldTag f = spec.field;

  if (type == "minimal-membership") {
    GroupRef host = check_host(spec.group, spec.guardrail);
    ParahoricData pd = borel_parahoric(host);
    if (spec.pattern == "borel-degenerate")
      pd.Uplus = pd.U;
    else if (spec.pattern != "borel")
      throw error("minimal membership needs a borel pattern");
    AlgebraElement gen = haar_idempotent(pd.U, f) * haar_idempotent(pd.Ubar, f);
    AlgebraElement tgt = spec.target == "identity"
                             ? AlgebraElement::unit(host, f)
                             : haar_idempotent(pd.Uplus, f) * haar_idempotent(pd.Ubar, f);
    res = detail::membership_result(spec, left_ideal_membership(tgt, gen));
  } else if (type == "level-zero-membership") {
    GroupRef host = check_host(spec.group, spec.guardrail);
    ParahoricData pd = borel_parahoric(host);
    const Subgroup& levi = spec.idempotent == "level-zero-full" ? pd.M : pd.Mplus;
    AlgebraElement eps = haar_idempotent(levi, f);
    AlgebraElement gen = haar_idempotent(pd.U, f) * haar_idempotent(pd.Ubar, f) * eps;
    AlgebraElement tgt = haar_idempotent(pd.Uplus, f) * haar_idempotent(pd.Ubar, f) * eps;
    res = detail::membership_result(spec, left_ideal_membership(tgt, gen));
  } else if (type == "essentially-level-zero") {
    res = check_essentially_level_zero(spec, detail::character_for(spec));
  } else if (type == "hl-general") {
    GroupRef host = check_host(spec.group, spec.guardrail);
    if (spec.pattern == "block-2-1") {
      BlockParahoricData bd = block21_parahoric(host);
      AlgebraElement eps = haar_idempotent(bd.Mplus, f);
      AlgebraElement gen = haar_idempotent(bd.U, f) * haar_idempotent(bd.Ubar, f) * eps;
      AlgebraElement tgt = haar_idempotent(bd.Uborel, f) * haar_idempotent(bd.Ubar, f) * eps;
      res = detail::membership_result(spec, left_ideal_membership(tgt, gen));
    } else {
      ParahoricData pd = borel_parahoric(host);
      if (spec.idempotent == "sign-central") {
        unsigned mod = host->mod();
        GroupElement minus = GroupElement::identity(2, mod);
        minus.at(0, 0) = minus.at(1, 1) = static_cast<std::uint8_t>(mod - 1);
        Scalar half = Scalar::inverse_of_integer(2, f);
        AlgebraElement eps =
            half * (AlgebraElement::unit(host, f) -
                    AlgebraElement::delta(host, host->index_of(minus), f));
        if (!(eps * eps == eps)) throw error("sign element is not idempotent over this field");
        if (!is_central(eps)) throw error("sign element is not central");
        AlgebraElement gen = haar_idempotent(pd.U, f) * haar_idempotent(pd.Ubar, f) * eps;
        AlgebraElement tgt = haar_idempotent(pd.Uplus, f) * haar_idempotent(pd.Ubar, f) * eps;
        MembershipWitness w = left_ideal_membership(tgt, gen);
        res.name = spec.name;
        res.verdict = "open";
        res.witness_digest = w.digest;
        res.detail = std::string("idempotent is central but carries no level-zero ") +
                     "certificate; informational membership " + (w.member ? "true" : "false");
      } else {
        AlgebraElement gen = haar_idempotent(pd.U, f) * haar_idempotent(pd.Ubar, f);
        AlgebraElement tgt = haar_idempotent(pd.Uplus, f) * haar_idempotent(pd.Ubar, f);
        res = detail::membership_result(spec, left_ideal_membership(tgt, gen));
      }
    }
  } else {
    throw error("unknown check type '" + type + "'");
  }

  res.name = spec.name;
  auto stop = std::chrono::steady_clock::now();
  res.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  return res;
}

/// Named entry points for the individual check families; each one insists
/// the check actually belongs to its family.
inline CheckResult check_minimal_membership(const CheckSpec& spec) {
  if (spec.name.rfind("minimal-membership/", 0) != 0)
    throw error("not a minimal membership check: " + spec.name);
  return run_check(spec);
}

inline CheckResult check_level_zero_membership(const CheckSpec& spec) {
  if (spec.name.rfind("level-zero-membership/", 0) != 0)
    throw error("not a level zero membership check: " + spec.name);
  return run_check(spec);
}

inline CheckResult check_hl_general(const CheckSpec& spec) {
  if (spec.name.rfind("hl-general/", 0) != 0)
    throw error("not a general parabolic check: " + spec.name);
  return run_check(spec);
}

/// Run a batch on a small thread pool; results are merged sorted by name and
/// any stored error is rethrown after the pool drains.
inline std::vector<CheckResult> run_checks(const std::vector<CheckSpec>& specs,
                                           unsigned threads = 0) {
  if (specs.empty()) return {};
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, specs.size()));
  std::vector<CheckResult> out(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      try {
        out[i] = run_check(specs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::sort(out.begin(), out.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return out;
}

}  // namespace parind
