#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "parind/rep.hpp"

namespace parind {

inline Scalar scalar_pow(Scalar base, unsigned long e, FieldTag f) {
  Scalar r = Scalar::one(f);
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

/**
 * All one-dimensional representations of a finite abelian group over f, found
 * by assigning each generator a root of unity of its order and keeping the
 * consistent assignments.  Deterministic order: trivial character first, then
 * lexicographic in the generator values.
 */
inline std::vector<Representation> one_dimensional_characters(const GroupRef& g, FieldTag f,
                                                              std::size_t cap = 8) {
  const auto& gens = g->generators();
  std::vector<unsigned long> orders;
  for (auto s : gens) {
    unsigned long d = 1;
    std::uint32_t x = s;
    while (x != g->identity()) {
      x = g->mult(x, s);
      ++d;
    }
    orders.push_back(d);
  }
  auto roots_of_order_dividing = [&](unsigned long d) {
    std::vector<Scalar> roots;
    if (f.is_rational()) {
      roots.push_back(Scalar::rational(1));
      if (d % 2 == 0) roots.push_back(Scalar::rational(-1, 1));
    } else {
      for (std::uint64_t x = 1; x < f.ell; ++x)
        if (scalar_pow(Scalar::modular(x, f), d, f) == Scalar::one(f))
          roots.push_back(Scalar::modular(x, f));
    }
    return roots;
  };
  std::vector<std::vector<Scalar>> choices;
  for (auto d : orders) choices.push_back(roots_of_order_dividing(d));

  std::vector<Representation> out;
  std::map<std::string, bool> seen;
  std::vector<std::size_t> pick(gens.size(), 0);
  while (true) {
    // propagate the generator values across the whole group
    std::vector<Scalar> values(g->size(), Scalar::zero(f));
    std::vector<bool> known(g->size(), false);
    values[g->identity()] = Scalar::one(f);
    known[g->identity()] = true;
    std::vector<std::uint32_t> queue = {g->identity()};
    bool consistent = true;
    for (std::size_t qi = 0; qi < queue.size() && consistent; ++qi)
      for (std::size_t s = 0; s < gens.size(); ++s) {
        std::uint32_t y = g->mult(queue[qi], gens[s]);
        Scalar v = values[queue[qi]] * choices[s][pick[s]];
        if (!known[y]) {
          known[y] = true;
          values[y] = v;
          queue.push_back(y);
        } else if (!(values[y] == v)) {
          consistent = false;
          break;
        }
      }
    if (consistent) {
      std::string key;
      for (const auto& v : values) key += v.str() + ";";
      if (!seen.count(key)) {
        seen[key] = true;
        out.push_back(Representation::character(g, f, values));
        if (out.size() >= cap) return out;
      }
    }
    // next tuple of generator values
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

/// Product subgroup U M of a decomposition; a group because M normalizes U.
inline Subgroup radical_levi_product(const IwahoriDecomposition& dec) {
  std::vector<std::uint32_t> idx;
  for (auto u : dec.U.indices())
    for (auto m : dec.M.indices()) idx.push_back(dec.host->mult(u, m));
  return Subgroup(dec.host, std::move(idx), "UM");
}

// ---------------------------------------------------------------------------
// adjunction / restriction-of-induction suite

struct PairReport {
  std::string w_desc, v_desc;
  std::size_t w_dim = 0, v_dim = 0, iw_dim = 0, back_dim = 0;
  std::size_t hom_g_iw_v = 0, hom_m_w_rv = 0, hom_g_v_iw = 0, hom_m_rv_w = 0;
  bool left_adjoint_ok = false, right_adjoint_ok = false;
  bool back_dim_ok = false, back_iso_ok = false;

  bool ok() const {
    return left_adjoint_ok && right_adjoint_ok && back_dim_ok && back_iso_ok;
  }
};

/**
 * Random (W, V) pairs: W cycles through the one-dimensional characters of the
 * Levi (plus random submodules of its regular module unless w_dim_cap == 1),
 * V is a random submodule of the permutation module on G / U M cosets (or
 * G / U with small_cosets = false).  Checks both adjunction equalities and
 * that restriction recovers W from I(W) with an exhibited isomorphism.
 */
inline std::vector<PairReport> run_adjunction_suite(const Functors& fn, unsigned npairs,
                                                    std::uint64_t seed, bool small_cosets = true,
                                                    std::size_t w_dim_cap = 0) {
  FieldTag f = fn.z_data().field;
  std::vector<Representation> wpool = one_dimensional_characters(fn.mgroup(), f);
  std::vector<std::string> wdesc;
  for (std::size_t i = 0; i < wpool.size(); ++i)
    wdesc.push_back("character-" + std::to_string(i));
  if (w_dim_cap != 1) {
    Representation regm = Representation::regular(fn.mgroup(), f);
    for (unsigned k = 0; k < 2; ++k) {
      wpool.push_back(random_subrep(regm, seed + 17 * (k + 1)));
      wdesc.push_back("regular-submodule-seed-" + std::to_string(seed + 17 * (k + 1)));
    }
  }
  Subgroup base = small_cosets ? radical_levi_product(fn.dec()) : fn.dec().U;
  Representation perm = Representation::permutation(fn.dec().host, base, f);

  std::vector<PairReport> out;
  for (unsigned k = 0; k < npairs; ++k) {
    const Representation& w = wpool[k % wpool.size()];
    Representation v = random_subrep(perm, seed + 101 * k + 7);
    PairReport pr;
    pr.w_desc = wdesc[k % wpool.size()];
    pr.v_desc = "permutation-submodule-seed-" + std::to_string(seed + 101 * k + 7);
    pr.w_dim = w.dim();
    pr.v_dim = v.dim();
    Representation iw = fn.induce(w);
    Representation rv = fn.restrict(v);
    pr.iw_dim = iw.dim();
    pr.hom_g_iw_v = hom_dim(iw, v);
    pr.hom_m_w_rv = hom_dim(w, rv);
    pr.hom_g_v_iw = hom_dim(v, iw);
    pr.hom_m_rv_w = hom_dim(rv, w);
    pr.left_adjoint_ok = pr.hom_g_iw_v == pr.hom_m_w_rv;
    pr.right_adjoint_ok = pr.hom_g_v_iw == pr.hom_m_rv_w;
    Representation back = fn.restrict(iw);
    pr.back_dim = back.dim();
    pr.back_dim_ok = back.dim() == w.dim();
    pr.back_iso_ok = equivalence(w, back).has_value();
    out.push_back(std::move(pr));
  }
  return out;
}

// ---------------------------------------------------------------------------
// induction-preserves-irreducibility suite

struct CharInductionReport {
  std::string desc;
  std::size_t w_dim = 0, iw_dim = 0;
  bool w_irreducible = false, iw_irreducible = false, certified = false;
};

/// Induce the one-dimensional characters of the Levi and certify whether the
/// results stay irreducible (they must when the coefficient characteristic
/// does not divide the group order).
inline std::vector<CharInductionReport> run_character_induction_suite(const Functors& fn,
                                                                      std::size_t max_chars = 4) {
  FieldTag f = fn.z_data().field;
  std::vector<CharInductionReport> out;
  std::vector<Representation> chars = one_dimensional_characters(fn.mgroup(), f, max_chars);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    CharInductionReport r;
    r.desc = "character-" + std::to_string(i);
    r.w_dim = chars[i].dim();
    IrreducibilityReport rw = is_irreducible(chars[i]);
    r.w_irreducible = rw.irreducible;
    Representation iw = fn.induce(chars[i]);
    r.iw_dim = iw.dim();
    IrreducibilityReport ri = is_irreducible(iw);
    r.iw_irreducible = ri.irreducible;
    r.certified = rw.certified && ri.certified;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace parind
