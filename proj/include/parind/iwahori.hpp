#pragma once

#include <map>
#include <string>
#include <vector>

#include "parind/algebra.hpp"

namespace parind {

/**
 * The central element z attached to a decomposition G = U M Ubar, together
 * with its inverse in R[M] and the idempotent eps = z^-1 e_U e_Ubar.  Every
 * defining identity is re-verified during construction; a failure throws
 * theorem_violation rather than returning questionable data.
 */
struct ZData {
  FieldTag field;
  AlgebraElement e_U, e_Ubar, e_prod;  // e_prod = e_U * e_Ubar
  AlgebraElement z, z_inv, epsilon;
  bool z_unique = false;       // z is the only solution in R[M] of the defining identity
  Scalar det;                  // determinant of multiplication by z on R[M]
  bool det_is_pm_p_power = false;  // over Q: det = +-p^k
  long det_exponent = 0;
  bool det_negative = false;

  ZData(FieldTag f, AlgebraElement eu, AlgebraElement eub, AlgebraElement ep, AlgebraElement zz,
        AlgebraElement zi, AlgebraElement eps, Scalar d)
      : field(f), e_U(std::move(eu)), e_Ubar(std::move(eub)), e_prod(std::move(ep)),
        z(std::move(zz)), z_inv(std::move(zi)), epsilon(std::move(eps)), det(std::move(d)) {}
};

/**
 * Compute z from the factorization witness:  e_Ubar e_U averages over the
 * products ubar*u, and compressing each with e_U ... e_Ubar leaves only the
 * M-part, so z = |U x Ubar|^-1 sum delta_{m(ubar u)}.
 */
inline ZData z_element(const IwahoriDecomposition& dec, FieldTag f) {
  const GroupRef& host = dec.host;
  AlgebraElement eu = haar_idempotent(dec.U, f);
  AlgebraElement eub = haar_idempotent(dec.Ubar, f);
  AlgebraElement eprod = eu * eub;

  AlgebraElement z(host, f);
  Scalar c = Scalar::inverse_of_integer(static_cast<long>(dec.U.size() * dec.Ubar.size()), f);
  for (auto ub : dec.Ubar.indices())
    for (auto u : dec.U.indices()) {
      std::uint32_t g = host->mult(ub, u);
      z.add_term(dec.factor[g][1], c);
    }

  if (!z.supported_in(dec.M)) throw theorem_violation("z escapes R[M]");
  if (!is_central_in_subgroup_algebra(z, dec.M)) throw theorem_violation("z is not central in R[M]");
  AlgebraElement lhs = eprod * eprod;
  if (!(lhs == z * eprod) || !(lhs == eprod * z) || !(lhs == eu * (z * eub)))
    throw theorem_violation("defining identity (e_U e_Ubar)^2 = z e_U e_Ubar failed");

  auto zi = subalgebra_inverse(z, dec.M);
  if (!zi) throw theorem_violation("z is not invertible in R[M]");

  AlgebraElement eps = *zi * eprod;
  if (!(eps * eps == eps)) throw theorem_violation("epsilon is not idempotent");
  if (!(eu * eps == eps) || !(eps * eub == eps))
    throw theorem_violation("epsilon fails the absorption identities");

  Scalar det = determinant(left_multiplication_matrix(z, dec.M));
  ZData out(f, std::move(eu), std::move(eub), std::move(eprod), std::move(z), std::move(*zi),
            std::move(eps), det);

  // uniqueness of z within R[M]: the translates delta_m * e_prod are independent
  {
    EchelonBasis eb(host->size(), f);
    for (auto m : dec.M.indices())
      eb.add((AlgebraElement::delta(host, m, f) * out.e_prod).dense());
    out.z_unique = eb.rank() == dec.M.size();
  }

  if (f.is_rational()) {
    auto [pm, k] = is_z_inv_p_unit(det.rat(), host->p());
    out.det_is_pm_p_power = pm;
    out.det_exponent = k;
    out.det_negative = det.rat() < 0;
    if (!pm) throw theorem_violation("det of multiplication by z is not +-p^k");
  } else if (det.is_zero()) {
    throw theorem_violation("multiplication by z is singular over " + f.str());
  }
  return out;
}

/// dim of the left ideal R[G] * t (translates deduplicated by the left
/// stabilizer of t).
inline std::size_t left_ideal_rank(const AlgebraElement& t) {
  const GroupRef& host = t.host();
  std::size_t n = host->size();
  std::vector<std::uint32_t> stab;
  for (std::uint32_t s = 0; s < n; ++s) {
    bool ok = true;
    for (const auto& [g, cf] : t.terms())
      if (!(t.coeff(host->mult(s, g)) == cf)) {
        ok = false;
        break;
      }
    if (ok) stab.push_back(s);
  }
  std::vector<bool> seen(n, false);
  EchelonBasis eb(n, t.field());
  for (std::uint32_t g = 0; g < n; ++g) {
    if (seen[g]) continue;
    for (auto s : stab) seen[host->mult(g, s)] = true;
    eb.add((AlgebraElement::delta(host, g, t.field()) * t).dense());
  }
  return eb.rank();
}

/**
 * Certificate that compression onto M is an isomorphism:  the unital map
 * delta_m |-> delta_m * eps identifies R[M] with eps R[G] eps, and
 * e_U R[G] e_Ubar is free of rank |M| over the image.
 */
struct TransferCertificate {
  bool factorization_ok = false;  // e_U delta_g e_Ubar = delta_{m(g)} e_U e_Ubar for every g
  bool epsilon_absorbs_M = false; // eps delta_m eps = delta_m eps for every m (=> multiplicative)
  bool injective = false;         // rank span{delta_m eps} = |M|
  std::size_t compressed_rank = 0;  // dim e_U R[G] e_Ubar
  std::size_t epsilon_rank = 0;     // dim span{delta_m eps} = dim eps R[G] eps
  std::size_t left_ideal_dim = 0;   // dim R[G] e_U e_Ubar, for the record
  std::size_t m_order = 0;

  bool bijective() const {
    return factorization_ok && epsilon_absorbs_M && injective && compressed_rank == m_order &&
           epsilon_rank == m_order;
  }
};

inline TransferCertificate transfer_certificate(const IwahoriDecomposition& dec, const ZData& zd) {
  const GroupRef& host = dec.host;
  FieldTag f = zd.field;
  TransferCertificate cert;
  cert.m_order = dec.M.size();

  cert.factorization_ok = true;
  for (std::uint32_t g = 0; g < host->size() && cert.factorization_ok; ++g) {
    AlgebraElement lhs = zd.e_U * AlgebraElement::delta(host, g, f) * zd.e_Ubar;
    AlgebraElement rhs = AlgebraElement::delta(host, dec.factor[g][1], f) * zd.e_prod;
    if (!(lhs == rhs)) cert.factorization_ok = false;
  }

  cert.epsilon_absorbs_M = true;
  for (auto m : dec.M.indices()) {
    AlgebraElement dm = AlgebraElement::delta(host, m, f);
    if (!(zd.epsilon * dm * zd.epsilon == dm * zd.epsilon)) {
      cert.epsilon_absorbs_M = false;
      break;
    }
  }

  EchelonBasis eb(host->size(), f);
  for (auto m : dec.M.indices())
    eb.add((AlgebraElement::delta(host, m, f) * zd.epsilon).dense());
  cert.epsilon_rank = eb.rank();
  cert.injective = cert.epsilon_rank == dec.M.size();

  cert.compressed_rank = sandwich_rank(zd.e_U, zd.e_Ubar);
  cert.left_ideal_dim = left_ideal_rank(zd.e_prod);
  return cert;
}

/**
 * Closed form for SL2:  on the level p^(n+1) decomposition with M the units
 * congruent to 1 mod p, the coefficient of z at diag(1+pt, (1+pt)^-1) is
 * p^-2n * #{(x, y) in (Z/p^n)^2 : xy = t}.
 */
inline std::vector<mpq_class> sl2_residue_counts(unsigned p, unsigned n) {
  unsigned pn = 1;
  for (unsigned i = 0; i < n; ++i) pn *= p;
  std::vector<long> cnt(pn, 0);
  for (unsigned x = 0; x < pn; ++x)
    for (unsigned y = 0; y < pn; ++y) ++cnt[(x * y) % pn];
  std::vector<mpq_class> out(pn);
  mpq_class denom(static_cast<long>(pn) * pn);
  for (unsigned t = 0; t < pn; ++t) {
    out[t] = mpq_class(cnt[t]) / denom;
    out[t].canonicalize();
  }
  return out;
}

/**
 * Closed-form evaluation of the same density.  Counting pairs (x, y) with
 * xy = t in Z/p^n by the valuation i of x gives (p^n - p^(n-1)) pairs for each
 * admissible i <= min(v_p(t), n-1), plus the p^n pairs with x = 0 when t = 0.
 */
inline std::vector<mpq_class> sl2_closed_form(unsigned p, unsigned n) {
  long pn = 1;
  for (unsigned i = 0; i < n; ++i) pn *= p;
  std::vector<mpq_class> out(static_cast<std::size_t>(pn));
  mpq_class denom(pn * pn);
  long layer = pn - pn / p;
  for (long t = 0; t < pn; ++t) {
    long v = 0;
    if (t == 0) {
      v = n;
    } else {
      long x = t;
      while (x % p == 0) x /= p, ++v;
    }
    long reach = std::min<long>(v, n - 1);
    mpq_class cnt((reach + 1) * layer + (t == 0 ? pn : 0));
    out[static_cast<std::size_t>(t)] = cnt / denom;
    out[static_cast<std::size_t>(t)].canonicalize();
  }
  return out;
}

/// Compare the computed z of the SL2 pro-p instance at level p^(n+1) with the
/// closed form; returns the mismatch count (0 on success).
inline std::size_t sl2_closed_form_mismatches(const IwahoriDecomposition& dec, const ZData& zd,
                                              unsigned p, unsigned n) {
  auto counts = sl2_residue_counts(p, n);
  unsigned pn = 1;
  for (unsigned i = 0; i < n; ++i) pn *= p;
  unsigned mod = dec.host->mod();
  std::size_t bad = 0;
  for (unsigned t = 0; t < pn; ++t) {
    unsigned a = (1 + p * t) % mod;
    unsigned ai = detail::inv_unit_mod(a, mod);
    GroupElement m = make_element(2, mod, {int(a), 0, 0, int(ai)});
    Scalar expect = zd.field.is_rational() ? Scalar::rational(counts[t])
                                           : Scalar::rational(counts[t]).reduced_mod(zd.field);
    if (!(zd.z.coeff(dec.host->index_of(m)) == expect)) ++bad;
  }
  return bad;
}

/// Ranks of the compression transfers between the two sandwich spaces
/// e_U R[G] e_Ubar and e_Ubar R[G] e_U.
struct TransferRanks {
  std::size_t dim_forward = 0;   // dim e_U R[G] e_Ubar
  std::size_t dim_backward = 0;  // dim e_Ubar R[G] e_U
  std::size_t rank_forward = 0;  // rank of f -> e_Ubar f e_U on the first space
  std::size_t rank_backward = 0;
};

inline TransferRanks transfer_rank_pair(const IwahoriDecomposition& dec, FieldTag f) {
  auto eu = haar_idempotent(dec.U, f);
  auto eub = haar_idempotent(dec.Ubar, f);
  auto span_of = [&](const AlgebraElement& l, const AlgebraElement& r) {
    EchelonBasis eb(dec.host->size(), f);
    std::vector<AlgebraElement> basis;
    for (std::uint32_t g = 0; g < dec.host->size(); ++g) {
      AlgebraElement v = l * AlgebraElement::delta(dec.host, g, f) * r;
      if (eb.add(v.dense())) basis.push_back(std::move(v));
    }
    return basis;
  };
  auto image_rank = [&](const std::vector<AlgebraElement>& basis, const AlgebraElement& l,
                        const AlgebraElement& r) {
    EchelonBasis eb(dec.host->size(), f);
    std::size_t rank = 0;
    for (const auto& b : basis)
      if (eb.add((l * b * r).dense())) ++rank;
    return rank;
  };
  TransferRanks out;
  auto fwd = span_of(eu, eub);
  auto bwd = span_of(eub, eu);
  out.dim_forward = fwd.size();
  out.dim_backward = bwd.size();
  out.rank_forward = image_rank(fwd, eub, eu);
  out.rank_backward = image_rank(bwd, eu, eub);
  return out;
}

/**
 * Independent recomputation of z: solve the linear system
 * sum_m c_m (delta_m * e_U e_Ubar) = (e_U e_Ubar)^2 for coefficients indexed
 * by M.  Used by the command-line oracle mode to cross-check the direct
 * factorization-table formula.
 */
inline AlgebraElement z_via_linear_solve(const IwahoriDecomposition& dec, FieldTag f) {
  auto eu = haar_idempotent(dec.U, f);
  auto eub = haar_idempotent(dec.Ubar, f);
  auto eprod = eu * eub;
  auto target = eprod * eprod;
  std::size_t n = dec.host->size(), mm = dec.M.size();
  Matrix a(n, mm, f);
  for (std::size_t j = 0; j < mm; ++j) {
    auto col = (AlgebraElement::delta(dec.host, dec.M.indices()[j], f) * eprod).dense();
    for (std::size_t i = 0; i < n; ++i) a.at(i, j) = col[i];
  }
  auto sol = solve_linear(a, target.dense());
  if (!sol) throw theorem_violation("no M-combination reproduces (e_U e_Ubar)^2");
  AlgebraElement z(dec.host, f);
  for (std::size_t j = 0; j < mm; ++j) z.add_term(dec.M.indices()[j], (*sol)[j]);
  return z;
}

/// Named decomposition shipped with the library.
struct BundledInstance {
  std::string key;
  std::string description;
  Family family;
  unsigned p, n;
  BlockPattern pattern;
  bool pro_p;
};

inline const std::vector<BundledInstance>& bundled_instances() {
  static const std::vector<BundledInstance> table = {
      {"sl2-p2-level4-pro-p", "pro-p Iwahori of SL2(Z/4)", Family::SL2, 2, 2, {{1, 1}}, true},
      {"sl2-p3-level9-pro-p", "pro-p Iwahori of SL2(Z/9)", Family::SL2, 3, 2, {{1, 1}}, true},
      {"sl2-p2-level8-pro-p", "pro-p Iwahori of SL2(Z/8)", Family::SL2, 2, 3, {{1, 1}}, true},
      {"gl2-p2-level4-pro-p", "pro-p Iwahori of GL2(Z/4)", Family::GL2, 2, 2, {{1, 1}}, true},
      {"gl2-p3-level9-pro-p", "pro-p Iwahori of GL2(Z/9)", Family::GL2, 3, 2, {{1, 1}}, true},
      {"gl2-p2-level4-iwahori", "full Iwahori of GL2(Z/4)", Family::GL2, 2, 2, {{1, 1}}, false},
      {"gl2-p3-borel", "Borel subgroup of GL2(F_3)", Family::GL2, 3, 1, {{1, 1}}, false},
      {"gl3-p2-parabolic21", "(2,1) parabolic of GL3(F_2)", Family::GL3, 2, 1, {{2, 1}}, false},
  };
  return table;
}

inline const BundledInstance& find_instance(const std::string& key) {
  for (const auto& b : bundled_instances())
    if (b.key == key) return b;
  std::string keys;
  for (const auto& b : bundled_instances()) keys += (keys.empty() ? "" : ", ") + b.key;
  throw error("unknown instance '" + key + "' (available: " + keys + ")");
}

inline IwahoriDecomposition build_instance(const BundledInstance& b) {
  GroupRef big = FiniteGroup::congruence_quotient(b.family, b.p, b.n);
  IwahoriDecomposition dec = standard_iwahori(big, b.pattern, b.pro_p);
  dec.name = b.key;
  return dec;
}

inline IwahoriDecomposition build_instance_by_key(const std::string& key) {
  return build_instance(find_instance(key));
}

}  // namespace parind
