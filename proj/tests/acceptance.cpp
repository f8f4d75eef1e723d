// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Each criterion re-derives its expected values from first principles
// (brute-force counts, independent recombination, exhaustive pairings)
// rather than trusting the code paths it is auditing.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <parind/iwahori.hpp>
#include <parind/lattice.hpp>
#include <parind/suites.hpp>
#include <parind/verify.hpp>

using namespace parind;

namespace {

int failures = 0;

struct Criterion {
  std::vector<std::string> notes;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

template <class Body>
void criterion(const char* name, Body&& body) {
  Criterion c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.notes.push_back(std::string("exception: ") + e.what());
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::printf("%s  %s (%lld ms)\n", c.ok ? "PASS" : "FAIL", name,
              static_cast<long long>(ms));
  if (!c.ok) {
    ++failures;
    for (const auto& n : c.notes) std::printf("      - %s\n", n.c_str());
  }
  std::fflush(stdout);
}

mpq_class q(long n, long d = 1) {
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

int main() {
  criterion("closed-form coefficient table equals brute force and the computed z elements",
            [](Criterion& c) {
              const std::pair<unsigned, unsigned> cases[] = {{2, 1}, {3, 1}, {2, 2}, {5, 1}};
              for (auto [p, n] : cases)
                c.expect(sl2_closed_form(p, n) == sl2_residue_counts(p, n),
                         "closed form differs from the pair count at p=" + std::to_string(p) +
                             ", n=" + std::to_string(n));
              for (const char* key : {"sl2-p2-level4-pro-p", "sl2-p3-level9-pro-p"}) {
                const BundledInstance& b = find_instance(key);
                IwahoriDecomposition dec = build_instance(b);
                ZData zd = z_element(dec, rationals());
                c.expect(sl2_closed_form_mismatches(dec, zd, b.p, b.n - 1) == 0,
                         std::string(key) + ": z coefficients differ from the closed form");
              }
            });

  criterion("z element satisfies its defining laws on every bundled decomposition",
            [](Criterion& c) {
              for (const auto& b : bundled_instances()) {
                IwahoriDecomposition dec = build_instance(b);
                ZData zd = z_element(dec, rationals());
                c.expect(zd.z_unique, b.key + ": z is not unique");
                c.expect(zd.e_prod * zd.e_prod == zd.z * zd.e_prod,
                         b.key + ": (e_U e_Ubar)^2 != z e_U e_Ubar");
                c.expect(is_central_in_subgroup_algebra(zd.z, dec.M),
                         b.key + ": z is not central in the Levi algebra");
                c.expect(zd.epsilon * zd.epsilon == zd.epsilon,
                         b.key + ": z^-1 e_U e_Ubar is not idempotent");
                c.expect(zd.det_is_pm_p_power,
                         b.key + ": det of multiplication by z is not +/- p^k (got " +
                             zd.det.str() + ")");
              }
            });

  criterion("sandwich algebra e_U R[G] e_Ubar has dimension |M| on every bundled decomposition",
            [](Criterion& c) {
              FieldTag f = rationals();
              for (const auto& b : bundled_instances()) {
                IwahoriDecomposition dec = build_instance(b);
                std::size_t r = sandwich_rank(haar_idempotent(dec.U, f),
                                              haar_idempotent(dec.Ubar, f));
                c.expect(r == dec.M.size(), b.key + ": sandwich rank " + std::to_string(r) +
                                                " != |M| = " + std::to_string(dec.M.size()));
              }
            });

  criterion(
      "induction is simultaneously left and right adjoint to restriction, restriction "
      "recovers the input, and induced characters stay irreducible",
      [](Criterion& c) {
        FieldTag fields[] = {rationals(), prime_field(5), prime_field(7)};
        unsigned per_field[] = {4, 3, 3};
        for (const auto& b : bundled_instances()) {
          IwahoriDecomposition dec = build_instance(b);
          std::size_t pair_count = 0;
          for (int fi = 0; fi < 3; ++fi) {
            Functors fn(dec, fields[fi]);
            std::uint64_t seed = 9000 + 31 * fi;
            for (const PairReport& pr : run_adjunction_suite(fn, per_field[fi], seed)) {
              std::string tag = b.key + " over " + fields[fi].str() + " (" + pr.w_desc + ", " +
                                pr.v_desc + ")";
              c.expect(pr.left_adjoint_ok, tag + ": Hom_G(I W, V) != Hom_M(W, R V)");
              c.expect(pr.right_adjoint_ok, tag + ": Hom_G(V, I W) != Hom_M(R V, W)");
              c.expect(pr.back_dim_ok, tag + ": dim R(I(W)) != dim W");
              c.expect(pr.back_iso_ok, tag + ": no M-isomorphism R(I(W)) -> W found");
              ++pair_count;
            }
          }
          c.expect(pair_count >= 10, b.key + ": fewer than ten random pairs were exercised");
        }
        const std::pair<const char*, unsigned long> meataxe[] = {
            {"sl2-p2-level4-pro-p", 5},
            {"sl2-p2-level8-pro-p", 5},
            {"gl2-p2-level4-pro-p", 5},
            {"sl2-p3-level9-pro-p", 7},
            {"gl2-p3-level9-pro-p", 7}};
        for (auto [key, ell] : meataxe) {
          Functors fn(build_instance_by_key(key), prime_field(ell));
          std::size_t chars = 0;
          for (const CharInductionReport& cr : run_character_induction_suite(fn)) {
            std::string tag = std::string(key) + " over F" + std::to_string(ell) + " " + cr.desc;
            c.expect(cr.w_irreducible && cr.iw_irreducible,
                     tag + ": induction does not stay irreducible");
            c.expect(cr.certified, tag + ": irreducibility not certified across seeds");
            ++chars;
          }
          c.expect(chars >= 2, std::string(key) + ": fewer than two characters inducted");
        }
      });

  criterion("trace map is bijective on free modules and vanishes on the modular counterexample",
            [](Criterion& c) {
              GroupRef c2 = FiniteGroup::from_generators("C2", 3, {make_element(1, 3, {2})});
              GroupRef c3 =
                  FiniteGroup::from_generators("C3", 3, {make_element(2, 3, {1, 1, 0, 1})});
              GroupRef s3 = FiniteGroup::congruence_quotient(Family::GL2, 2, 1);
              for (const GroupRef& g : {c2, c3, s3})
                for (FieldTag f : {rationals(), prime_field(5)}) {
                  Representation reg = Representation::regular(g, f);
                  std::string tag = g->name() + " over " + f.str();
                  TraceIsoReport r1 = trace_iso_check(reg, Representation::trivial(g, f));
                  c.expect(r1.bijective, tag + ": trace not bijective on R[G] (x) triv");
                  TraceIsoReport r2 = trace_iso_check(reg, reg);
                  c.expect(r2.bijective, tag + ": trace not bijective on R[G] (x) R[G]");
                }
              FieldTag f3 = prime_field(3);
              TraceIsoReport bad = trace_iso_check(Representation::trivial(c3, f3),
                                                   Representation::trivial(c3, f3));
              c.expect(bad.dim_invariants == 1 && bad.dim_coinvariants == 1,
                       "trivial F3 module: invariants/coinvariants should both be lines");
              c.expect(bad.image_rank == 0 && !bad.bijective,
                       "trivial module of C3 over F3: trace should be the zero map");
            });

  criterion("compression transfers between the two sandwich spaces have full rank |M| both ways",
            [](Criterion& c) {
              for (const auto& b : bundled_instances()) {
                IwahoriDecomposition dec = build_instance(b);
                TransferRanks tr = transfer_rank_pair(dec, rationals());
                std::size_t m = dec.M.size();
                c.expect(tr.dim_forward == m && tr.dim_backward == m,
                         b.key + ": sandwich dimensions are not |M|");
                c.expect(tr.rank_forward == m && tr.rank_backward == m,
                         b.key + ": a transfer map drops rank");
              }
            });

  criterion(
      "minimal and level-zero ideal memberships hold with independently recombined "
      "witnesses, and the unit stays outside",
      [](Criterion& c) {
        FieldTag f = rationals();
        for (const char* group : {"sl2-mod4", "sl2-mod9", "gl2-mod4"}) {
          GroupRef host = check_host(group, 5000);
          ParahoricData pd = borel_parahoric(host);
          AlgebraElement base_gen =
              haar_idempotent(pd.U, f) * haar_idempotent(pd.Ubar, f);
          AlgebraElement base_tgt =
              haar_idempotent(pd.Uplus, f) * haar_idempotent(pd.Ubar, f);
          for (bool level_zero : {false, true}) {
            AlgebraElement gen = base_gen, tgt = base_tgt;
            if (level_zero) {
              AlgebraElement eps = haar_idempotent(pd.Mplus, f);
              gen = gen * eps;
              tgt = tgt * eps;
            }
            std::string tag =
                std::string(group) + (level_zero ? " level-zero" : " minimal");
            MembershipWitness w = left_ideal_membership(tgt, gen);
            c.expect(w.member && w.verified, tag + ": membership failed");
            AlgebraElement acc(host, f);
            for (std::size_t i = 0; i < w.coeffs.size(); ++i)
              acc = acc + w.coeffs[i] *
                              (AlgebraElement::delta(host, w.left[i], f) * gen);
            c.expect(acc == tgt, tag + ": witness does not recombine to the target");
          }
        }
        GroupRef host = check_host("sl2-mod4", 5000);
        ParahoricData pd = borel_parahoric(host);
        AlgebraElement gen = haar_idempotent(pd.U, f) * haar_idempotent(pd.Ubar, f);
        MembershipWitness neg =
            left_ideal_membership(AlgebraElement::unit(host, f), gen);
        c.expect(!neg.member,
                 "negative control: the unit should lie outside the left ideal");
      });

  criterion(
      "commutator character pairings are nondegenerate with two-sided membership, and the "
      "degenerate variant is detected",
      [](Criterion& c) {
        for (const char* name :
             {"essentially-level-zero/heisenberg-p2", "essentially-level-zero/heisenberg-p3"}) {
          CheckResult r = run_check(registry_check(name));
          c.expect(r.verdict == "true", std::string(name) + ": verdict " + r.verdict);
          c.expect(r.detail.find("pairing nondegenerate") != std::string::npos,
                   std::string(name) + ": pairing not certified nondegenerate");
          c.expect(r.detail.find("two-sided membership true") != std::string::npos,
                   std::string(name) + ": [theta] not found in the two-sided ideal");
        }
        CheckResult d = run_check(registry_check("essentially-level-zero/degenerate-pairing"));
        c.expect(d.verdict == "open", "degenerate variant: verdict should stay open");
        c.expect(d.detail.find("pairing degenerate") != std::string::npos,
                 "degenerate variant: pairing should be flagged degenerate");
      });

  criterion(
      "lattice duality is an involution with self-dual chains, orders multiply into the "
      "filtration, unit quotients are triangular, and ray jumps alternate at half-integers",
      [](Criterion& c) {
        HermitianForm sp2 = HermitianForm::symplectic(2, 2);
        PAdicLattice full2 = PAdicLattice::standard(2, 2);
        LatticeFunction selfdual({q(0)}, {full2.scaled(1)});
        LatticeFunction bary({q(1, 4), q(3, 4)},
                             {full2.scaled(1), PAdicLattice::diagonal(2, {1, 2})});
        c.expect(selfdual.dual(sp2) == selfdual, "scaled standard chain is not self-dual");
        c.expect(bary.dual(sp2) == bary, "barycentric two-jump chain is not self-dual");

        HermitianForm id32 = HermitianForm::symmetric_identity(3, 2);
        HermitianForm gen(3, 1, {{2, 1}, {1, 1}});
        const std::pair<LatticeFunction, HermitianForm> duals[] = {
            {selfdual, sp2},
            {bary, sp2},
            {LatticeFunction::standard(2, 2), sp2},
            {LatticeFunction::iwahori_chain(2), sp2},
            {LatticeFunction::iwahori_chain(3), id32},
            {LatticeFunction::standard(3, 2), gen}};
        int chain_no = 0;
        for (const auto& [lf, h] : duals) {
          c.expect(lf.dual(h).dual(h) == lf,
                   "double dual is not the identity on chain " + std::to_string(chain_no));
          ++chain_no;
        }

        LatticeFunction iw = LatticeFunction::iwahori_chain(2);
        std::vector<mpq_class> grid = {q(0), q(1, 4), q(1, 2), q(3, 4), q(1)};
        for (const auto& r : grid)
          for (const auto& s : grid)
            c.expect(order_product_contained(order_lattice(iw, r), order_lattice(iw, s),
                                             order_lattice(iw, r + s), 2),
                     "a_r a_s escapes a_(r+s) at r=" + r.get_str() + ", s=" + s.get_str());

        for (unsigned long p : {2ul, 3ul}) {
          Subgroup units = unit_group_quotient(LatticeFunction::iwahori_chain(p), 0, 1);
          Subgroup borel = Subgroup::from_predicate(
              units.host(), [](const GroupElement& g) { return g.at(1, 0) == 0; },
              "upper-triangular");
          c.expect(units.indices() == borel.indices(),
                   "level-one unit quotient of the two-jump chain is not the upper-triangular "
                   "subgroup at p=" +
                       std::to_string(p));
        }

        LatticeFunction line = LatticeFunction::standard(2, 1);
        RayJumpReport ray = ray_jumps({line, line}, {q(1), q(-1)}, q(2));
        std::vector<mpq_class> half = {q(0), q(1, 2), q(1), q(3, 2), q(2)};
        c.expect(ray.jumps == half, "ray jumps are not the half-integer ladder");
        c.expect(ray.alternation_ok && ray.strict_at_jumps,
                 "filtrations fail to alternate strictly at the jumps");
        c.expect(ray.all_ok(), "a ray monotonicity or growth law failed");
      });

  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 9 acceptance criteria passed\n");
  return 0;
}
