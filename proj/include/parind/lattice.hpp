#pragma once

// Lattices over Z localized at p, periodic lattice functions, their
// endomorphism orders and unit filtrations, duality with respect to a
// bilinear form, and the jump structure of one-parameter translation rays.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parind/common.hpp"
#include "parind/group.hpp"
#include "parind/scalar.hpp"

namespace parind {

namespace latdetail {

inline mpq_class p_power(unsigned long p, long k) {
  mpz_class pw;
  mpz_class pz(static_cast<unsigned long>(p));
  mpz_pow_ui(pw.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(k >= 0 ? k : -k));
  if (k >= 0) return mpq_class(pw);
  mpq_class q(1);
  q /= mpq_class(pw);
  return q;
}

inline long floor_q(const mpq_class& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return static_cast<long>(q.get_si());
}

/// Canonical representative of x modulo p^a Z_(p): either 0 or u p^v with
/// v = v_p(x) < a and u an integer in (0, p^(a-v)) prime to p.
inline mpq_class residue_rep(const mpq_class& x, unsigned long p, long a) {
  if (x == 0) return mpq_class(0);
  long v = valuation_p(x, p);
  if (v >= a) return mpq_class(0);
  mpz_class pz(p), rest_n, rest_d;
  mpz_remove(rest_n.get_mpz_t(), x.get_num().get_mpz_t(), pz.get_mpz_t());
  mpz_remove(rest_d.get_mpz_t(), x.get_den().get_mpz_t(), pz.get_mpz_t());
  mpz_class modulus;
  mpz_pow_ui(modulus.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(a - v));
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), rest_d.get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw error("residue_rep: denominator not invertible");
  mpz_class u = rest_n * inv;
  mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), modulus.get_mpz_t());
  return mpq_class(u) * p_power(p, v);
}

using QMat = std::vector<std::vector<mpq_class>>;  // list of columns

inline QMat qmat_inverse(const QMat& cols) {
  std::size_t n = cols.size();
  QMat a = cols, inv(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t piv = r;
    while (piv < n && a[piv][r] == 0) ++piv;
    if (piv == n) throw error("matrix not invertible");
    std::swap(a[piv], a[r]);
    std::swap(inv[piv], inv[r]);
    mpq_class d = a[r][r];
    for (std::size_t i = 0; i < n; ++i) a[r][i] /= d, inv[r][i] /= d;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == r || a[j][r] == 0) continue;
      mpq_class c = a[j][r];
      for (std::size_t i = 0; i < n; ++i) a[j][i] -= c * a[r][i], inv[j][i] -= c * inv[r][i];
    }
  }
  // `a` held columns, i.e. rows of the transpose; `inv` is the transpose's
  // inverse by rows, which reads exactly as the inverse by columns.
  return inv;
}

}  // namespace latdetail

/**
 * A full-rank lattice over Z_(p) in Q^n, stored as the canonical
 * lower-triangular column Hermite form: pivot j is an exact power p^(a_j),
 * and below-pivot entries are the canonical residues mod p^(a_row) of the
 * containing row's pivot.  Equal lattices have identical stored bases.
 */
class PAdicLattice {
 public:
  PAdicLattice(unsigned long p, latdetail::QMat spanning) : p_(p) {
    if (!is_prime_u64(p)) throw error("p must be prime");
    if (spanning.empty()) throw error("empty spanning set");
    n_ = spanning[0].size();
    for (const auto& c : spanning)
      if (c.size() != n_) throw error("ragged spanning set");
    cols_ = canonicalize(std::move(spanning));
  }

  static PAdicLattice standard(unsigned long p, std::size_t n) {
    latdetail::QMat cols(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) cols[i][i] = 1;
    return PAdicLattice(p, std::move(cols));
  }

  /// Diagonal lattice with column j scaled by p^(k_j).
  static PAdicLattice diagonal(unsigned long p, const std::vector<long>& k) {
    latdetail::QMat cols(k.size(), std::vector<mpq_class>(k.size(), 0));
    for (std::size_t i = 0; i < k.size(); ++i) cols[i][i] = latdetail::p_power(p, k[i]);
    return PAdicLattice(p, std::move(cols));
  }

  std::size_t dim() const { return n_; }
  unsigned long p() const { return p_; }
  const latdetail::QMat& basis() const { return cols_; }
  long pivot_exponent(std::size_t i) const { return valuation_p(cols_[i][i], p_); }

  bool operator==(const PAdicLattice& o) const {
    return p_ == o.p_ && n_ == o.n_ && cols_ == o.cols_;
  }
  bool operator!=(const PAdicLattice& o) const { return !(*this == o); }

  /// Does this lattice contain the vector v?
  bool contains_vector(std::vector<mpq_class> v) const {
    for (std::size_t j = 0; j < n_; ++j) {
      if (v[j] == 0) continue;
      mpq_class c = v[j] / cols_[j][j];
      if (valuation_p(c, p_) < 0) return false;
      for (std::size_t i = j; i < n_; ++i) v[i] -= c * cols_[j][i];
    }
    return true;
  }

  bool contains(const PAdicLattice& sub) const {
    check_compat(sub);
    for (const auto& c : sub.cols_)
      if (!contains_vector(c)) return false;
    return true;
  }

  /// p^k * L.
  PAdicLattice scaled(long k) const {
    PAdicLattice out = *this;
    mpq_class f = latdetail::p_power(p_, k);
    for (auto& c : out.cols_)
      for (auto& x : c) x *= f;
    return out;
  }

  PAdicLattice sum(const PAdicLattice& o) const {
    check_compat(o);
    latdetail::QMat all = cols_;
    for (const auto& c : o.cols_) all.push_back(c);
    return PAdicLattice(p_, std::move(all));
  }

  /// Dual under the standard pairing: {v : v^T L subset of Z_(p)}.
  PAdicLattice standard_dual() const {
    latdetail::QMat bt(n_, std::vector<mpq_class>(n_));
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i) bt[j][i] = cols_[i][j];
    return PAdicLattice(p_, latdetail::qmat_inverse(bt));
  }

  PAdicLattice intersect(const PAdicLattice& o) const {
    check_compat(o);
    return standard_dual().sum(o.standard_dual()).standard_dual();
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t j = 0; j < n_; ++j) {
      s += (j ? "; " : "");
      for (std::size_t i = 0; i < n_; ++i) s += (i ? "," : "") + cols_[j][i].get_str();
    }
    return s + "]";
  }

 private:
  void check_compat(const PAdicLattice& o) const {
    if (p_ != o.p_ || n_ != o.n_) throw error("lattice dimension or prime mismatch");
  }

  latdetail::QMat canonicalize(latdetail::QMat cols) const {
    std::size_t m = cols.size();
    for (std::size_t r = 0; r < n_; ++r) {
      std::size_t best = m;
      long best_v = 0;
      for (std::size_t j = r; j < m; ++j) {
        if (cols[j][r] == 0) continue;
        long v = valuation_p(cols[j][r], p_);
        if (best == m || v < best_v) best = j, best_v = v;
      }
      if (best == m) throw error("spanning set does not have full rank");
      std::swap(cols[r], cols[best]);
      mpq_class unit = cols[r][r] / latdetail::p_power(p_, best_v);
      for (auto& x : cols[r]) x /= unit;
      // forward only: the pivot has minimal valuation among columns >= r, so
      // these are honest Z_(p)-column operations; earlier columns are left to
      // the residue reduction below, which also uses integral multiples
      for (std::size_t j = r + 1; j < m; ++j) {
        if (cols[j][r] == 0) continue;
        mpq_class c = cols[j][r] / cols[r][r];
        for (std::size_t i = r; i < n_; ++i) cols[j][i] -= c * cols[r][i];
      }
    }
    cols.resize(n_);
    // reduce below-pivot entries to canonical residues
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t i = j + 1; i < n_; ++i) {
        long a = valuation_p(cols[i][i], p_);
        mpq_class rep = latdetail::residue_rep(cols[j][i], p_, a);
        mpq_class c = (cols[j][i] - rep) / cols[i][i];
        for (std::size_t k = i; k < n_; ++k) cols[j][k] -= c * cols[i][k];
      }
    }
    return cols;
  }

  unsigned long p_;
  std::size_t n_ = 0;
  latdetail::QMat cols_;
};

/// Nondegenerate bilinear form on Q^n, symmetric (sign +1) or alternating
/// (sign -1), with trivial involution on the base field.
struct HermitianForm {
  unsigned long p;
  std::size_t n;
  int sign;
  latdetail::QMat gram;  // columns; gram[j][i] = h(e_i, e_j)

  HermitianForm(unsigned long p_, int sign_, latdetail::QMat g) : p(p_), sign(sign_), gram(std::move(g)) {
    n = gram.size();
    if (sign != 1 && sign != -1) throw error("form sign must be +1 or -1");
    for (const auto& c : gram)
      if (c.size() != n) throw error("Gram matrix not square");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (gram[j][i] != mpq_class(sign) * gram[i][j]) throw error("Gram symmetry type mismatch");
    latdetail::qmat_inverse(gram);  // throws when degenerate
  }

  static HermitianForm symmetric_identity(unsigned long p, std::size_t n) {
    latdetail::QMat g(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) g[i][i] = 1;
    return HermitianForm(p, 1, std::move(g));
  }

  /// Alternating hyperbolic form in even dimension: pairs (e_i, e_(i+1)).
  static HermitianForm symplectic(unsigned long p, std::size_t n) {
    if (n % 2) throw error("alternating form needs even dimension");
    latdetail::QMat g(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; i += 2) {
      g[i + 1][i] = 1;
      g[i][i + 1] = -1;
    }
    return HermitianForm(p, -1, std::move(g));
  }

  /// {v : h(v, L) subset of p Z_(p)}.
  PAdicLattice dual(const PAdicLattice& l) const {
    if (l.dim() != n || l.p() != p) throw error("form/lattice mismatch");
    // condition: (B^T H^T) v integral after division by p
    latdetail::QMat m(n, std::vector<mpq_class>(n, 0));  // columns of B^T H^T
    const auto& b = l.basis();
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        // entry (i, j) of B^T H^T = sum_k B_(k,i) H_(j,k)
        mpq_class s = 0;
        for (std::size_t k = 0; k < n; ++k) s += b[i][k] * gram[k][j];
        m[j][i] = s;
      }
    auto inv = latdetail::qmat_inverse(m);
    mpq_class pf(static_cast<unsigned long>(p));
    for (auto& c : inv)
      for (auto& x : c) x *= pf;
    return PAdicLattice(p, std::move(inv));
  }
};

/**
 * Periodic decreasing function from Q to lattices: value L_i on
 * [r_i, r_(i+1)) with L_0 > L_1 > ... > L_(e-1) > p L_0 strictly, extended by
 * f(r + 1) = p f(r).  Jumps live in [0, 1).
 */
class LatticeFunction {
 public:
  LatticeFunction(std::vector<mpq_class> jumps, std::vector<PAdicLattice> lats)
      : jumps_(std::move(jumps)), lats_(std::move(lats)) {
    if (jumps_.empty() || jumps_.size() != lats_.size()) throw error("jump/lattice count mismatch");
    p_ = lats_[0].p();
    n_ = lats_[0].dim();
    for (std::size_t i = 0; i < jumps_.size(); ++i) {
      if (jumps_[i] < 0 || jumps_[i] >= 1) throw error("jumps must lie in [0, 1)");
      if (i && !(jumps_[i - 1] < jumps_[i])) throw error("jumps must strictly increase");
      if (lats_[i].p() != p_ || lats_[i].dim() != n_) throw error("inconsistent lattice chain");
    }
    for (std::size_t i = 0; i + 1 < lats_.size(); ++i)
      if (!(lats_[i].contains(lats_[i + 1]) && lats_[i] != lats_[i + 1]))
        throw error("chain containments must be strict");
    PAdicLattice wrap = lats_[0].scaled(1);
    if (!(lats_.back().contains(wrap) && lats_.back() != wrap))
      throw error("chain containments must be strict");
  }

  static LatticeFunction standard(unsigned long p, std::size_t n) {
    return LatticeFunction({mpq_class(0)}, {PAdicLattice::standard(p, n)});
  }

  /// Two-jump chain Z^2 > Z + pZ in dimension 2 with jumps {0, 1/2}.
  static LatticeFunction iwahori_chain(unsigned long p) {
    return LatticeFunction({mpq_class(0), mpq_class(1, 2)},
                           {PAdicLattice::standard(p, 2), PAdicLattice::diagonal(p, {0, 1})});
  }

  unsigned long p() const { return p_; }
  std::size_t dim() const { return n_; }
  std::size_t jump_count() const { return jumps_.size(); }
  const std::vector<mpq_class>& jumps() const { return jumps_; }
  const std::vector<PAdicLattice>& lattices() const { return lats_; }

  bool operator==(const LatticeFunction& o) const {
    return p_ == o.p_ && n_ == o.n_ && jumps_ == o.jumps_ && lats_ == o.lats_;
  }
  bool operator!=(const LatticeFunction& o) const { return !(*this == o); }

  PAdicLattice eval(const mpq_class& r) const {
    mpq_class rel = r - jumps_[0];
    long k = latdetail::floor_q(rel);
    mpq_class pos = r - k;  // in [jumps_[0], jumps_[0] + 1)
    std::size_t i = jumps_.size() - 1;
    while (jumps_[i] > pos) --i;
    return lats_[i].scaled(k);
  }

  /// r |-> eval(r - t), renormalized to jumps in [0, 1).
  LatticeFunction translate(const mpq_class& t) const {
    std::vector<std::pair<mpq_class, PAdicLattice>> parts;
    for (std::size_t i = 0; i < jumps_.size(); ++i) {
      mpq_class s = jumps_[i] + t;
      long k = latdetail::floor_q(s);
      // the translated function takes value L_i at s = jump + t, hence
      // p^(-k) L_i at the normalized position s - k
      parts.emplace_back(s - k, lats_[i].scaled(-k));
    }
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<mpq_class> js;
    std::vector<PAdicLattice> ls;
    for (auto& pr : parts) js.push_back(pr.first), ls.push_back(std::move(pr.second));
    return LatticeFunction(std::move(js), std::move(ls));
  }

  /**
   * Dual function r |-> (left limit of this at -r) dualized by h.  On stored
   * data the interval [r_i, r_(i+1)) with value L_i maps to [-r_(i+1), -r_i)
   * with value h-dual(L_i); the construction is an exact involution.
   */
  LatticeFunction dual(const HermitianForm& h) const {
    std::vector<std::pair<mpq_class, PAdicLattice>> parts;
    for (std::size_t i = 0; i < jumps_.size(); ++i) {
      mpq_class right = (i + 1 < jumps_.size()) ? jumps_[i + 1] : jumps_[0] + 1;
      mpq_class s = -right;
      long k = latdetail::floor_q(s);
      parts.emplace_back(s - k, h.dual(lats_[i]).scaled(-k));
    }
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<mpq_class> js;
    std::vector<PAdicLattice> ls;
    for (auto& pr : parts) js.push_back(pr.first), ls.push_back(std::move(pr.second));
    return LatticeFunction(std::move(js), std::move(ls));
  }

 private:
  unsigned long p_ = 2;
  std::size_t n_ = 0;
  std::vector<mpq_class> jumps_;
  std::vector<PAdicLattice> lats_;
};

/// Lattice of matrices x (rows dst.dim, cols src.dim, flattened row-major)
/// with x * src(u) inside dst(u) for every u.
inline PAdicLattice hom_lattice(const LatticeFunction& src, const LatticeFunction& dst) {
  if (src.p() != dst.p()) throw error("prime mismatch");
  unsigned long p = src.p();
  std::set<mpq_class> cuts;
  for (const auto& j : src.jumps()) cuts.insert(j);
  for (const auto& j : dst.jumps()) cuts.insert(j);
  std::size_t nd = dst.dim(), ns = src.dim(), nn = nd * ns;
  bool first = true;
  PAdicLattice acc = PAdicLattice::standard(p, nn);
  for (const auto& u : cuts) {
    PAdicLattice ls = src.eval(u), ld = dst.eval(u);
    auto binv = latdetail::qmat_inverse(ls.basis());
    // constraint lattice basis: (col k of dst basis) x (row l of inverse src basis)
    latdetail::QMat cols;
    for (std::size_t k = 0; k < nd; ++k)
      for (std::size_t l = 0; l < ns; ++l) {
        std::vector<mpq_class> v(nn);
        for (std::size_t i = 0; i < nd; ++i)
          for (std::size_t j = 0; j < ns; ++j) v[i * ns + j] = ld.basis()[k][i] * binv[j][l];
        cols.push_back(std::move(v));
      }
    PAdicLattice cons(p, std::move(cols));
    acc = first ? cons : acc.intersect(cons);
    first = false;
  }
  return acc;
}

/// The endomorphism-order filtration step a_r: all x with x f(u) inside
/// f(u + r) for every u, as a lattice in n^2-dimensional matrix space.
inline PAdicLattice order_lattice(const LatticeFunction& lf, const mpq_class& r) {
  std::set<mpq_class> cuts;
  for (const auto& j : lf.jumps()) {
    cuts.insert(j);
    mpq_class s = j - r;
    cuts.insert(s - latdetail::floor_q(s - lf.jumps()[0]));
  }
  unsigned long p = lf.p();
  std::size_t n = lf.dim(), nn = n * n;
  bool first = true;
  PAdicLattice acc = PAdicLattice::standard(p, nn);
  for (const auto& u : cuts) {
    PAdicLattice ls = lf.eval(u), ld = lf.eval(u + r);
    auto binv = latdetail::qmat_inverse(ls.basis());
    latdetail::QMat cols;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        std::vector<mpq_class> v(nn);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) v[i * n + j] = ld.basis()[k][i] * binv[j][l];
        cols.push_back(std::move(v));
      }
    PAdicLattice cons(p, std::move(cols));
    acc = first ? cons : acc.intersect(cons);
    first = false;
  }
  return acc;
}

/// Is the n^2-lattice product a*b (all pairwise basis products) contained in c?
inline bool order_product_contained(const PAdicLattice& a, const PAdicLattice& b,
                                    const PAdicLattice& c, std::size_t n) {
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) {
      std::vector<mpq_class> prod(n * n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          mpq_class s = 0;
          for (std::size_t k = 0; k < n; ++k) s += x[i * n + k] * y[k * n + j];
          prod[i * n + j] = s;
        }
      if (!c.contains_vector(prod)) return false;
    }
  return true;
}

namespace latdetail {

/// A positive rational strictly below every gap of the filtration r -> a_r.
inline mpq_class small_step(const std::vector<mpq_class>& jumps) {
  mpz_class l(1);
  for (const auto& j : jumps) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), j.get_den().get_mpz_t());
  mpq_class d(1);
  d /= mpq_class(2 * l);
  return d;
}

}  // namespace latdetail

/**
 * Image in GL_n(Z/p^m) of the unit filtration at level r: the order's unit
 * group for r = 0, or 1 + a_r for r > 0 (with strictly_above selecting the
 * limit from the right, i.e. the next deeper filtration step).
 * Requires p^m M_n inside a_r so the image is the honest finite quotient.
 */
inline Subgroup unit_group_quotient(const LatticeFunction& lf, const mpq_class& r, unsigned m,
                                    bool strictly_above = false) {
  if (r < 0) throw error("unit filtration needs r >= 0");
  std::size_t n = lf.dim();
  if (n != 2 && n != 3) throw error("group extraction supports dimensions 2 and 3 only");
  unsigned long p = lf.p();
  mpq_class reff = r;
  if (strictly_above) reff += latdetail::small_step(lf.jumps());
  PAdicLattice ord = order_lattice(lf, reff);
  std::size_t nn = n * n;
  for (std::size_t j = 0; j < nn; ++j)
    for (std::size_t i = 0; i < nn; ++i)
      if (ord.basis()[j][i] != 0 && valuation_p(ord.basis()[j][i], p) < 0)
        throw error("order lattice is not integral; no finite unit reduction");
  unsigned min_m = 0;
  while (min_m <= 64 && !ord.contains(PAdicLattice::standard(p, nn).scaled(min_m))) ++min_m;
  if (min_m > 64) throw error("order lattice admits no p-power truncation");
  if (m < min_m)
    throw error("truncation level too small; minimum level is " + std::to_string(min_m));

  unsigned long count = 1;
  std::vector<unsigned long> ranges(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    long a = ord.pivot_exponent(i);
    unsigned long range = 1;
    for (long t = a; t < static_cast<long>(m); ++t) range *= p;
    ranges[i] = range;
    count *= range;
    if (count > 250000) throw error("unit enumeration too large at this truncation");
  }
  unsigned long mod = 1;
  for (unsigned i = 0; i < m; ++i) mod *= p;
  if (mod > 64) throw error("matrix entries limited to modulus 64");

  GroupRef host = FiniteGroup::congruence_quotient(n == 2 ? Family::GL2 : Family::GL3,
                                                   static_cast<unsigned>(p), m);
  // r = 0 without the + takes order units; any deeper step takes 1 + a_r
  bool affine = (r != 0 || strictly_above);
  std::set<std::uint32_t> members;
  std::vector<unsigned long> c(nn, 0);
  while (true) {
    std::vector<mpq_class> v(nn, 0);
    for (std::size_t i = 0; i < nn; ++i)
      if (c[i])
        for (std::size_t k = 0; k < nn; ++k)
          v[k] += mpq_class(static_cast<unsigned long>(c[i])) * ord.basis()[i][k];
    GroupElement g = GroupElement::identity(static_cast<unsigned>(n), static_cast<unsigned>(mod));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        mpq_class entry = v[i * n + j];
        if (affine && i == j) entry += 1;
        mpq_class rep = latdetail::residue_rep(entry, p, static_cast<long>(m));
        if (rep.get_den() != 1) throw error("non-integral residue");
        g.at(static_cast<unsigned>(i), static_cast<unsigned>(j)) =
            static_cast<std::uint8_t>(rep.get_num().get_ui());
      }
    if (det_mod(g) % p != 0) {
      auto idx = host->find(g);
      if (!idx) throw error("reduced element missing from ambient group");
      members.insert(*idx);
    }
    std::size_t pos = 0;
    while (pos < nn && ++c[pos] == ranges[pos]) c[pos++] = 0;
    if (pos == nn) break;
  }
  std::vector<std::uint32_t> idx(members.begin(), members.end());
  std::string nm = (affine ? "units-filtration-" : "order-units-") + mpq_class(reff).get_str() +
                   "-mod-p^" + std::to_string(m);
  return Subgroup(host, std::move(idx), nm);
}

/// Jump report for a one-parameter family of block translations.
struct RayJumpReport {
  std::vector<mpq_class> jumps;
  bool alternation_ok = true;      // strictly between jumps, the two filtrations agree
  bool strict_at_jumps = true;     // at each jump the deeper filtration is proper
  bool upper_nondecreasing = true; // upper-block lattices grow along the ray
  bool lower_nonincreasing = true; // lower-block lattices shrink along the ray
  bool growth_ok = true;           // upper blocks strictly larger at the horizon
  std::size_t samples = 0;
  bool all_ok() const {
    return alternation_ok && strict_at_jumps && upper_nondecreasing && lower_nonincreasing &&
           growth_ok;
  }
};

/**
 * Walk the ray t |-> direct sum of blocks_i translated by t*d_i over [0, T]
 * and report where the off-diagonal unit filtrations jump.  The direction
 * must be strictly decreasing, so upper blocks grow and lower blocks shrink.
 * A time t is a jump exactly when the level-0 and level-0+ upper data differ.
 */
inline RayJumpReport ray_jumps(const std::vector<LatticeFunction>& blocks,
                               const std::vector<mpq_class>& direction, const mpq_class& horizon) {
  if (blocks.size() != direction.size() || blocks.size() < 2) throw error("need matching blocks");
  for (std::size_t i = 0; i + 1 < direction.size(); ++i)
    if (!(direction[i] > direction[i + 1]))
      throw error("direction must be strictly decreasing across blocks");
  if (horizon < 0) throw error("negative horizon");
  unsigned long p = blocks[0].p();
  for (const auto& b : blocks)
    if (b.p() != p) throw error("prime mismatch");

  // candidate times: alignments of translated jumps between two blocks
  std::set<mpq_class> cand;
  cand.insert(mpq_class(0));
  cand.insert(horizon);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      mpq_class dd = direction[i] - direction[j];
      if (!(dd > 0)) continue;  // each unordered pair once, oriented positively
      for (const auto& ra : blocks[i].jumps())
        for (const auto& rb : blocks[j].jumps()) {
          // translated jumps align when t*dd = rb - ra + k for an integer k
          mpq_class base = rb - ra;
          long k0 = latdetail::floor_q(-base) - 1;
          for (long k = k0;; ++k) {
            mpq_class t = (base + k) / dd;
            if (t > horizon) break;
            if (t >= 0) cand.insert(t);
            if (k > k0 + 100000) throw error("runaway candidate scan");
          }
        }
    }

  // sample points: candidates plus midpoints of consecutive candidates
  std::vector<mpq_class> cands(cand.begin(), cand.end());
  std::vector<std::pair<mpq_class, bool>> samples;  // (t, is_candidate)
  for (std::size_t i = 0; i < cands.size(); ++i) {
    samples.emplace_back(cands[i], true);
    if (i + 1 < cands.size()) samples.emplace_back((cands[i] + cands[i + 1]) / 2, false);
  }

  mpq_class delta(0);
  {
    std::vector<mpq_class> all;
    for (const auto& b : blocks)
      for (const auto& j : b.jumps()) all.push_back(j);
    for (const auto& s : samples)
      for (std::size_t i = 0; i < blocks.size(); ++i) all.push_back(s.first * direction[i]);
    delta = latdetail::small_step(all);
  }

  struct SampleData {
    std::vector<PAdicLattice> upper, upper_plus, lower;
  };
  auto compute = [&](const mpq_class& t) {
    std::vector<LatticeFunction> tr, tr_deep;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      tr.push_back(blocks[i].translate(t * direction[i]));
      tr_deep.push_back(blocks[i].translate(t * direction[i] - delta));
    }
    SampleData d{{}, {}, {}};
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        d.upper.push_back(hom_lattice(tr[j], tr[i]));
        d.upper_plus.push_back(hom_lattice(tr[j], tr_deep[i]));
        d.lower.push_back(hom_lattice(tr[i], tr[j]));
      }
    return d;
  };

  RayJumpReport rep;
  std::vector<SampleData> data;
  for (const auto& s : samples) data.push_back(compute(s.first));
  rep.samples = samples.size();

  auto lists_equal = [](const std::vector<PAdicLattice>& a, const std::vector<PAdicLattice>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return false;
    return true;
  };
  auto lists_contain = [](const std::vector<PAdicLattice>& big,
                          const std::vector<PAdicLattice>& small) {
    for (std::size_t i = 0; i < big.size(); ++i)
      if (!big[i].contains(small[i])) return false;
    return true;
  };

  for (std::size_t s = 0; s < samples.size(); ++s) {
    bool at_jump = !lists_equal(data[s].upper, data[s].upper_plus);
    if (samples[s].second) {
      if (at_jump) {
        rep.jumps.push_back(samples[s].first);
        if (!lists_contain(data[s].upper, data[s].upper_plus) ||
            lists_equal(data[s].upper, data[s].upper_plus))
          rep.strict_at_jumps = false;
      }
    } else if (at_jump) {
      rep.alternation_ok = false;  // midpoints must sit between jumps
    }
    if (s) {
      if (!lists_contain(data[s].upper, data[s - 1].upper)) rep.upper_nondecreasing = false;
      if (!lists_contain(data[s - 1].lower, data[s].lower)) rep.lower_nonincreasing = false;
    }
  }
  if (!data.empty()) {
    bool grew = !lists_equal(data.front().upper, data.back().upper);
    bool contained = lists_contain(data.back().upper, data.front().upper);
    rep.growth_ok = contained && (rep.jumps.size() <= 1 || grew);
  }
  return rep;
}

}  // namespace parind
