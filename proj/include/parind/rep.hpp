#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parind/iwahori.hpp"

namespace parind {

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          k.at(i * b.rows() + r, j * b.cols() + c) = a.at(i, j) * b.at(r, c);
    }
  return k;
}

/**
 * Finite-dimensional representation with a full matrix table.  Construction
 * verifies rho(g) rho(s) = rho(gs) against a generating set, which by
 * induction on word length forces the full homomorphism property.
 */
class Representation {
 public:
  Representation(GroupRef group, FieldTag f, std::vector<Matrix> table, bool verify = true)
      : group_(std::move(group)), tag_(f), table_(std::move(table)) {
    if (table_.size() != group_->size()) throw error("representation table has wrong length");
    dim_ = table_[group_->identity()].rows();
    if (!(table_[group_->identity()] == Matrix::identity(dim_, tag_)))
      throw error("representation does not send the identity to the identity");
    if (verify) {
      for (std::uint32_t g = 0; g < group_->size(); ++g)
        for (auto s : group_->generators())
          if (!(table_[g] * table_[s] == table_[group_->mult(g, s)]))
            throw error("representation table is not multiplicative");
    }
  }

  static Representation trivial(const GroupRef& g, FieldTag f) {
    return Representation(g, f, std::vector<Matrix>(g->size(), Matrix::identity(1, f)), false);
  }

  /// One-dimensional representation from scalar values per element.
  static Representation character(const GroupRef& g, FieldTag f, const std::vector<Scalar>& values) {
    std::vector<Matrix> t(g->size(), Matrix(1, 1, f));
    for (std::uint32_t i = 0; i < g->size(); ++i) t[i].at(0, 0) = values[i];
    return Representation(g, f, std::move(t));
  }

  /// Permutation action on left cosets g K.
  static Representation permutation(const GroupRef& g, const Subgroup& k, FieldTag f) {
    auto reps = k.left_coset_reps();
    std::size_t n = reps.size();
    // coset index of each group element
    std::vector<std::size_t> coset(g->size());
    for (std::size_t c = 0; c < n; ++c)
      for (auto h : k.indices()) coset[g->mult(reps[c], h)] = c;
    std::vector<Matrix> t(g->size(), Matrix(n, n, f));
    for (std::uint32_t x = 0; x < g->size(); ++x)
      for (std::size_t c = 0; c < n; ++c) t[x].at(coset[g->mult(x, reps[c])], c) = Scalar::one(f);
    return Representation(g, f, std::move(t));
  }

  static Representation regular(const GroupRef& g, FieldTag f) {
    return permutation(g, Subgroup::trivial(g), f);
  }

  const GroupRef& group() const { return group_; }
  FieldTag field() const { return tag_; }
  std::size_t dim() const { return dim_; }
  const Matrix& rho(std::uint32_t g) const { return table_[g]; }

  Matrix apply(const AlgebraElement& f) const {
    if (f.host().get() != group_.get()) throw error("apply: element lives on another group");
    Matrix acc(dim_, dim_, tag_);
    for (const auto& [g, c] : f.terms()) acc = acc + c * table_[g];
    return acc;
  }

  Representation tensor(const Representation& other) const {
    if (group_.get() != other.group_.get()) throw error("tensor: different groups");
    std::vector<Matrix> t;
    t.reserve(group_->size());
    for (std::uint32_t g = 0; g < group_->size(); ++g)
      t.push_back(kronecker(table_[g], other.table_[g]));
    return Representation(group_, tag_, std::move(t), false);
  }

  Representation dual() const {
    std::vector<Matrix> t;
    t.reserve(group_->size());
    for (std::uint32_t g = 0; g < group_->size(); ++g)
      t.push_back(table_[group_->inverse(g)].transpose());
    return Representation(group_, tag_, std::move(t), false);
  }

  /// Smallest invariant subspace containing the seed vectors; returns the
  /// spanning basis (rows of an echelon) as vectors in this representation.
  std::vector<Vec> spin(const std::vector<Vec>& seeds) const {
    EchelonBasis eb(dim_, tag_);
    std::vector<Vec> queue;
    for (const auto& s : seeds)
      if (eb.add(s)) queue.push_back(s);
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (auto g : group_->generators()) {
        Vec img = table_[g].apply(queue[qi]);
        if (eb.add(img)) queue.push_back(img);
      }
    return eb.rows();
  }

  /// The subrepresentation on an invariant subspace given by basis vectors.
  /// Throws if the space is not invariant.
  Representation subrepresentation(const std::vector<Vec>& basis) const {
    std::size_t r = basis.size();
    Matrix c(dim_, r, tag_);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < dim_; ++i) c.at(i, j) = basis[j][i];
    EchelonBasis eb(dim_, tag_, /*track=*/true);
    for (const auto& b : basis)
      if (!eb.add(b)) throw error("subrepresentation: basis is dependent");
    std::vector<Matrix> t(group_->size(), Matrix(r, r, tag_));
    for (std::uint32_t g = 0; g < group_->size(); ++g)
      for (std::size_t j = 0; j < r; ++j) {
        Vec img = table_[g].apply(basis[j]);
        std::vector<Scalar> combo;
        Vec res = eb.reduce(img, &combo);
        for (const auto& x : res)
          if (!x.is_zero()) throw error("subrepresentation: space is not invariant");
        for (std::size_t i = 0; i < r; ++i) t[g].at(i, j) = combo[i];
      }
    return Representation(group_, tag_, std::move(t), false);
  }

 private:
  GroupRef group_;
  FieldTag tag_;
  std::size_t dim_ = 0;
  std::vector<Matrix> table_;
};

/// Basis of the intertwiner space Hom_G(V, W) = {X : X rho_V(g) = rho_W(g) X}.
inline std::vector<Matrix> hom_basis(const Representation& v, const Representation& w) {
  if (v.group().get() != w.group().get()) throw error("hom_basis: different groups");
  std::size_t dv = v.dim(), dw = w.dim();
  FieldTag f = v.field();
  const auto& gens = v.group()->generators();
  // unknowns X (dw x dv) flattened row-major; equations X rho_V(s) - rho_W(s) X = 0
  Matrix sys(gens.size() * dw * dv, dw * dv, f);
  std::size_t row = 0;
  for (auto s : gens) {
    const Matrix& rv = v.rho(s);
    const Matrix& rw = w.rho(s);
    for (std::size_t i = 0; i < dw; ++i)
      for (std::size_t j = 0; j < dv; ++j) {
        // coefficient of X_{i,k} is rv(k, j); of X_{l,j} is -rw(i, l)
        for (std::size_t k = 0; k < dv; ++k) sys.at(row, i * dv + k) += rv.at(k, j);
        for (std::size_t l = 0; l < dw; ++l) sys.at(row, l * dv + j) -= rw.at(i, l);
        ++row;
      }
  }
  std::vector<Matrix> out;
  for (const auto& x : kernel_basis(sys)) {
    Matrix m(dw, dv, f);
    for (std::size_t i = 0; i < dw; ++i)
      for (std::size_t j = 0; j < dv; ++j) m.at(i, j) = x[i * dv + j];
    out.push_back(std::move(m));
  }
  return out;
}

inline std::size_t hom_dim(const Representation& v, const Representation& w) {
  return hom_basis(v, w).size();
}

/**
 * Search for an invertible intertwiner.  Over Q the determinant polynomial on
 * the hom space is probed at pseudorandom integer points (Schwartz-Zippel
 * leaves a vanishing failure probability); over small prime fields all
 * combinations are enumerated when feasible.
 */
inline std::optional<Matrix> equivalence(const Representation& v, const Representation& w,
                                         std::uint64_t seed = 2024) {
  if (v.dim() != w.dim()) return std::nullopt;
  auto basis = hom_basis(v, w);
  if (basis.empty()) return std::nullopt;
  FieldTag f = v.field();
  auto check = [&](const Matrix& t) -> bool {
    auto ti = inverse(t);
    return ti.has_value();
  };
  for (const auto& b : basis)
    if (check(b)) return b;
  if (!f.is_rational()) {
    double total = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) total *= double(f.ell);
    if (total <= 1e5) {
      std::vector<std::uint64_t> c(basis.size(), 0);
      while (true) {
        std::size_t pos = 0;
        while (pos < c.size() && ++c[pos] == f.ell) c[pos++] = 0;
        if (pos == c.size()) break;
        Matrix t(w.dim(), v.dim(), f);
        for (std::size_t i = 0; i < basis.size(); ++i)
          if (c[i]) t = t + Scalar::modular(c[i], f) * basis[i];
        if (check(t)) return t;
      }
      return std::nullopt;
    }
  }
  Rng rng(seed);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix t(w.dim(), v.dim(), f);
    for (const auto& b : basis) {
      Scalar c = f.is_rational() ? Scalar::rational(long(rng() % 1000003), 1)
                                 : Scalar::modular(rng() % f.ell, f);
      t = t + c * b;
    }
    if (check(t)) return t;
  }
  return std::nullopt;
}

struct IrreducibilityReport {
  bool irreducible = false;
  bool certified = false;          // the verdict carries an exact certificate
  std::size_t proper_dim = 0;      // dimension of a proper submodule when reducible
  std::vector<Vec> submodule;      // its basis (primal or pulled back from the dual)
  bool from_dual = false;
  std::string method;
};

/**
 * Irreducibility test.  Layered strategy, every verdict carrying an exact
 * certificate where possible:
 *   1. in semisimple characteristic, End of dimension one proves
 *      irreducibility (converse Schur);
 *   2. a nonzero singular equivariant endomorphism proves reducibility (its
 *      kernel is a submodule); over small finite fields the whole End space
 *      is scanned, which in semisimple characteristic decides both ways;
 *   3. Norton draws: spin the kernel vectors of singular algebra elements;
 *      nullity-one elements whose primal and dual null vectors both spin to
 *      everything certify irreducibility.
 * Uncertified results (certified = false) only arise over Q when End is a
 * division algebra of dimension > 1; the strict wrapper refuses them.
 */
inline IrreducibilityReport is_irreducible(const Representation& v, std::uint64_t seed = 99,
                                           int max_draws = 120) {
  IrreducibilityReport rep;
  std::size_t d = v.dim();
  FieldTag f = v.field();
  if (d == 0) throw error("is_irreducible: zero representation");
  if (d == 1) {
    rep.irreducible = true;
    rep.certified = true;
    rep.method = "dimension one";
    return rep;
  }
  const GroupRef& g = v.group();
  bool semisimple = f.is_rational() || (g->size() % f.ell != 0);

  auto reducible_via = [&](std::vector<Vec> basis, bool dual_side, const char* how) {
    rep.irreducible = false;
    rep.certified = true;
    rep.proper_dim = basis.size();
    rep.submodule = std::move(basis);
    rep.from_dual = dual_side;
    rep.method = how;
    return rep;
  };

  if (d <= 20 || !f.is_rational()) {
    auto endo = hom_basis(v, v);
    if (semisimple && endo.size() == 1) {
      rep.irreducible = true;
      rep.certified = true;
      rep.method = "endomorphism ring is the ground field";
      return rep;
    }
    auto singular_submodule = [&](const Matrix& t) -> std::optional<std::vector<Vec>> {
      bool zero = true;
      for (std::size_t i = 0; i < d && zero; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (!t.at(i, j).is_zero()) {
            zero = false;
            break;
          }
      if (zero) return std::nullopt;
      auto ker = kernel_basis(t);
      if (ker.empty()) return std::nullopt;
      return ker;
    };
    for (const auto& h : endo)
      if (auto ker = singular_submodule(h))
        return reducible_via(std::move(*ker), false, "singular endomorphism");
    if (!f.is_rational()) {
      double total = 1;
      for (std::size_t i = 0; i < endo.size(); ++i) total *= double(f.ell);
      if (total <= 2e5) {
        std::vector<std::uint64_t> c(endo.size(), 0);
        while (true) {
          std::size_t pos = 0;
          while (pos < c.size() && ++c[pos] == f.ell) c[pos++] = 0;
          if (pos == c.size()) break;
          Matrix t(d, d, f);
          for (std::size_t i = 0; i < endo.size(); ++i)
            if (c[i]) t = t + Scalar::modular(c[i], f) * endo[i];
          if (auto ker = singular_submodule(t))
            return reducible_via(std::move(*ker), false, "singular endomorphism");
        }
        if (semisimple) {
          // semisimple + End a division algebra => irreducible
          rep.irreducible = true;
          rep.certified = true;
          rep.method = "endomorphism ring is a division algebra";
          return rep;
        }
      }
    } else {
      Rng er(seed ^ 0x5eed);
      for (std::size_t i = 0; i < endo.size(); ++i)
        for (std::size_t j = 0; j < endo.size(); ++j)
          for (long lam = -12; lam <= 12 && i != j; ++lam)
            if (auto ker = singular_submodule(endo[i] + Scalar::rational(lam) * endo[j]))
              return reducible_via(std::move(*ker), false, "singular endomorphism");
      for (int t = 0; t < 60; ++t) {
        Matrix comb(d, d, f);
        for (const auto& h : endo) comb = comb + Scalar::rational(long(er() % 41) - 20) * h;
        if (auto ker = singular_submodule(comb))
          return reducible_via(std::move(*ker), false, "singular endomorphism");
      }
    }
  }

  // Norton draws
  Rng rng(seed);
  Representation dv = v.dual();
  auto try_theta = [&](const Matrix& theta) -> std::optional<IrreducibilityReport> {
    auto ker = kernel_basis(theta);
    if (ker.empty() || ker.size() == d) return std::nullopt;
    for (const auto& k : ker) {
      auto spun = v.spin({k});
      if (spun.size() < d) return reducible_via(spun, false, "kernel vector spin");
    }
    if (ker.size() != 1) return std::nullopt;  // irreducibility certificate needs nullity one
    auto dker = kernel_basis(theta.transpose());
    auto spun = dv.spin({dker[0]});
    if (spun.size() < d) {
      // the annihilator of a dual submodule is a primal submodule
      Matrix rows(spun.size(), d, f);
      for (std::size_t i = 0; i < spun.size(); ++i)
        for (std::size_t j = 0; j < d; ++j) rows.at(i, j) = spun[i][j];
      return reducible_via(kernel_basis(rows), true, "dual kernel vector spin");
    }
    rep.irreducible = true;
    rep.certified = true;
    rep.method = "nullity-one element with full spins";
    return rep;
  };
  const auto& gens = g->generators();
  for (auto s : gens)
    if (auto r = try_theta(v.rho(s) - Matrix::identity(d, f))) return *r;
  for (auto s : gens)
    for (auto t : gens)
      if (s != t)
        if (auto r = try_theta(v.rho(s) - v.rho(t))) return *r;
  for (int draw = 0; draw < max_draws; ++draw) {
    Matrix theta(d, d, f);
    int terms = 2 + int(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      Scalar c = f.is_rational() ? Scalar::rational(long(rng() % 19) - 9, 1)
                                 : Scalar::modular(rng() % f.ell, f);
      theta = theta + c * v.rho(rng() % g->size());
    }
    if (auto r = try_theta(theta)) return *r;
  }
  rep.irreducible = false;
  rep.certified = false;
  rep.method = "inconclusive";
  return rep;
}

/// Strict variant: several independent seeds must agree and certify.
inline IrreducibilityReport is_irreducible_strict(const Representation& v, int seeds = 8) {
  IrreducibilityReport first = is_irreducible(v, 1000);
  for (int s = 1; s < seeds; ++s) {
    IrreducibilityReport r = is_irreducible(v, 1000 + s);
    if (!r.certified || r.irreducible != first.irreducible)
      throw theorem_violation("irreducibility verdicts disagree across seeds");
  }
  return first;
}

struct TraceIsoReport {
  std::size_t dim_invariants = 0;
  std::size_t dim_coinvariants = 0;
  std::size_t image_rank = 0;  // rank of the averaged operator
  bool bijective = false;
};

/**
 * The trace map coinvariants -> invariants, x |-> sum_g g x, on a tensor
 * product B (x) A.  For B a free module it is an isomorphism in every
 * characteristic; a trivial B over F_ell with ell | |G| breaks it.
 */
inline TraceIsoReport trace_iso_check(const Representation& b, const Representation& a) {
  Representation t = b.tensor(a);
  const GroupRef& g = t.group();
  FieldTag f = t.field();
  std::size_t d = t.dim();
  Matrix n(d, d, f);
  for (std::uint32_t x = 0; x < g->size(); ++x) n = n + t.rho(x);
  const auto& gens = g->generators();
  Matrix stacked(gens.size() * d, d, f);
  Matrix cols(d, gens.size() * d, f);
  for (std::size_t s = 0; s < gens.size(); ++s) {
    Matrix diff = t.rho(gens[s]) - Matrix::identity(d, f);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        stacked.at(s * d + i, j) = diff.at(i, j);
        cols.at(i, s * d + j) = diff.at(i, j);
      }
  }
  TraceIsoReport rep;
  rep.dim_invariants = d - matrix_rank(stacked);        // kernel of all (g - 1)
  rep.dim_coinvariants = d - matrix_rank(cols.transpose());  // quotient by the augmentation image
  rep.image_rank = matrix_rank(n);
  rep.bijective = rep.image_rank == rep.dim_invariants && rep.image_rank == rep.dim_coinvariants;
  return rep;
}

/**
 * The induction and restriction functors attached to one decomposition over
 * one coefficient field.  E = R[G] eps carries commuting left G and right M
 * actions; induction tensors over R[M], restriction applies eps.
 */
class Functors {
 public:
  Functors(IwahoriDecomposition dec, FieldTag f)
      : dec_(std::move(dec)), f_(f), zd_(z_element(dec_, f)) {
    auto [mg, back] = dec_.M.as_group("M of " + dec_.name);
    mgroup_ = mg;
    m_host_ = back;
    const GroupRef& host = dec_.host;
    std::size_t n = host->size();
    EchelonBasis eb(n, f_, /*track=*/false);
    Vec eps = zd_.epsilon.dense();
    for (std::uint32_t g = 0; g < n; ++g) {
      Vec tr = zero_vec(n, f_);
      for (std::uint32_t i = 0; i < n; ++i)
        if (!eps[i].is_zero()) tr[host->mult(g, i)] = eps[i];
      eb.add(tr);
    }
    basis_ = eb.rows();
    space_ = EchelonBasis(n, f_, /*track=*/true);
    for (const auto& b : basis_) space_.add(b);
    // left action of every g and right action of every m, in E coordinates
    auto coords = [&](const Vec& v) {
      std::vector<Scalar> combo;
      Vec res = space_.reduce(v, &combo);
      for (const auto& x : res)
        if (!x.is_zero()) throw theorem_violation("E is not stable under the action");
      return combo;
    };
    left_.assign(n, Matrix(basis_.size(), basis_.size(), f_));
    for (std::uint32_t g = 0; g < n; ++g)
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        Vec tr = zero_vec(n, f_);
        for (std::uint32_t i = 0; i < n; ++i)
          if (!basis_[k][i].is_zero()) tr[host->mult(g, i)] = basis_[k][i];
        auto c = coords(tr);
        for (std::size_t i = 0; i < basis_.size(); ++i) left_[g].at(i, k) = c[i];
      }
    right_.assign(mgroup_->size(), Matrix(basis_.size(), basis_.size(), f_));
    for (std::uint32_t m = 0; m < mgroup_->size(); ++m) {
      std::uint32_t hm = m_host_[m];
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        Vec tr = zero_vec(n, f_);
        for (std::uint32_t i = 0; i < n; ++i)
          if (!basis_[k][i].is_zero()) tr[host->mult(i, hm)] = basis_[k][i];
        auto c = coords(tr);
        for (std::size_t i = 0; i < basis_.size(); ++i) right_[m].at(i, k) = c[i];
      }
    }
  }

  const IwahoriDecomposition& dec() const { return dec_; }
  const ZData& z_data() const { return zd_; }
  const GroupRef& mgroup() const { return mgroup_; }
  std::size_t e_dim() const { return basis_.size(); }

  /// I(W) = E (x)_{R[M]} W with the left G-action.
  Representation induce(const Representation& w) const {
    if (w.group().get() != mgroup_.get()) throw error("induce: representation is not over M");
    std::size_t de = basis_.size(), dw = w.dim(), d = de * dw;
    EchelonBasis rel(d, f_);
    for (auto s : mgroup_->generators()) {
      const Matrix& rm = right_[s];
      const Matrix& wm = w.rho(s);
      for (std::size_t k = 0; k < de; ++k)
        for (std::size_t j = 0; j < dw; ++j) {
          Vec v = zero_vec(d, f_);
          for (std::size_t i = 0; i < de; ++i) v[i * dw + j] += rm.at(i, k);
          for (std::size_t l = 0; l < dw; ++l) v[k * dw + l] -= wm.at(l, j);
          rel.add(v);
        }
    }
    std::vector<bool> is_pivot(d, false);
    for (auto p : rel.pivots()) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < d; ++i)
      if (!is_pivot[i]) free.push_back(i);
    auto project = [&](Vec v) {
      Vec r = rel.reduce(v);
      Vec out = zero_vec(free.size(), f_);
      for (std::size_t i = 0; i < free.size(); ++i) out[i] = r[free[i]];
      return out;
    };
    std::vector<Matrix> table(dec_.host->size(), Matrix(free.size(), free.size(), f_));
    for (std::uint32_t g = 0; g < dec_.host->size(); ++g) {
      const Matrix& lg = left_[g];
      for (std::size_t c = 0; c < free.size(); ++c) {
        std::size_t k = free[c] / dw, j = free[c] % dw;
        Vec img = zero_vec(d, f_);
        for (std::size_t i = 0; i < de; ++i) img[i * dw + j] = lg.at(i, k);
        Vec pr = project(std::move(img));
        for (std::size_t i = 0; i < free.size(); ++i) table[g].at(i, c) = pr[i];
      }
    }
    return Representation(dec_.host, f_, std::move(table));
  }

  /// R(V) = eps V with the M-action through delta_m eps.
  Representation restrict(const Representation& v) const {
    if (v.group().get() != dec_.host.get()) throw error("restrict: representation is not over G");
    Matrix pe = v.apply(zd_.epsilon);
    EchelonBasis im(v.dim(), f_, /*track=*/true);
    std::vector<Vec> basis;
    for (std::size_t j = 0; j < v.dim(); ++j)
      if (im.add(pe.col(j))) continue;
    basis = im.rows();
    // rebuild with tracking over the final basis
    EchelonBasis span(v.dim(), f_, /*track=*/true);
    for (const auto& b : basis) span.add(b);
    std::vector<Matrix> table(mgroup_->size(), Matrix(basis.size(), basis.size(), f_));
    for (std::uint32_t m = 0; m < mgroup_->size(); ++m) {
      const Matrix& rm = v.rho(m_host_[m]);
      for (std::size_t j = 0; j < basis.size(); ++j) {
        Vec img = rm.apply(basis[j]);
        std::vector<Scalar> combo;
        Vec res = span.reduce(img, &combo);
        for (const auto& x : res)
          if (!x.is_zero()) throw theorem_violation("eps V is not M-stable");
        for (std::size_t i = 0; i < basis.size(); ++i) table[m].at(i, j) = combo[i];
      }
    }
    return Representation(mgroup_, f_, std::move(table));
  }

  /// U-invariants of a G-representation, as an M-representation.
  Representation u_invariants(const Representation& v) const {
    Matrix pu = v.apply(zd_.e_U);
    EchelonBasis im(v.dim(), f_);
    for (std::size_t j = 0; j < v.dim(); ++j) im.add(pu.col(j));
    auto basis = im.rows();
    EchelonBasis span(v.dim(), f_, /*track=*/true);
    for (const auto& b : basis) span.add(b);
    std::vector<Matrix> table(mgroup_->size(), Matrix(basis.size(), basis.size(), f_));
    for (std::uint32_t m = 0; m < mgroup_->size(); ++m) {
      const Matrix& rm = v.rho(m_host_[m]);
      for (std::size_t j = 0; j < basis.size(); ++j) {
        Vec img = rm.apply(basis[j]);
        std::vector<Scalar> combo;
        Vec res = span.reduce(img, &combo);
        for (const auto& x : res)
          if (!x.is_zero()) throw theorem_violation("e_U V is not M-stable");
        for (std::size_t i = 0; i < basis.size(); ++i) table[m].at(i, j) = combo[i];
      }
    }
    return Representation(mgroup_, f_, std::move(table));
  }

 private:
  IwahoriDecomposition dec_;
  FieldTag f_;
  ZData zd_;
  GroupRef mgroup_;
  std::vector<std::uint32_t> m_host_;
  std::vector<Vec> basis_;   // basis of E = R[G] eps inside R[G]
  EchelonBasis space_ = EchelonBasis(0, rationals());
  std::vector<Matrix> left_;   // G-action on E
  std::vector<Matrix> right_;  // M-action on E (right multiplication)
};

/// The four hom-space dimensions of the two-sided adjunction for (I, R).
struct AdjunctionDims {
  std::size_t hom_g_iw_v = 0;  // Hom_G(I(W), V)
  std::size_t hom_m_w_rv = 0;  // Hom_M(W, R(V))
  std::size_t hom_g_v_iw = 0;  // Hom_G(V, I(W))
  std::size_t hom_m_rv_w = 0;  // Hom_M(R(V), W)

  bool left_adjoint_ok() const { return hom_g_iw_v == hom_m_w_rv; }
  bool right_adjoint_ok() const { return hom_g_v_iw == hom_m_rv_w; }
  bool two_sided() const { return left_adjoint_ok() && right_adjoint_ok(); }
};

inline AdjunctionDims check_two_sided_adjunction(const Functors& fn, const Representation& w,
                                                 const Representation& v) {
  Representation iw = fn.induce(w);
  Representation rv = fn.restrict(v);
  AdjunctionDims d;
  d.hom_g_iw_v = hom_dim(iw, v);
  d.hom_m_w_rv = hom_dim(w, rv);
  d.hom_g_v_iw = hom_dim(v, iw);
  d.hom_m_rv_w = hom_dim(rv, w);
  return d;
}

/// Pseudorandom subrepresentation of a permutation module: spin a random
/// vector.  Deterministic in the seed.
inline Representation random_subrep(const Representation& v, std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 50; ++trial) {
    Vec seedv = zero_vec(v.dim(), v.field());
    for (std::size_t i = 0; i < v.dim(); ++i) {
      long c = long(rng() % 5) - 2;
      seedv[i] = v.field().is_rational() ? Scalar::rational(c)
                                         : Scalar::rational(c).reduced_mod(v.field());
    }
    bool zero = true;
    for (const auto& x : seedv) zero = zero && x.is_zero();
    if (zero) continue;
    auto basis = v.spin({seedv});
    return v.subrepresentation(basis);
  }
  throw error("random_subrep: could not draw a nonzero vector");
}

}  // namespace parind
