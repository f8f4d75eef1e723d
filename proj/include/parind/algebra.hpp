#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parind/group.hpp"
#include "parind/linalg.hpp"

namespace parind {

/**
 * Element of the group algebra R[G], stored sparsely as (element index,
 * coefficient) pairs sorted by index.  R is Q or F_ell through the shared
 * Scalar type; mixing hosts or coefficient fields throws.
 */
class AlgebraElement {
 public:
  AlgebraElement(GroupRef host, FieldTag f) : host_(std::move(host)), tag_(f) {}

  static AlgebraElement delta(const GroupRef& host, std::uint32_t g, FieldTag f) {
    AlgebraElement e(host, f);
    e.terms_.emplace_back(g, Scalar::one(f));
    return e;
  }
  static AlgebraElement unit(const GroupRef& host, FieldTag f) {
    return delta(host, host->identity(), f);
  }

  const GroupRef& host() const { return host_; }
  FieldTag field() const { return tag_; }
  const std::vector<std::pair<std::uint32_t, Scalar>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coeff(std::uint32_t g) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                               [](const auto& t, std::uint32_t k) { return t.first < k; });
    if (it == terms_.end() || it->first != g) return Scalar::zero(tag_);
    return it->second;
  }

  void add_term(std::uint32_t g, const Scalar& c) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                               [](const auto& t, std::uint32_t k) { return t.first < k; });
    if (it != terms_.end() && it->first == g) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    } else if (!c.is_zero()) {
      terms_.insert(it, {g, c});
    }
  }

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    a.check_compatible(b, "+");
    AlgebraElement c = a;
    for (const auto& [g, s] : b.terms_) c.add_term(g, s);
    return c;
  }
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    a.check_compatible(b, "-");
    AlgebraElement c = a;
    for (const auto& [g, s] : b.terms_) c.add_term(g, -s);
    return c;
  }
  friend AlgebraElement operator*(const Scalar& s, const AlgebraElement& a) {
    AlgebraElement c(a.host_, a.tag_);
    if (s.is_zero()) return c;
    c.terms_ = a.terms_;
    for (auto& [g, x] : c.terms_) x *= s;
    return c;
  }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.host_.get() == b.host_.get() && a.tag_ == b.tag_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

  /// g |-> f(g^-1)
  AlgebraElement antipode() const {
    AlgebraElement c(host_, tag_);
    for (const auto& [g, s] : terms_) c.add_term(host_->inverse(g), s);
    return c;
  }

  /// Coefficient vector over the full element table.
  Vec dense() const {
    Vec v = zero_vec(host_->size(), tag_);
    for (const auto& [g, s] : terms_) v[g] = s;
    return v;
  }

  static AlgebraElement from_dense(const GroupRef& host, const Vec& v, FieldTag f) {
    AlgebraElement e(host, f);
    for (std::uint32_t g = 0; g < v.size(); ++g)
      if (!v[g].is_zero()) e.terms_.emplace_back(g, v[g]);
    return e;
  }

  bool supported_in(const Subgroup& s) const {
    for (const auto& [g, c] : terms_)
      if (!s.contains(g)) return false;
    return true;
  }

  Scalar coefficient_sum() const {
    Scalar acc = Scalar::zero(tag_);
    for (const auto& [g, s] : terms_) acc += s;
    return acc;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [g, s] : terms_) {
      if (!out.empty()) out += " + ";
      out += s.str() + "*" + host_->elem(g).str();
    }
    return out;
  }

  void check_compatible(const AlgebraElement& b, const char* op) const {
    if (host_.get() != b.host_.get()) throw error(std::string("algebra ") + op + ": different groups");
    if (!(tag_ == b.tag_)) throw field_mismatch(std::string("algebra ") + op + ": different coefficient fields");
  }

 private:
  GroupRef host_;
  FieldTag tag_;
  std::vector<std::pair<std::uint32_t, Scalar>> terms_;
};

/// Convolution product in R[G].
inline AlgebraElement convolve(const AlgebraElement& a, const AlgebraElement& b) {
  a.check_compatible(b, "*");
  const GroupRef& host = a.host();
  Vec dense = zero_vec(host->size(), a.field());
  for (const auto& [x, ca] : a.terms())
    for (const auto& [y, cb] : b.terms()) dense[host->mult(x, y)] += ca * cb;
  return AlgebraElement::from_dense(host, dense, a.field());
}

inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  return convolve(a, b);
}

/// Normalized indicator e_K = |K|^-1 sum_{k in K} delta_k.  Throws when the
/// coefficient characteristic divides |K|.
inline AlgebraElement haar_idempotent(const Subgroup& K, FieldTag f) {
  Scalar c = Scalar::inverse_of_integer(static_cast<long>(K.size()), f);
  AlgebraElement e(K.host(), f);
  for (auto k : K.indices()) e.add_term(k, c);
  return e;
}

/// Does f commute with every element of G?  Checked on a generating set,
/// which suffices since centralizers are subgroups.
inline bool is_central(const AlgebraElement& f) {
  for (auto g : f.host()->generators()) {
    AlgebraElement d = AlgebraElement::delta(f.host(), g, f.field());
    if (!(d * f == f * d)) return false;
  }
  return true;
}

/// Centrality within the subalgebra R[M]: support inside M and commuting
/// with a generating set of M.
inline bool is_central_in_subgroup_algebra(const AlgebraElement& f, const Subgroup& M) {
  if (!f.supported_in(M)) return false;
  auto [mg, back] = M.as_group();
  for (auto gi : mg->generators()) {
    AlgebraElement d = AlgebraElement::delta(f.host(), back[gi], f.field());
    if (!(d * f == f * d)) return false;
  }
  return true;
}

/// Invertibility of f inside the subalgebra R[S] for a subgroup S containing
/// the support: solve f * x = unit by linear algebra on S's group algebra.
inline std::optional<AlgebraElement> subalgebra_inverse(const AlgebraElement& f, const Subgroup& S) {
  if (!f.supported_in(S)) throw error("subalgebra_inverse: support escapes the subgroup");
  const auto& idx = S.indices();
  std::size_t n = idx.size();
  const GroupRef& host = f.host();
  // column g: coefficients of f * delta_{idx[g]} over S
  Matrix m(n, n, f.field());
  for (std::size_t j = 0; j < n; ++j) {
    AlgebraElement col = f * AlgebraElement::delta(host, idx[j], f.field());
    for (std::size_t i = 0; i < n; ++i) m.at(i, j) = col.coeff(idx[i]);
  }
  Vec b = zero_vec(n, f.field());
  for (std::size_t i = 0; i < n; ++i)
    if (idx[i] == host->identity()) b[i] = Scalar::one(f.field());
  auto x = solve_linear(m, b);
  if (!x) return std::nullopt;
  AlgebraElement out(host, f.field());
  for (std::size_t i = 0; i < n; ++i) out.add_term(idx[i], (*x)[i]);
  // two-sided check; in a finite-dimensional algebra a right inverse is an
  // inverse, but verify anyway
  if (!(f * out == AlgebraElement::unit(host, f.field())) ||
      !(out * f == AlgebraElement::unit(host, f.field())))
    throw theorem_violation("subalgebra_inverse: one-sided inverse only");
  return out;
}

/// Matrix of left multiplication x |-> f * x restricted to span{delta_s : s in S}.
inline Matrix left_multiplication_matrix(const AlgebraElement& f, const Subgroup& S) {
  const auto& idx = S.indices();
  std::size_t n = idx.size();
  Matrix m(n, n, f.field());
  for (std::size_t j = 0; j < n; ++j) {
    AlgebraElement col = f * AlgebraElement::delta(f.host(), idx[j], f.field());
    for (std::size_t i = 0; i < n; ++i) m.at(i, j) = col.coeff(idx[i]);
  }
  return m;
}

struct MembershipWitness {
  bool member = false;
  bool verified = false;  // the certificate was recombined and compared exactly
  // left-ideal case: f = sum_i coeffs[i] * delta_{left[i]} * t * delta_{right[i]};
  // right factors stay at the identity for one-sided membership
  std::vector<std::uint32_t> left, right;
  std::vector<Scalar> coeffs;
  std::string digest;  // stable fingerprint of the certificate

  std::string describe(const GroupRef& host) const {
    if (!member) return "not a member";
    std::string s;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (!s.empty()) s += " + ";
      s += coeffs[i].str() + "*[" + host->elem(left[i]).str() + "]*t*[" +
           host->elem(right[i]).str() + "]";
    }
    return s;
  }
};

namespace detail {
inline std::string witness_payload(const MembershipWitness& w, const GroupRef& host) {
  std::string s = w.member ? "member;" : "non-member;";
  for (std::size_t i = 0; i < w.coeffs.size(); ++i)
    s += host->elem(w.left[i]).str() + "|" + host->elem(w.right[i]).str() + "|" +
         w.coeffs[i].str() + ";";
  return s;
}
}  // namespace detail

/**
 * Membership of f in the left ideal R[G] * t, with an explicit certificate.
 * The spanning set {delta_g * t} is deduplicated by cosets of the left
 * stabilizer of t before any linear algebra.
 */
inline MembershipWitness left_ideal_membership(const AlgebraElement& f, const AlgebraElement& t) {
  f.check_compatible(t, "left_ideal_membership");
  const GroupRef& host = f.host();
  std::size_t n = host->size();
  // left stabilizer {s : delta_s * t = t}
  std::vector<std::uint32_t> stab;
  for (std::uint32_t s = 0; s < n; ++s) {
    bool ok = true;
    for (const auto& [g, c] : t.terms())
      if (!(t.coeff(host->mult(s, g)) == c)) {
        ok = false;
        break;
      }
    if (ok) stab.push_back(s);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t g = 0; g < n; ++g) {
    if (seen[g]) continue;
    reps.push_back(g);
    for (auto s : stab) seen[host->mult(g, s)] = true;
  }
  EchelonBasis eb(n, f.field(), /*track=*/true);
  for (auto g : reps) eb.add((AlgebraElement::delta(host, g, f.field()) * t).dense());
  std::vector<Scalar> combo;
  Vec res = eb.reduce(f.dense(), &combo);
  MembershipWitness w;
  for (const auto& x : res)
    if (!x.is_zero()) {
      w.digest = hex64(fnv1a(detail::witness_payload(w, host)));
      return w;
    }
  w.member = true;
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (!combo[i].is_zero()) {
      w.left.push_back(reps[i]);
      w.right.push_back(host->identity());
      w.coeffs.push_back(combo[i]);
    }
  // re-derive the combination independently of the echelon bookkeeping
  AlgebraElement acc(host, f.field());
  for (std::size_t i = 0; i < w.coeffs.size(); ++i)
    acc = acc + w.coeffs[i] * (AlgebraElement::delta(host, w.left[i], f.field()) * t);
  w.verified = acc == f;
  if (!w.verified) throw theorem_violation("left ideal membership certificate failed recombination");
  w.digest = hex64(fnv1a(detail::witness_payload(w, host)));
  return w;
}

/**
 * Membership of f in the two-sided ideal R[G] * t * R[G].  The ideal is
 * closed up from t by multiplying basis survivors with group generators on
 * both sides; certificates record (left, right) translation pairs.
 */
inline MembershipWitness two_sided_ideal_membership(const AlgebraElement& f, const AlgebraElement& t,
                                                    std::size_t add_cap = 5000) {
  f.check_compatible(t, "two_sided_ideal_membership");
  const GroupRef& host = f.host();
  std::size_t n = host->size();
  EchelonBasis eb(n, f.field(), /*track=*/true);
  // generating pairs (a, b) with row delta_a * t * delta_b
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> queue{{host->identity(), host->identity()}};
  std::size_t added = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    auto [a, b] = queue[qi];
    AlgebraElement row = AlgebraElement::delta(host, a, f.field()) * t *
                         AlgebraElement::delta(host, b, f.field());
    if (++added > add_cap) throw error("two_sided_ideal_membership: expansion cap exceeded");
    pairs.emplace_back(a, b);
    if (eb.add(row.dense())) {
      for (auto s : host->generators()) {
        queue.emplace_back(host->mult(s, a), b);
        queue.emplace_back(a, host->mult(b, s));
      }
    }
  }
  std::vector<Scalar> combo;
  Vec res = eb.reduce(f.dense(), &combo);
  MembershipWitness w;
  for (const auto& x : res)
    if (!x.is_zero()) {
      w.digest = hex64(fnv1a(detail::witness_payload(w, host)));
      return w;
    }
  w.member = true;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (!combo[i].is_zero()) {
      w.left.push_back(pairs[i].first);
      w.right.push_back(pairs[i].second);
      w.coeffs.push_back(combo[i]);
    }
  AlgebraElement acc(host, f.field());
  for (std::size_t i = 0; i < w.coeffs.size(); ++i)
    acc = acc + w.coeffs[i] * (AlgebraElement::delta(host, w.left[i], f.field()) * t *
                               AlgebraElement::delta(host, w.right[i], f.field()));
  w.verified = acc == f;
  if (!w.verified) throw theorem_violation("two-sided ideal membership certificate failed recombination");
  w.digest = hex64(fnv1a(detail::witness_payload(w, host)));
  return w;
}

/// dim of the subspace e_left * R[G] * e_right, by spanning over group deltas.
inline std::size_t sandwich_rank(const AlgebraElement& left, const AlgebraElement& right) {
  left.check_compatible(right, "sandwich_rank");
  const GroupRef& host = left.host();
  EchelonBasis eb(host->size(), left.field());
  for (std::uint32_t g = 0; g < host->size(); ++g)
    eb.add((left * AlgebraElement::delta(host, g, left.field()) * right).dense());
  return eb.rank();
}

}  // namespace parind
