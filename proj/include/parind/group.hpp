#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parind/common.hpp"
#include "parind/scalar.hpp"

namespace parind {

/// Matrix over Z/p^n, the common element type of every group in the library.
/// Entries are canonical representatives in [0, mod); mod <= 64 so the whole
/// matrix packs into one 64-bit key (6 bits per entry, at most 9 entries).
struct GroupElement {
  std::uint8_t dim = 0;
  std::uint8_t mod = 0;  // p^n
  std::array<std::uint8_t, 9> a{};

  static GroupElement identity(unsigned dim, unsigned mod) {
    GroupElement e;
    e.dim = static_cast<std::uint8_t>(dim);
    e.mod = static_cast<std::uint8_t>(mod);
    for (unsigned i = 0; i < dim; ++i) e.at(i, i) = 1;
    return e;
  }

  std::uint8_t& at(unsigned i, unsigned j) { return a[i * dim + j]; }
  std::uint8_t at(unsigned i, unsigned j) const { return a[i * dim + j]; }

  std::uint64_t pack() const {
    std::uint64_t k = 0;
    for (unsigned i = 0; i < unsigned(dim) * dim; ++i) k |= std::uint64_t(a[i]) << (6 * i);
    return k;
  }

  friend bool operator==(const GroupElement& x, const GroupElement& y) {
    return x.dim == y.dim && x.mod == y.mod && x.a == y.a;
  }

  std::string str() const {
    std::string s = "[";
    for (unsigned i = 0; i < dim; ++i) {
      s += i ? ";" : "";
      for (unsigned j = 0; j < dim; ++j) s += (j ? "," : "") + std::to_string(at(i, j));
    }
    return s + "]";
  }
};

inline GroupElement make_element(unsigned dim, unsigned mod, std::initializer_list<int> entries) {
  if (mod > 64) throw error("GroupElement: modulus above 64 unsupported");
  if (entries.size() != dim * dim) throw error("make_element: wrong entry count");
  GroupElement e;
  e.dim = static_cast<std::uint8_t>(dim);
  e.mod = static_cast<std::uint8_t>(mod);
  unsigned i = 0;
  for (int v : entries) {
    int m = static_cast<int>(mod);
    int r = ((v % m) + m) % m;
    e.a[i++] = static_cast<std::uint8_t>(r);
  }
  return e;
}

inline GroupElement mul(const GroupElement& x, const GroupElement& y) {
  GroupElement z;
  z.dim = x.dim;
  z.mod = x.mod;
  unsigned d = x.dim, m = x.mod;
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) {
      unsigned s = 0;
      for (unsigned k = 0; k < d; ++k) s += unsigned(x.at(i, k)) * y.at(k, j);
      z.at(i, j) = static_cast<std::uint8_t>(s % m);
    }
  return z;
}

inline unsigned det_mod(const GroupElement& x) {
  unsigned m = x.mod;
  auto e = [&](unsigned i, unsigned j) { return unsigned(x.at(i, j)); };
  long long d;
  if (x.dim == 1)
    d = e(0, 0);
  else if (x.dim == 2)
    d = static_cast<long long>(e(0, 0)) * e(1, 1) - static_cast<long long>(e(0, 1)) * e(1, 0);
  else if (x.dim == 3)
    d = static_cast<long long>(e(0, 0)) * (static_cast<long long>(e(1, 1)) * e(2, 2) - static_cast<long long>(e(1, 2)) * e(2, 1)) -
        static_cast<long long>(e(0, 1)) * (static_cast<long long>(e(1, 0)) * e(2, 2) - static_cast<long long>(e(1, 2)) * e(2, 0)) +
        static_cast<long long>(e(0, 2)) * (static_cast<long long>(e(1, 0)) * e(2, 1) - static_cast<long long>(e(1, 1)) * e(2, 0));
  else
    throw error("det_mod: dimension above 3 unsupported");
  long long mm = m;
  return static_cast<unsigned>(((d % mm) + mm) % mm);
}

namespace detail {
inline unsigned inv_unit_mod(unsigned a, unsigned m) {
  // extended Euclid; requires gcd(a, m) = 1
  long long t = 0, nt = 1, r = m, nr = a % m;
  while (nr != 0) {
    long long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw error("inv_unit_mod: not a unit");
  if (t < 0) t += m;
  return static_cast<unsigned>(t);
}
}  // namespace detail

/// Inverse via the adjugate; requires det to be a unit mod p^n.
inline GroupElement inv(const GroupElement& x) {
  unsigned m = x.mod, d = x.dim;
  unsigned dt = det_mod(x);
  unsigned dti = detail::inv_unit_mod(dt, m);
  GroupElement z;
  z.dim = x.dim;
  z.mod = x.mod;
  auto e = [&](unsigned i, unsigned j) { return static_cast<long long>(x.at(i, j)); };
  auto put = [&](unsigned i, unsigned j, long long v) {
    long long mm = m;
    z.at(i, j) = static_cast<std::uint8_t>((((v % mm) + mm) % mm * dti) % mm);
  };
  if (d == 1) {
    put(0, 0, 1);
  } else if (d == 2) {
    put(0, 0, e(1, 1));
    put(0, 1, -e(0, 1));
    put(1, 0, -e(1, 0));
    put(1, 1, e(0, 0));
  } else if (d == 3) {
    for (unsigned i = 0; i < 3; ++i)
      for (unsigned j = 0; j < 3; ++j) {
        unsigned r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
        // adjugate entry (j, i): cofactor with the usual sign built in by the
        // cyclic index choice
        long long cof = e(r0, c0) * e(r1, c1) - e(r0, c1) * e(r1, c0);
        put(j, i, cof);
      }
  } else {
    throw error("inv: dimension above 3 unsupported");
  }
  return z;
}

enum class Family { SL2, GL2, GL3, Custom };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::SL2: return "SL2";
    case Family::GL2: return "GL2";
    case Family::GL3: return "GL3";
    default: return "custom";
  }
}

class FiniteGroup;
using GroupRef = std::shared_ptr<const FiniteGroup>;

/**
 * A finite matrix group over Z/p^n with a canonical, deterministically sorted
 * element table.  Elements are addressed by index into that table; products
 * are memoized lazily into a write-once table when the order is small enough
 * for the quadratic memo to be worthwhile.
 */
class FiniteGroup {
 public:
  static constexpr std::size_t kDefaultOrderCap = 100000;
  static constexpr std::size_t kMemoMaxOrder = 1024;

  /// Full congruence quotient SL2/GL2/GL3 over Z/p^n by direct enumeration.
  static GroupRef congruence_quotient(Family fam, unsigned p, unsigned n,
                                      std::size_t order_cap = kDefaultOrderCap) {
    if (!is_prime_u64(p)) throw error("congruence_quotient: p = " + std::to_string(p) + " is not prime");
    if (fam == Family::Custom) throw error("congruence_quotient: family must be SL2, GL2 or GL3");
    unsigned d = fam == Family::GL3 ? 3 : 2;
    unsigned mod = 1;
    for (unsigned i = 0; i < n; ++i) {
      if (mod * p > 64) throw error("congruence_quotient: p^n above 64 unsupported");
      mod *= p;
    }
    double count = 1;
    for (unsigned i = 0; i < d * d; ++i) count *= mod;
    if (count > 2.2e7) throw error("congruence_quotient: enumeration too large");
    std::vector<GroupElement> elems;
    GroupElement e;
    e.dim = static_cast<std::uint8_t>(d);
    e.mod = static_cast<std::uint8_t>(mod);
    std::function<void(unsigned)> rec = [&](unsigned pos) {
      if (pos == d * d) {
        unsigned dt = det_mod(e);
        bool ok = fam == Family::SL2 ? dt == 1 : dt % p != 0;
        if (ok) {
          elems.push_back(e);
          if (elems.size() > order_cap) throw error("congruence_quotient: order cap exceeded");
        }
        return;
      }
      for (unsigned v = 0; v < mod; ++v) {
        e.a[pos] = static_cast<std::uint8_t>(v);
        rec(pos + 1);
      }
      e.a[pos] = 0;
    };
    rec(0);
    std::string nm = family_name(fam) + "(Z/" + std::to_string(mod) + ")";
    return finish(nm, fam, p, n, std::move(elems), /*verify_closure=*/false);
  }

  /// Group from an explicit element list (deduplicated, closure verified).
  static GroupRef from_elements(std::string name, unsigned p, std::vector<GroupElement> elems) {
    unsigned n = infer_n(p, elems);
    return finish(std::move(name), Family::Custom, p, n, std::move(elems),
                  /*verify_closure=*/true);
  }

  /// Closure of a generating set.
  static GroupRef from_generators(std::string name, unsigned p, std::vector<GroupElement> gens,
                                  std::size_t order_cap = kDefaultOrderCap) {
    if (gens.empty()) throw error("from_generators: need at least one generator");
    std::vector<GroupElement> elems{GroupElement::identity(gens[0].dim, gens[0].mod)};
    std::vector<std::uint64_t> seen{elems[0].pack()};
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (const auto& g : gens) {
        GroupElement h = mul(elems[i], g);
        std::uint64_t k = h.pack();
        if (std::find(seen.begin(), seen.end(), k) == seen.end()) {
          seen.push_back(k);
          elems.push_back(h);
          if (elems.size() > order_cap) throw error("from_generators: order cap exceeded");
        }
      }
    unsigned n = infer_n(p, elems);
    return finish(std::move(name), Family::Custom, p, n, std::move(elems),
                  /*verify_closure=*/false);
  }

  std::size_t size() const { return elems_.size(); }
  unsigned dim() const { return dim_; }
  unsigned mod() const { return mod_; }
  unsigned p() const { return p_; }
  unsigned level() const { return n_; }
  Family family() const { return family_; }
  const std::string& name() const { return name_; }

  const GroupElement& elem(std::uint32_t i) const { return elems_[i]; }
  std::uint32_t identity() const { return identity_; }

  std::optional<std::uint32_t> find(const GroupElement& g) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), g.pack());
    if (it == keys_.end() || *it != g.pack()) return std::nullopt;
    return static_cast<std::uint32_t>(it - keys_.begin());
  }
  std::uint32_t index_of(const GroupElement& g) const {
    auto i = find(g);
    if (!i) throw error("element not in group " + name_);
    return *i;
  }

  std::uint32_t mult(std::uint32_t i, std::uint32_t j) const {
    if (memo_) {
      std::atomic<std::uint32_t>& cell = memo_[i * size() + j];
      std::uint32_t v = cell.load(std::memory_order_relaxed);
      if (v != UINT32_MAX) return v;
      std::uint32_t r = index_of(mul(elems_[i], elems_[j]));
      cell.store(r, std::memory_order_relaxed);  // write-once value, races benign
      return r;
    }
    return index_of(mul(elems_[i], elems_[j]));
  }

  std::uint32_t inverse(std::uint32_t i) const { return inv_[i]; }

  std::uint32_t conj(std::uint32_t g, std::uint32_t x) const {
    return mult(mult(g, x), inverse(g));
  }

  /// Small generating set found greedily over the canonical element order.
  const std::vector<std::uint32_t>& generators() const { return gens_; }

 private:
  static unsigned infer_n(unsigned p, const std::vector<GroupElement>& elems) {
    if (elems.empty()) throw error("empty element list");
    unsigned mod = elems[0].mod, n = 0, m = 1;
    while (m < mod) {
      m *= p;
      ++n;
    }
    if (m != mod) throw error("modulus " + std::to_string(mod) + " is not a power of " + std::to_string(p));
    return n == 0 ? 1 : n;
  }

  static GroupRef finish(std::string name, Family fam, unsigned p, unsigned n,
                         std::vector<GroupElement> elems, bool verify_closure) {
    auto g = std::make_shared<FiniteGroup>();
    if (elems.empty()) throw error("group with no elements");
    g->name_ = std::move(name);
    g->family_ = fam;
    g->p_ = p;
    g->n_ = n;
    g->dim_ = elems[0].dim;
    g->mod_ = elems[0].mod;
    std::sort(elems.begin(), elems.end(),
              [](const GroupElement& a, const GroupElement& b) { return a.pack() < b.pack(); });
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    g->elems_ = std::move(elems);
    g->keys_.reserve(g->elems_.size());
    for (const auto& e : g->elems_) {
      if (e.dim != g->dim_ || e.mod != g->mod_) throw error("mixed element shapes in group");
      g->keys_.push_back(e.pack());
    }
    auto id = g->find(GroupElement::identity(g->dim_, g->mod_));
    if (!id) throw error("group " + g->name_ + " misses the identity");
    g->identity_ = *id;
    g->inv_.resize(g->size());
    for (std::uint32_t i = 0; i < g->size(); ++i) {
      auto j = g->find(inv(g->elems_[i]));
      if (!j) throw error("group " + g->name_ + " not closed under inverse");
      g->inv_[i] = *j;
    }
    if (g->size() <= kMemoMaxOrder) {
      g->memo_ = std::make_unique<std::atomic<std::uint32_t>[]>(g->size() * g->size());
      for (std::size_t i = 0; i < g->size() * g->size(); ++i)
        g->memo_[i].store(UINT32_MAX, std::memory_order_relaxed);
    }
    if (verify_closure) {
      for (std::uint32_t i = 0; i < g->size(); ++i)
        for (std::uint32_t j = 0; j < g->size(); ++j)
          if (!g->find(mul(g->elems_[i], g->elems_[j])))
            throw error("group " + g->name_ + " not closed under products");
    }
    // greedy generators
    std::vector<bool> in_closure(g->size(), false);
    std::vector<std::uint32_t> closure{g->identity_};
    in_closure[g->identity_] = true;
    for (std::uint32_t c = 0; c < g->size(); ++c) {
      if (in_closure[c]) continue;
      g->gens_.push_back(c);
      for (std::size_t i = 0; i < closure.size(); ++i)
        for (auto gen : g->gens_) {
          std::uint32_t x = g->mult(closure[i], gen);
          if (!in_closure[x]) {
            in_closure[x] = true;
            closure.push_back(x);
          }
          x = g->mult(gen, closure[i]);
          if (!in_closure[x]) {
            in_closure[x] = true;
            closure.push_back(x);
          }
        }
    }
    return g;
  }

 public:
  FiniteGroup() = default;
  FiniteGroup(const FiniteGroup&) = delete;
  FiniteGroup& operator=(const FiniteGroup&) = delete;

 private:
  std::string name_;
  Family family_ = Family::Custom;
  unsigned p_ = 2, n_ = 1, dim_ = 1, mod_ = 2;
  std::vector<GroupElement> elems_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> inv_;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> gens_;
  mutable std::unique_ptr<std::atomic<std::uint32_t>[]> memo_;
};

/// Subgroup given by a sorted index list into the host's element table.
/// Construction verifies identity membership and closure.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(GroupRef host, std::vector<std::uint32_t> idx, std::string name = "")
      : host_(std::move(host)), idx_(std::move(idx)), name_(std::move(name)) {
    std::sort(idx_.begin(), idx_.end());
    idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
    if (!contains(host_->identity())) throw error("subgroup " + name_ + " misses the identity");
    for (auto i : idx_)
      for (auto j : idx_)
        if (!contains(host_->mult(i, j)))
          throw error("subgroup " + name_ + " of " + host_->name() + " not closed");
  }

  static Subgroup from_predicate(const GroupRef& host,
                                 const std::function<bool(const GroupElement&)>& pred,
                                 std::string name = "") {
    std::vector<std::uint32_t> idx;
    for (std::uint32_t i = 0; i < host->size(); ++i)
      if (pred(host->elem(i))) idx.push_back(i);
    return Subgroup(host, std::move(idx), std::move(name));
  }

  static Subgroup whole(const GroupRef& host) {
    std::vector<std::uint32_t> idx(host->size());
    for (std::uint32_t i = 0; i < host->size(); ++i) idx[i] = i;
    return Subgroup(host, std::move(idx), host->name());
  }

  static Subgroup trivial(const GroupRef& host) {
    return Subgroup(host, {host->identity()}, "1");
  }

  const GroupRef& host() const { return host_; }
  std::size_t size() const { return idx_.size(); }
  const std::vector<std::uint32_t>& indices() const { return idx_; }
  const std::string& name() const { return name_; }

  bool contains(std::uint32_t i) const {
    return std::binary_search(idx_.begin(), idx_.end(), i);
  }

  bool normalizes(const Subgroup& other) const {
    for (auto m : idx_)
      for (auto u : other.idx_)
        if (!other.contains(host_->conj(m, u))) return false;
    return true;
  }

  bool is_normal_in(const Subgroup& ambient) const { return ambient.normalizes(*this); }

  /// The subgroup as a standalone group, plus the host-index of each element
  /// of the new table (parallel to its canonical order).
  std::pair<GroupRef, std::vector<std::uint32_t>> as_group(std::string name = "") const {
    std::vector<GroupElement> elems;
    elems.reserve(idx_.size());
    for (auto i : idx_) elems.push_back(host_->elem(i));
    GroupRef g = FiniteGroup::from_elements(name.empty() ? name_ : std::move(name), host_->p(), elems);
    std::vector<std::uint32_t> back(g->size());
    for (auto i : idx_) back[g->index_of(host_->elem(i))] = i;
    return {g, back};
  }

  /// Representatives of left cosets g * this.
  std::vector<std::uint32_t> left_coset_reps() const {
    std::vector<bool> seen(host_->size(), false);
    std::vector<std::uint32_t> reps;
    for (std::uint32_t g = 0; g < host_->size(); ++g) {
      if (seen[g]) continue;
      reps.push_back(g);
      for (auto h : idx_) seen[host_->mult(g, h)] = true;
    }
    return reps;
  }

 private:
  GroupRef host_;
  std::vector<std::uint32_t> idx_;
  std::string name_;
};

/// Block pattern (n_1, ..., n_k), a composition of the matrix dimension.
struct BlockPattern {
  std::vector<unsigned> sizes;

  unsigned total() const {
    unsigned t = 0;
    for (auto s : sizes) t += s;
    return t;
  }
  unsigned blocks() const { return static_cast<unsigned>(sizes.size()); }
  unsigned start(unsigned b) const {
    unsigned s = 0;
    for (unsigned i = 0; i < b; ++i) s += sizes[i];
    return s;
  }
  /// block index owning row/column r
  unsigned block_of(unsigned r) const {
    unsigned b = 0, s = 0;
    while (r >= s + sizes[b]) s += sizes[b++];
    return b;
  }
  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < sizes.size(); ++i) s += (i ? "," : "") + std::to_string(sizes[i]);
    return s + ")";
  }
};

namespace blockpred {

/// g has identity diagonal blocks, zero lower blocks, and strictly upper
/// blocks divisible by p^e.
inline bool upper_unipotent(const GroupElement& g, const BlockPattern& pat, unsigned p, unsigned e) {
  unsigned pe = 1;
  for (unsigned i = 0; i < e; ++i) pe *= p;
  for (unsigned r = 0; r < g.dim; ++r)
    for (unsigned c = 0; c < g.dim; ++c) {
      unsigned br = pat.block_of(r), bc = pat.block_of(c);
      unsigned v = g.at(r, c);
      if (br == bc) {
        if (v != (r == c ? 1u : 0u)) return false;
      } else if (br < bc) {
        if (v % pe != 0) return false;
      } else if (v != 0) {
        return false;
      }
    }
  return true;
}

inline bool lower_unipotent(const GroupElement& g, const BlockPattern& pat, unsigned p, unsigned e) {
  unsigned pe = 1;
  for (unsigned i = 0; i < e; ++i) pe *= p;
  for (unsigned r = 0; r < g.dim; ++r)
    for (unsigned c = 0; c < g.dim; ++c) {
      unsigned br = pat.block_of(r), bc = pat.block_of(c);
      unsigned v = g.at(r, c);
      if (br == bc) {
        if (v != (r == c ? 1u : 0u)) return false;
      } else if (br > bc) {
        if (v % pe != 0) return false;
      } else if (v != 0) {
        return false;
      }
    }
  return true;
}

/// g is block diagonal; with e >= 1 additionally g = 1 mod p^e.
inline bool block_diagonal(const GroupElement& g, const BlockPattern& pat, unsigned p, unsigned e) {
  unsigned pe = 1;
  for (unsigned i = 0; i < e; ++i) pe *= p;
  for (unsigned r = 0; r < g.dim; ++r)
    for (unsigned c = 0; c < g.dim; ++c) {
      unsigned v = g.at(r, c);
      if (pat.block_of(r) != pat.block_of(c)) {
        if (v != 0) return false;
      } else if (e > 0 && (v + pe - (r == c ? 1u : 0u)) % pe != 0) {
        return false;
      }
    }
  return true;
}

/// g lies in the standard parahoric set: lower blocks = 0 mod p; with pro_p
/// also diagonal blocks = 1 mod p.
inline bool parahoric_member(const GroupElement& g, const BlockPattern& pat, unsigned p, bool pro_p) {
  for (unsigned r = 0; r < g.dim; ++r)
    for (unsigned c = 0; c < g.dim; ++c) {
      unsigned br = pat.block_of(r), bc = pat.block_of(c);
      unsigned v = g.at(r, c);
      if (br > bc && v % p != 0) return false;
      if (pro_p && br == bc && (v + p - (r == c ? 1u : 0u)) % p != 0) return false;
    }
  return true;
}

}  // namespace blockpred

/**
 * Triple (U, M, Ubar) inside a host group G with the product map
 * U x M x Ubar -> G bijective and M normalizing U and Ubar.  The witness
 * table stores the factorization of every host element.
 */
struct IwahoriDecomposition {
  GroupRef host;
  Subgroup U, M, Ubar;
  std::vector<std::array<std::uint32_t, 3>> factor;  // host index -> (u, m, ubar) host indices
  std::string name;
};

struct IwahoriReport {
  bool normalizer_ok = false;   // M normalizes U and Ubar
  bool product_bijective = false;
  bool filtration_compatible = false;  // congruence filtration factors levelwise
  std::vector<std::array<std::uint32_t, 3>> witness;

  bool all_ok() const { return normalizer_ok && product_bijective && filtration_compatible; }
};

/// Check the decomposition axioms by exhaustive product enumeration.
inline IwahoriReport verify_iwahori(const GroupRef& host, const Subgroup& U, const Subgroup& M,
                                    const Subgroup& Ubar) {
  IwahoriReport rep;
  rep.normalizer_ok = M.normalizes(U) && M.normalizes(Ubar);
  rep.witness.assign(host->size(), {UINT32_MAX, UINT32_MAX, UINT32_MAX});
  std::size_t hits = 0;
  bool unique = true;
  for (auto u : U.indices())
    for (auto m : M.indices()) {
      std::uint32_t um = host->mult(u, m);
      for (auto ub : Ubar.indices()) {
        std::uint32_t g = host->mult(um, ub);
        if (rep.witness[g][0] != UINT32_MAX)
          unique = false;
        else {
          rep.witness[g] = {u, m, ub};
          ++hits;
        }
      }
    }
  rep.product_bijective = unique && hits == host->size();
  if (rep.product_bijective) {
    rep.filtration_compatible = true;
    unsigned mod = host->mod(), p = host->p();
    for (unsigned pe = p; pe <= mod && rep.filtration_compatible; pe *= p) {
      auto congruent_identity = [&](const GroupElement& g) {
        for (unsigned r = 0; r < g.dim; ++r)
          for (unsigned c = 0; c < g.dim; ++c)
            if ((g.at(r, c) + pe - (r == c ? 1u : 0u)) % pe != 0) return false;
        return true;
      };
      for (std::uint32_t g = 0; g < host->size(); ++g) {
        if (!congruent_identity(host->elem(g))) continue;
        const auto& w = rep.witness[g];
        if (!congruent_identity(host->elem(w[0])) || !congruent_identity(host->elem(w[1])) ||
            !congruent_identity(host->elem(w[2]))) {
          rep.filtration_compatible = false;
          break;
        }
      }
      if (pe > mod / p) break;
    }
  }
  return rep;
}

/**
 * Standard (pro-p) Iwahori-type decomposition of the parahoric set inside a
 * congruence quotient:  U upper block-unipotent, M block-diagonal (= 1 mod p
 * when pro_p), Ubar lower block-unipotent with lower blocks = 0 mod p.  The
 * host of the result is the subgroup U*M*Ubar itself.
 */
inline IwahoriDecomposition standard_iwahori(const GroupRef& big, const BlockPattern& pat,
                                             bool pro_p) {
  if (pat.total() != big->dim()) throw error("standard_iwahori: pattern does not sum to the dimension");
  unsigned p = big->p();
  std::vector<GroupElement> members;
  for (std::uint32_t i = 0; i < big->size(); ++i)
    if (blockpred::parahoric_member(big->elem(i), pat, p, pro_p)) members.push_back(big->elem(i));
  std::string nm = (pro_p ? "pro-p-iwahori" : "iwahori") + pat.str() + " of " + big->name();
  GroupRef host = FiniteGroup::from_elements(nm, p, members);

  auto U = Subgroup::from_predicate(
      host, [&](const GroupElement& g) { return blockpred::upper_unipotent(g, pat, p, 0); }, "U");
  auto M = Subgroup::from_predicate(
      host,
      [&](const GroupElement& g) { return blockpred::block_diagonal(g, pat, p, pro_p ? 1 : 0); },
      "M");
  auto Ubar = Subgroup::from_predicate(
      host, [&](const GroupElement& g) { return blockpred::lower_unipotent(g, pat, p, 1); }, "Ubar");

  IwahoriReport rep = verify_iwahori(host, U, M, Ubar);
  if (!rep.all_ok())
    throw theorem_violation("standard_iwahori: decomposition axioms failed for " + nm +
                            " (normalizer " + std::to_string(rep.normalizer_ok) + ", bijective " +
                            std::to_string(rep.product_bijective) + ", filtration " +
                            std::to_string(rep.filtration_compatible) + ")");
  IwahoriDecomposition dec;
  dec.host = host;
  dec.U = std::move(U);
  dec.M = std::move(M);
  dec.Ubar = std::move(Ubar);
  dec.factor = std::move(rep.witness);
  dec.name = nm;
  return dec;
}

/// Swap U and Ubar: (Ubar, M, U) is again a decomposition of the same host.
inline IwahoriDecomposition opposite(const IwahoriDecomposition& dec) {
  IwahoriReport rep = verify_iwahori(dec.host, dec.Ubar, dec.M, dec.U);
  if (!rep.all_ok()) throw theorem_violation("opposite decomposition failed verification");
  IwahoriDecomposition out;
  out.host = dec.host;
  out.U = dec.Ubar;
  out.M = dec.M;
  out.Ubar = dec.U;
  out.factor = std::move(rep.witness);
  out.name = dec.name + " (opposite)";
  return out;
}

}  // namespace parind
