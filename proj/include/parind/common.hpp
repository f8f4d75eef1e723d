#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace parind {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Mixing scalars from different coefficient fields.
class field_mismatch : public error {
 public:
  explicit field_mismatch(const std::string& what) : error(what) {}
};

/// A machine-checked identity that the theory guarantees failed to hold.
/// Reaching this means either corrupted input or a genuine counterexample;
/// it is never swallowed.
class theorem_violation : public error {
 public:
  explicit theorem_violation(const std::string& what) : error(what) {}
};

/// Deterministic RNG used by all randomized routines.  Seeds are always
/// explicit so identical invocations reproduce bit-identical results.
using Rng = std::mt19937_64;

/// FNV-1a, used for stable witness digests in reports.
inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace parind
