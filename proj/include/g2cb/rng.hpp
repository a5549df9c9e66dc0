#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "g2cb/field.hpp"

namespace g2cb {

// Deterministic splitmix64 stream. Sub-tasks derive independent streams by
// hashing (seed, label), so results do not depend on scheduling or on the
// platform's std::random machinery.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t hash_label(std::uint64_t seed, std::string_view label) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
    for (unsigned char c : label) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return mix(seed ^ h);
  }

  static SeededRng derive(std::uint64_t seed, std::string_view label) {
    return SeededRng(hash_label(seed, label));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Unbiased uniform draw in [0, n).
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  bool coin() { return next() & 1; }

  // Over a prime field: uniform residue. Over Q: a small integer in [0, 8192)
  // (exactness never depends on the sample range).
  Scalar field_element(const FieldContext& ctx) {
    if (ctx.kind() == FieldKind::Prime)
      return Scalar::make(ctx, mpz_class(static_cast<unsigned long>(below(ctx.modulus()))));
    return Scalar::make(ctx, static_cast<long>(below(8192)));
  }

  Scalar nonzero_field_element(const FieldContext& ctx) {
    for (;;) {
      Scalar s = field_element(ctx);
      if (!s.is_zero()) return s;
    }
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace g2cb
