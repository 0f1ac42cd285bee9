#ifndef HYP2_FIELD_HPP
#define HYP2_FIELD_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <string>

#include "hyp2/error.hpp"

namespace hyp2 {

/// Element of GF(2^n) in the polynomial basis: bit k is the coefficient of
/// t^k. Addition needs no context, everything else goes through FieldCtx.
struct Fe {
  std::uint32_t bits = 0;

  constexpr Fe() = default;
  constexpr explicit Fe(std::uint32_t b) : bits(b) {}

  [[nodiscard]] constexpr bool is_zero() const { return bits == 0; }

  friend constexpr bool operator==(Fe, Fe) = default;
  friend constexpr auto operator<=>(Fe, Fe) = default;

  friend constexpr Fe operator+(Fe a, Fe b) { return Fe(a.bits ^ b.bits); }
  friend constexpr Fe operator-(Fe a, Fe b) { return Fe(a.bits ^ b.bits); }
  constexpr Fe& operator+=(Fe o) {
    bits ^= o.bits;
    return *this;
  }
  constexpr Fe& operator-=(Fe o) { return *this += o; }
};

inline constexpr Fe kZero{0};
inline constexpr Fe kOne{1};

namespace gf2 {

// Polynomials over GF(2) packed in an integer, bit k <-> t^k.

constexpr int degree(std::uint64_t p) {
  return p == 0 ? -1 : 63 - std::countl_zero(p);
}

constexpr std::uint64_t mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree(m);
  for (int d = degree(a); d >= dm; d = degree(a)) a ^= m << (d - dm);
  return a;
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree 1..deg/2. Fine for deg <= 16.
constexpr bool is_irreducible(std::uint64_t p) {
  const int d = degree(p);
  if (d < 1) return false;
  for (int k = 1; 2 * k <= d; ++k) {
    for (std::uint64_t q = std::uint64_t{1} << k; q < (std::uint64_t{2} << k); ++q) {
      if (mod(p, q) == 0) return false;
    }
  }
  return true;
}

/// Smallest (as an integer) irreducible polynomial of degree n.
constexpr std::uint32_t default_modulus(unsigned n) {
  for (std::uint64_t p = std::uint64_t{1} << n; p < (std::uint64_t{2} << n); ++p) {
    if (is_irreducible(p)) return static_cast<std::uint32_t>(p);
  }
  return 0;
}

}  // namespace gf2

/// GF(2^n) for 1 <= n <= 16 with a fixed irreducible modulus. A small
/// immutable value; copies are cheap and compare equal iff (n, modulus) match.
class FieldCtx {
 public:
  static constexpr unsigned kMaxDegree = 16;

  explicit FieldCtx(unsigned n = 1) : FieldCtx(n, checked_default(n)) {}

  FieldCtx(unsigned n, std::uint32_t modulus) : n_(n), modulus_(modulus) {
    if (n < 1 || n > kMaxDegree)
      throw InvalidField("extension degree " + std::to_string(n) + " outside 1..16");
    if (gf2::degree(modulus) != static_cast<int>(n))
      throw InvalidField("modulus " + std::to_string(modulus) + " does not have degree " +
                         std::to_string(n));
    if (!gf2::is_irreducible(modulus))
      throw InvalidField("modulus " + std::to_string(modulus) + " is reducible over GF(2)");
  }

  [[nodiscard]] unsigned degree() const { return n_; }
  [[nodiscard]] std::uint32_t modulus() const { return modulus_; }
  [[nodiscard]] std::uint32_t order() const { return std::uint32_t{1} << n_; }

  [[nodiscard]] bool contains(Fe a) const { return a.bits < order(); }

  /// Element from its bitmask, rejecting values outside the field.
  [[nodiscard]] Fe elem(std::uint64_t bits) const {
    if (bits >= order())
      throw InvalidField("value " + std::to_string(bits) + " is not an element of GF(2^" +
                         std::to_string(n_) + ")");
    return Fe(static_cast<std::uint32_t>(bits));
  }

  [[nodiscard]] Fe mul(Fe a, Fe b) const {
    std::uint64_t prod = 0;
    std::uint64_t x = a.bits;
    for (std::uint32_t y = b.bits; y != 0; y >>= 1, x <<= 1) {
      if (y & 1U) prod ^= x;
    }
    for (int d = gf2::degree(prod); d >= static_cast<int>(n_); d = gf2::degree(prod)) {
      prod ^= std::uint64_t{modulus_} << (d - static_cast<int>(n_));
    }
    return Fe(static_cast<std::uint32_t>(prod));
  }

  [[nodiscard]] Fe square(Fe a) const { return mul(a, a); }

  [[nodiscard]] Fe pow(Fe a, std::uint64_t e) const {
    Fe acc = kOne;
    for (; e != 0; e >>= 1, a = square(a)) {
      if (e & 1U) acc = mul(acc, a);
    }
    return acc;
  }

  [[nodiscard]] Fe inv(Fe a) const {
    if (a.is_zero()) throw DivisionByZero("inverse of 0 in GF(2^" + std::to_string(n_) + ")");
    return pow(a, order() - 2);
  }

  [[nodiscard]] Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

  /// Inverse of Frobenius: a^(2^(n-1)).
  [[nodiscard]] Fe sqrt(Fe a) const {
    for (unsigned i = 1; i < n_; ++i) a = square(a);
    return a;
  }

  friend bool operator==(const FieldCtx&, const FieldCtx&) = default;

 private:
  static std::uint32_t checked_default(unsigned n) {
    if (n < 1 || n > kMaxDegree)
      throw InvalidField("extension degree " + std::to_string(n) + " outside 1..16");
    return gf2::default_modulus(n);
  }

  unsigned n_;
  std::uint32_t modulus_;
};

}  // namespace hyp2

#endif  // HYP2_FIELD_HPP
