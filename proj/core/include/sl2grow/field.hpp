#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "sl2grow/error.hpp"

namespace sl2grow {

/// A residue modulo an odd prime. Carries its modulus so that mixing
/// residues from different fields is caught instead of silently reduced.
class FpElement {
 public:
  constexpr FpElement() = default;

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FpElement operator-() const noexcept;
  FpElement inv() const;
  FpElement pow(std::uint64_t e) const noexcept;

  friend FpElement operator+(FpElement a, FpElement b);
  friend FpElement operator-(FpElement a, FpElement b);
  friend FpElement operator*(FpElement a, FpElement b);
  friend FpElement operator/(FpElement a, FpElement b);

  friend bool operator==(FpElement, FpElement) = default;
  friend auto operator<=>(FpElement, FpElement) = default;

 private:
  friend class Fp;
  constexpr FpElement(std::uint32_t modulus, std::uint32_t value) : value_(value), modulus_(modulus) {}

  std::uint32_t value_ = 0;
  std::uint32_t modulus_ = 0;
};

/// The prime field F_p for an odd prime p < 2^31.
///
/// Construction verifies primality and factors p-1 once, so that order
/// computations and the primitive-root lookup are cheap afterwards.
class Fp {
 public:
  explicit Fp(std::uint32_t p);

  std::uint32_t modulus() const noexcept { return p_; }

  /// Reduces an arbitrary integer into the field.
  FpElement operator()(std::int64_t v) const noexcept;
  FpElement zero() const noexcept { return FpElement(p_, 0); }
  FpElement one() const noexcept { return FpElement(p_, 1); }

  /// Euler's criterion. Throws ZeroInput for 0.
  bool is_qr(FpElement a) const;

  /// Tonelli-Shanks. Returns the smaller of the two roots.
  FpElement sqrt(FpElement a) const;

  /// Multiplicative order of a nonzero element.
  std::uint64_t order(FpElement a) const;

  /// g^((p-1)/n) for the smallest primitive root g; throws NoSuchOrder
  /// unless n divides p-1.
  FpElement element_of_order(std::uint64_t n) const;

  FpElement primitive_root() const noexcept { return FpElement(p_, primitive_root_); }
  const std::vector<std::uint64_t>& prime_factors_of_order() const noexcept { return factors_; }

  friend bool operator==(const Fp& a, const Fp& b) noexcept { return a.p_ == b.p_; }

 private:
  void check(FpElement a) const;

  std::uint32_t p_;
  std::uint32_t primitive_root_ = 0;
  std::vector<std::uint64_t> factors_;
};

bool is_prime(std::uint64_t n) noexcept;

}  // namespace sl2grow
