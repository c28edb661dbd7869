#include "sl2grow/field.hpp"

#include <string>
#include <utility>

namespace sl2grow {

namespace {

void same_modulus(FpElement a, FpElement b) {
  if (a.modulus() != b.modulus()) {
    throw Error(ErrorCode::ModulusMismatch,
                "residues mod " + std::to_string(a.modulus()) + " and mod " + std::to_string(b.modulus()));
  }
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) noexcept {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1U) r = r * base % m;
    base = base * base % m;
    e >>= 1U;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FpElement FpElement::operator-() const noexcept {
  FpElement r = *this;
  r.value_ = value_ == 0 ? 0 : modulus_ - value_;
  return r;
}

FpElement FpElement::pow(std::uint64_t e) const noexcept {
  FpElement r = *this;
  r.value_ = static_cast<std::uint32_t>(powmod(value_, e, modulus_));
  return r;
}

FpElement FpElement::inv() const {
  if (value_ == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 mod " + std::to_string(modulus_));
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = modulus_, new_r = value_;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += modulus_;
  FpElement out = *this;
  out.value_ = static_cast<std::uint32_t>(t);
  return out;
}

FpElement operator+(FpElement a, FpElement b) {
  same_modulus(a, b);
  const std::uint64_t s = std::uint64_t{a.value_} + b.value_;
  a.value_ = static_cast<std::uint32_t>(s >= a.modulus_ ? s - a.modulus_ : s);
  return a;
}

FpElement operator-(FpElement a, FpElement b) { return a + (-b); }

FpElement operator*(FpElement a, FpElement b) {
  same_modulus(a, b);
  a.value_ = static_cast<std::uint32_t>(std::uint64_t{a.value_} * b.value_ % a.modulus_);
  return a;
}

FpElement operator/(FpElement a, FpElement b) {
  same_modulus(a, b);
  return a * b.inv();
}

Fp::Fp(std::uint32_t p) : p_(p) {
  if (p < 3 || p > 0x7fffffffU || !is_prime(p)) {
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime below 2^31");
  }
  std::uint64_t m = p - 1;
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      factors_.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) factors_.push_back(m);

  for (std::uint32_t g = 2; g < p; ++g) {
    bool primitive = true;
    for (const auto q : factors_) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      primitive_root_ = g;
      break;
    }
  }
}

void Fp::check(FpElement a) const {
  if (a.modulus() != p_) {
    throw Error(ErrorCode::ModulusMismatch,
                "residue mod " + std::to_string(a.modulus()) + " used in F_" + std::to_string(p_));
  }
}

FpElement Fp::operator()(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return FpElement(p_, static_cast<std::uint32_t>(r));
}

bool Fp::is_qr(FpElement a) const {
  check(a);
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "quadratic character of 0");
  return a.pow((p_ - 1) / 2).value() == 1;
}

FpElement Fp::sqrt(FpElement a) const {
  check(a);
  if (a.is_zero()) return a;
  if (!is_qr(a)) throw Error(ErrorCode::NonResidue, std::to_string(a.value()) + " mod " + std::to_string(p_));

  // p - 1 = q * 2^s with q odd
  std::uint64_t q = p_ - 1;
  unsigned s = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++s;
  }
  FpElement z = (*this)(2);
  while (is_qr(z)) z = z + one();

  FpElement c = z.pow(q);
  FpElement r = a.pow((q + 1) / 2);
  FpElement t = a.pow(q);
  unsigned m = s;
  while (t != one()) {
    unsigned i = 0;
    FpElement t2 = t;
    while (t2 != one()) {
      t2 = t2 * t2;
      ++i;
    }
    const FpElement b = c.pow(std::uint64_t{1} << (m - i - 1));
    r = r * b;
    c = b * b;
    t = t * c;
    m = i;
  }
  const FpElement other = -r;
  return other.value() < r.value() ? other : r;
}

std::uint64_t Fp::order(FpElement a) const {
  check(a);
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "order of 0");
  std::uint64_t n = p_ - 1;
  for (const auto q : factors_) {
    while (n % q == 0 && a.pow(n / q) == one()) n /= q;
  }
  return n;
}

FpElement Fp::element_of_order(std::uint64_t n) const {
  if (n == 0 || (p_ - 1) % n != 0) {
    throw Error(ErrorCode::NoSuchOrder, std::to_string(n) + " does not divide " + std::to_string(p_ - 1));
  }
  const FpElement r = primitive_root().pow((p_ - 1) / n);
  if (order(r) != n) throw Error(ErrorCode::NoSuchOrder, "internal order check failed");
  return r;
}

}  // namespace sl2grow
