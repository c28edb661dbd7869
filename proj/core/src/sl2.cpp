#include "sl2grow/sl2.hpp"

#include <cctype>
#include <charconv>

namespace sl2grow {

namespace {

std::uint32_t mulmod(std::uint32_t x, std::uint32_t y, std::uint32_t p) noexcept {
  return static_cast<std::uint32_t>(std::uint64_t{x} * y % p);
}

std::uint32_t addmod(std::uint32_t x, std::uint32_t y, std::uint32_t p) noexcept {
  const std::uint64_t s = std::uint64_t{x} + y;
  return static_cast<std::uint32_t>(s >= p ? s - p : s);
}

std::uint32_t negmod(std::uint32_t x, std::uint32_t p) noexcept { return x == 0 ? 0 : p - x; }

}  // namespace

GroupElement GroupElement::make(FpElement a, FpElement b, FpElement c, FpElement d) {
  if (a.modulus() != b.modulus() || a.modulus() != c.modulus() || a.modulus() != d.modulus()) {
    throw Error(ErrorCode::ModulusMismatch, "matrix entries over different fields");
  }
  const FpElement det = a * d - b * c;
  if (det.value() != 1) {
    throw Error(ErrorCode::NotInSL2, "determinant " + std::to_string(det.value()) + " mod " +
                                         std::to_string(a.modulus()));
  }
  return GroupElement(a.modulus(), {a.value(), b.value(), c.value(), d.value()});
}

GroupElement GroupElement::make(const Fp& f, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return make(f(a), f(b), f(c), f(d));
}

GroupElement GroupElement::identity(const Fp& f) { return GroupElement(f.modulus(), {1, 0, 0, 1}); }

GroupElement GroupElement::minus_identity(const Fp& f) {
  const std::uint32_t m1 = f.modulus() - 1;
  return GroupElement(f.modulus(), {m1, 0, 0, m1});
}

GroupElement GroupElement::diag(FpElement l) { return make(l, l - l, l - l, l.inv()); }

GroupElement GroupElement::antidiag(FpElement v) { return make(v - v, v, -v.inv(), v - v); }

GroupElement GroupElement::upper(FpElement alpha, FpElement beta) {
  return make(alpha, beta, alpha - alpha, alpha.inv());
}

GroupElement GroupElement::inverse() const noexcept {
  return GroupElement(p_, {m_[3], negmod(m_[1], p_), negmod(m_[2], p_), m_[0]});
}

GroupElement GroupElement::negated() const noexcept {
  return GroupElement(p_, {negmod(m_[0], p_), negmod(m_[1], p_), negmod(m_[2], p_), negmod(m_[3], p_)});
}

GroupElement GroupElement::conj(const GroupElement& x) const { return x.inverse() * (*this) * x; }

GroupElement GroupElement::pow(std::uint64_t e) const {
  GroupElement result(p_, {1, 0, 0, 1});
  GroupElement base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

std::uint32_t GroupElement::trace() const noexcept { return addmod(m_[0], m_[3], p_); }

std::uint64_t GroupElement::order() const {
  std::uint64_t n = 1;
  GroupElement g = *this;
  while (!g.is_identity()) {
    g = g * (*this);
    ++n;
  }
  return n;
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  if (g.p_ != h.p_) {
    throw Error(ErrorCode::ModulusMismatch,
                "SL(2," + std::to_string(g.p_) + ") times SL(2," + std::to_string(h.p_) + ")");
  }
  const std::uint32_t p = g.p_;
  const auto& x = g.m_;
  const auto& y = h.m_;
  return GroupElement(p, {addmod(mulmod(x[0], y[0], p), mulmod(x[1], y[2], p), p),
                          addmod(mulmod(x[0], y[1], p), mulmod(x[1], y[3], p), p),
                          addmod(mulmod(x[2], y[0], p), mulmod(x[3], y[2], p), p),
                          addmod(mulmod(x[2], y[1], p), mulmod(x[3], y[3], p), p)});
}

std::string GroupElement::to_string() const {
  return "[[" + std::to_string(m_[0]) + "," + std::to_string(m_[1]) + "],[" + std::to_string(m_[2]) + "," +
         std::to_string(m_[3]) + "]]";
}

GroupElement GroupElement::parse(std::string_view text, const Fp& f) {
  std::string compact;
  for (const char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  }
  const auto fail = [&](const char* why) {
    return Error(ErrorCode::ParseError, std::string(why) + " in matrix '" + std::string(text) + "'");
  };
  std::string_view s = compact;
  const auto expect = [&](char ch) {
    if (s.empty() || s.front() != ch) throw fail("unexpected character");
    s.remove_prefix(1);
  };
  const auto number = [&]() -> std::int64_t {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{}) throw fail("bad integer");
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
    return v;
  };
  expect('[');
  expect('[');
  const auto a = number();
  expect(',');
  const auto b = number();
  expect(']');
  expect(',');
  expect('[');
  const auto c = number();
  expect(',');
  const auto d = number();
  expect(']');
  expect(']');
  if (!s.empty()) throw fail("trailing characters");
  return make(f, a, b, c, d);
}

GroupTable::GroupTable(std::uint32_t p) : field_(p) {}

std::shared_ptr<const GroupTable> GroupTable::create(std::uint32_t p, const TableOptions& opts) {
  const Fp field(p);
  const std::uint64_t order = std::uint64_t{p + 1} * p * (p - 1);
  if (order > opts.max_order) {
    throw Error(ErrorCode::BudgetExceeded, "|SL(2," + std::to_string(p) + ")| = " + std::to_string(order) +
                                               " exceeds the budget of " + std::to_string(opts.max_order));
  }
  std::shared_ptr<GroupTable> t(new GroupTable(p));
  auto& els = t->elements_;
  els.reserve(order);
  for (std::uint32_t b = 1; b < p; ++b) {
    const std::uint32_t c = (-field(b).inv()).value();
    for (std::uint32_t d = 0; d < p; ++d) els.push_back(GroupElement(p, {0, b, c, d}));
  }
  for (std::uint32_t a = 1; a < p; ++a) {
    const std::uint32_t ainv = field(a).inv().value();
    for (std::uint32_t b = 0; b < p; ++b) {
      for (std::uint32_t c = 0; c < p; ++c) {
        const std::uint32_t d = mulmod(addmod(1, mulmod(b, c, p), p), ainv, p);
        els.push_back(GroupElement(p, {a, b, c, d}));
      }
    }
  }

  t->inverse_.resize(order);
  t->negate_.resize(order);
  for (ElementIndex i = 0; i < order; ++i) {
    t->inverse_[i] = t->index_unchecked(els[i].inverse());
    t->negate_[i] = t->index_unchecked(els[i].negated());
  }
  t->identity_ = t->index_unchecked(GroupElement::identity(field));
  t->minus_identity_ = t->index_unchecked(GroupElement::minus_identity(field));

  if (order <= opts.mult_table_max_order) {
    t->mult_.resize(order * order);
    for (ElementIndex i = 0; i < order; ++i) {
      for (ElementIndex j = 0; j < order; ++j) {
        t->mult_[std::size_t{i} * order + j] = t->index_unchecked(els[i] * els[j]);
      }
    }
  }
  return t;
}

ElementIndex GroupTable::index_unchecked(const GroupElement& g) const noexcept {
  const std::uint32_t p = prime();
  const auto& m = g.m_;
  if (m[0] == 0) return (m[1] - 1) * p + m[3];
  return p * (p - 1) + ((m[0] - 1) * p + m[1]) * p + m[2];
}

ElementIndex GroupTable::index_of(const GroupElement& g) const {
  if (g.modulus() != prime()) {
    throw Error(ErrorCode::ModulusMismatch,
                "element of SL(2," + std::to_string(g.modulus()) + ") in SL(2," + std::to_string(prime()) + ")");
  }
  return index_unchecked(g);
}

}  // namespace sl2grow
