#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sl2grow/field.hpp"

namespace sl2grow {

/// Dense position of an element inside a GroupTable.
using ElementIndex = std::uint32_t;

/// A 2x2 matrix of determinant 1 over F_p, stored row-major.
class GroupElement {
 public:
  /// Throws NotInSL2 unless ad - bc = 1.
  static GroupElement make(FpElement a, FpElement b, FpElement c, FpElement d);
  static GroupElement make(const Fp& f, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
  static GroupElement identity(const Fp& f);
  static GroupElement minus_identity(const Fp& f);

  /// diag[l, l^-1]
  static GroupElement diag(FpElement l);
  /// antidiag[v, -v^-1], the matrix with v in row 1
  static GroupElement antidiag(FpElement v);
  /// u(alpha, beta) = [alpha beta; 0 alpha^-1]
  static GroupElement upper(FpElement alpha, FpElement beta);

  std::uint32_t modulus() const noexcept { return p_; }
  std::uint32_t a() const noexcept { return m_[0]; }
  std::uint32_t b() const noexcept { return m_[1]; }
  std::uint32_t c() const noexcept { return m_[2]; }
  std::uint32_t d() const noexcept { return m_[3]; }
  const std::array<std::uint32_t, 4>& entries() const noexcept { return m_; }

  GroupElement inverse() const noexcept;
  GroupElement negated() const noexcept;
  /// x^-1 * this * x
  GroupElement conj(const GroupElement& x) const;
  GroupElement pow(std::uint64_t e) const;
  std::uint32_t trace() const noexcept;
  /// Least n >= 1 with g^n = I, by direct iteration.
  std::uint64_t order() const;
  bool is_identity() const noexcept { return m_ == std::array<std::uint32_t, 4>{1, 0, 0, 1}; }

  friend GroupElement operator*(const GroupElement& g, const GroupElement& h);
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

  /// Canonical text form `[[a,b],[c,d]]`, no spaces.
  std::string to_string() const;
  /// Whitespace-insensitive parse of `[[a,b],[c,d]]`; entries may be negative
  /// and are reduced mod p.
  static GroupElement parse(std::string_view text, const Fp& f);

 private:
  GroupElement(std::uint32_t p, std::array<std::uint32_t, 4> m) : p_(p), m_(m) {}
  friend class GroupTable;

  std::uint32_t p_ = 0;
  std::array<std::uint32_t, 4> m_{};
};

struct TableOptions {
  /// Refuse to enumerate groups with more elements than this.
  std::size_t max_order = std::size_t{1} << 24;
  /// Build the |G|^2 multiplication table when |G| is at most this.
  std::size_t mult_table_max_order = 120;
};

/// SL(2,p) fully enumerated.
///
/// Index layout: first the p(p-1) matrices with a = 0, ordered by (b, d)
/// with c = -1/b forced; then the p^2(p-1) matrices with a != 0, ordered by
/// (a, b, c) with d = (1+bc)/a forced. index_of is closed-form.
class GroupTable {
 public:
  static std::shared_ptr<const GroupTable> create(std::uint32_t p, const TableOptions& opts = {});

  const Fp& field() const noexcept { return field_; }
  std::uint32_t prime() const noexcept { return field_.modulus(); }
  std::size_t order() const noexcept { return elements_.size(); }

  const GroupElement& element(ElementIndex i) const noexcept { return elements_[i]; }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  /// Throws ModulusMismatch for an element over another field.
  ElementIndex index_of(const GroupElement& g) const;

  ElementIndex identity() const noexcept { return identity_; }
  ElementIndex minus_identity() const noexcept { return minus_identity_; }
  ElementIndex inverse(ElementIndex i) const noexcept { return inverse_[i]; }
  ElementIndex negate(ElementIndex i) const noexcept { return negate_[i]; }

  ElementIndex mul(ElementIndex i, ElementIndex j) const noexcept {
    if (!mult_.empty()) return mult_[std::size_t{i} * elements_.size() + j];
    return index_unchecked(elements_[i] * elements_[j]);
  }
  bool has_mult_table() const noexcept { return !mult_.empty(); }
  /// Row i of the multiplication table (only when has_mult_table()).
  const ElementIndex* mult_row(ElementIndex i) const noexcept {
    return mult_.data() + std::size_t{i} * elements_.size();
  }

 private:
  explicit GroupTable(std::uint32_t p);
  ElementIndex index_unchecked(const GroupElement& g) const noexcept;

  Fp field_;
  std::vector<GroupElement> elements_;
  std::vector<ElementIndex> inverse_;
  std::vector<ElementIndex> negate_;
  std::vector<ElementIndex> mult_;
  ElementIndex identity_ = 0;
  ElementIndex minus_identity_ = 0;
};

using TablePtr = std::shared_ptr<const GroupTable>;

}  // namespace sl2grow
