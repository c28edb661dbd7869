#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "sl2grow/sl2.hpp"

namespace sl2grow {

/// A subset of SL(2,p) as a dense bit-vector over element indices.
class ElementSet {
 public:
  explicit ElementSet(TablePtr table);
  ElementSet(TablePtr table, std::span<const ElementIndex> indices);
  ElementSet(TablePtr table, std::initializer_list<GroupElement> elements);

  static ElementSet full(TablePtr table);
  static ElementSet of_elements(TablePtr table, std::span<const GroupElement> elements);

  const TablePtr& table_ptr() const noexcept { return table_; }
  const GroupTable& table() const noexcept { return *table_; }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  bool contains(ElementIndex i) const noexcept { return (bits_[i >> 6U] >> (i & 63U)) & 1U; }
  bool contains(const GroupElement& g) const { return contains(table_->index_of(g)); }

  void insert(ElementIndex i) noexcept;
  void insert(const GroupElement& g) { insert(table_->index_of(g)); }
  void erase(ElementIndex i) noexcept;
  void erase(const GroupElement& g) { erase(table_->index_of(g)); }

  /// Calls f(index) for every member in increasing index order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word != 0) {
        const auto bit = static_cast<unsigned>(std::countr_zero(word));
        f(static_cast<ElementIndex>(w * 64 + bit));
        word &= word - 1;
      }
    }
  }
  std::vector<ElementIndex> indices() const;
  std::vector<GroupElement> elements() const;

  ElementSet inverse() const;
  ElementSet negated() const;
  bool is_symmetric() const;
  bool contains_identity() const noexcept { return contains(table_->identity()); }
  bool is_subset_of(const ElementSet& other) const;
  bool intersects(const ElementSet& other) const;

  ElementSet& operator|=(const ElementSet& other);
  ElementSet& operator&=(const ElementSet& other);
  ElementSet& operator-=(const ElementSet& other);
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }
  friend bool operator==(const ElementSet& a, const ElementSet& b);

  const std::vector<std::uint64_t>& words() const noexcept { return bits_; }

 private:
  void same_table(const ElementSet& other) const;

  TablePtr table_;
  std::vector<std::uint64_t> bits_;
  std::size_t size_ = 0;
};

}  // namespace sl2grow
