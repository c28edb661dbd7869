#include "sl2grow/element_set.hpp"

#include <algorithm>

namespace sl2grow {

ElementSet::ElementSet(TablePtr table) : table_(std::move(table)) {
  bits_.assign((table_->order() + 63) / 64, 0);
}

ElementSet::ElementSet(TablePtr table, std::span<const ElementIndex> indices) : ElementSet(std::move(table)) {
  for (const auto i : indices) insert(i);
}

ElementSet::ElementSet(TablePtr table, std::initializer_list<GroupElement> elements)
    : ElementSet(std::move(table)) {
  for (const auto& g : elements) insert(g);
}

ElementSet ElementSet::full(TablePtr table) {
  ElementSet s(std::move(table));
  for (ElementIndex i = 0; i < s.table().order(); ++i) s.insert(i);
  return s;
}

ElementSet ElementSet::of_elements(TablePtr table, std::span<const GroupElement> elements) {
  ElementSet s(std::move(table));
  for (const auto& g : elements) s.insert(g);
  return s;
}

void ElementSet::insert(ElementIndex i) noexcept {
  auto& w = bits_[i >> 6U];
  const std::uint64_t mask = std::uint64_t{1} << (i & 63U);
  size_ += (w & mask) == 0;
  w |= mask;
}

void ElementSet::erase(ElementIndex i) noexcept {
  auto& w = bits_[i >> 6U];
  const std::uint64_t mask = std::uint64_t{1} << (i & 63U);
  size_ -= (w & mask) != 0;
  w &= ~mask;
}

std::vector<ElementIndex> ElementSet::indices() const {
  std::vector<ElementIndex> out;
  out.reserve(size_);
  for_each([&](ElementIndex i) { out.push_back(i); });
  return out;
}

std::vector<GroupElement> ElementSet::elements() const {
  std::vector<GroupElement> out;
  out.reserve(size_);
  for_each([&](ElementIndex i) { out.push_back(table_->element(i)); });
  return out;
}

ElementSet ElementSet::inverse() const {
  ElementSet out(table_);
  for_each([&](ElementIndex i) { out.insert(table_->inverse(i)); });
  return out;
}

ElementSet ElementSet::negated() const {
  ElementSet out(table_);
  for_each([&](ElementIndex i) { out.insert(table_->negate(i)); });
  return out;
}

bool ElementSet::is_symmetric() const {
  bool ok = true;
  for_each([&](ElementIndex i) { ok = ok && contains(table_->inverse(i)); });
  return ok;
}

void ElementSet::same_table(const ElementSet& other) const {
  if (table_ != other.table_) throw Error(ErrorCode::TableMismatch, "sets over different group tables");
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  same_table(other);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    if ((bits_[w] & ~other.bits_[w]) != 0) return false;
  }
  return true;
}

bool ElementSet::intersects(const ElementSet& other) const {
  same_table(other);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    if ((bits_[w] & other.bits_[w]) != 0) return true;
  }
  return false;
}

namespace {

template <typename Op>
std::size_t combine(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b, Op op) {
  std::size_t n = 0;
  for (std::size_t w = 0; w < a.size(); ++w) {
    a[w] = op(a[w], b[w]);
    n += static_cast<std::size_t>(std::popcount(a[w]));
  }
  return n;
}

}  // namespace

ElementSet& ElementSet::operator|=(const ElementSet& other) {
  same_table(other);
  size_ = combine(bits_, other.bits_, [](std::uint64_t x, std::uint64_t y) { return x | y; });
  return *this;
}

ElementSet& ElementSet::operator&=(const ElementSet& other) {
  same_table(other);
  size_ = combine(bits_, other.bits_, [](std::uint64_t x, std::uint64_t y) { return x & y; });
  return *this;
}

ElementSet& ElementSet::operator-=(const ElementSet& other) {
  same_table(other);
  size_ = combine(bits_, other.bits_, [](std::uint64_t x, std::uint64_t y) { return x & ~y; });
  return *this;
}

bool operator==(const ElementSet& a, const ElementSet& b) {
  a.same_table(b);
  return a.size_ == b.size_ && a.bits_ == b.bits_;
}

}  // namespace sl2grow
