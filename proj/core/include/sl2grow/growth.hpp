#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sl2grow/element_set.hpp"

namespace sl2grow {

/// A subset known to be a subgroup, together with a small generating set.
/// Construction from an arbitrary set verifies closure (NotASubgroup).
class Subgroup {
 public:
  explicit Subgroup(ElementSet elements);
  /// The subgroup generated by `generators`.
  static Subgroup generated_by(const TablePtr& table, std::span<const GroupElement> generators);

  const ElementSet& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<ElementIndex>& generators() const noexcept { return generators_; }
  bool contains(ElementIndex i) const noexcept { return elements_.contains(i); }
  bool contains(const GroupElement& g) const { return elements_.contains(g); }
  const GroupTable& table() const noexcept { return elements_.table(); }

 private:
  Subgroup(ElementSet elements, std::vector<ElementIndex> generators)
      : elements_(std::move(elements)), generators_(std::move(generators)) {}

  ElementSet elements_;
  std::vector<ElementIndex> generators_;
};

struct GrowthReport {
  std::size_t sizeS = 0;
  std::size_t sizeS2 = 0;
  std::size_t sizeS3 = 0;
  /// log|S^3| / log|S|; 1 by convention when |S| = 1.
  double delta_ratio = 1.0;
  bool generates = false;
  bool symmetric = false;
  bool contains_identity = false;
};

/// {ab : a in A, b in B}
ElementSet product(const ElementSet& a, const ElementSet& b);
ElementSet triple(const ElementSet& s);
GrowthReport analyze(const ElementSet& s);
double delta_ratio(std::size_t cube_size, std::size_t set_size) noexcept;

/// Least subgroup containing s.
ElementSet closure(const ElementSet& s);
/// Least subgroup containing the given indices, by breadth-first search over
/// right multiplication. Stops early (returning a partial set) once the
/// closure is known to exceed `stop_above` elements.
ElementSet closure_of(const TablePtr& table, std::span<const ElementIndex> generators,
                      std::size_t stop_above = static_cast<std::size_t>(-1));
bool generates(const ElementSet& s);
/// <H, x> = G, using the stored generators of H.
bool generates_with(const Subgroup& h, ElementIndex x);

ElementSet left_translate(const GroupElement& x, const ElementSet& s);
ElementSet right_translate(const ElementSet& s, const GroupElement& x);
/// x^-1 S x
ElementSet conjugate(const ElementSet& s, const GroupElement& x);

/// HxH
ElementSet double_coset(const Subgroup& h, const GroupElement& x);
ElementSet double_coset(const ElementSet& h, const GroupElement& x);
/// |HxL| = |H||L| / |x^-1 H x \cap L|
std::size_t frobenius_size(const Subgroup& h, const Subgroup& l, const GroupElement& x);
std::size_t frobenius_size(const ElementSet& h, const ElementSet& l, const GroupElement& x);
/// xH \cap Hx; throws XInH when x is in H.
ElementSet coset_core(const Subgroup& h, const GroupElement& x);
ElementSet coset_core(const ElementSet& h, const GroupElement& x);
/// H \cap x^-1 H x
ElementSet intersect_conjugate(const Subgroup& h, const GroupElement& x);
ElementSet intersect_conjugate(const ElementSet& h, const GroupElement& x);

/// Sizes of the images of S and S^3 in PSL(2,p). Requires S = -S.
std::pair<std::size_t, std::size_t> psl_project(const ElementSet& s);

}  // namespace sl2grow
