#include "sl2grow/growth.hpp"

#include <cmath>
#include <stdexcept>

namespace sl2grow {

namespace {

// Greedy generating set: keep an element only if it is not already in the
// subgroup generated by the earlier ones. At most log2|G| generators survive.
std::pair<ElementSet, std::vector<ElementIndex>> greedy_closure(const ElementSet& s, std::size_t stop_above) {
  const auto& table = s.table_ptr();
  std::vector<ElementIndex> gens;
  ElementIndex id = table->identity();
  ElementSet current = closure_of(table, std::span<const ElementIndex>(&id, 1));
  bool stopped = false;
  s.for_each([&](ElementIndex i) {
    if (stopped || current.contains(i)) return;
    gens.push_back(i);
    current = closure_of(table, gens, stop_above);
    stopped = current.size() > stop_above;
  });
  return {std::move(current), std::move(gens)};
}

}  // namespace

Subgroup::Subgroup(ElementSet elements) : elements_(std::move(elements)) {
  if (!elements_.contains_identity()) throw Error(ErrorCode::NotASubgroup, "identity missing");
  auto [closed, gens] = greedy_closure(elements_, elements_.size());
  if (!(closed == elements_)) {
    throw Error(ErrorCode::NotASubgroup, "set of size " + std::to_string(elements_.size()) + " is not closed");
  }
  generators_ = std::move(gens);
}

Subgroup Subgroup::generated_by(const TablePtr& table, std::span<const GroupElement> generators) {
  std::vector<ElementIndex> idx;
  for (const auto& g : generators) idx.push_back(table->index_of(g));
  ElementSet all = closure_of(table, idx);
  auto [closed, gens] = greedy_closure(all, all.size());
  return Subgroup(std::move(closed), std::move(gens));
}

ElementSet product(const ElementSet& a, const ElementSet& b) {
  if (a.table_ptr() != b.table_ptr()) throw Error(ErrorCode::TableMismatch, "product of sets over different tables");
  const GroupTable& t = a.table();
  ElementSet out(a.table_ptr());
  if (t.has_mult_table()) {
    a.for_each([&](ElementIndex x) {
      const ElementIndex* row = t.mult_row(x);
      b.for_each([&](ElementIndex y) { out.insert(row[y]); });
    });
  } else {
    const auto rhs = b.indices();
    a.for_each([&](ElementIndex x) {
      for (const auto y : rhs) out.insert(t.mul(x, y));
    });
  }
  return out;
}

ElementSet triple(const ElementSet& s) { return product(product(s, s), s); }

double delta_ratio(std::size_t cube_size, std::size_t set_size) noexcept {
  if (set_size <= 1) return 1.0;
  return std::log(static_cast<double>(cube_size)) / std::log(static_cast<double>(set_size));
}

GrowthReport analyze(const ElementSet& s) {
  GrowthReport r;
  const ElementSet s2 = product(s, s);
  const ElementSet s3 = product(s2, s);
  r.sizeS = s.size();
  r.sizeS2 = s2.size();
  r.sizeS3 = s3.size();
  r.delta_ratio = delta_ratio(r.sizeS3, r.sizeS);
  r.symmetric = s.is_symmetric();
  r.contains_identity = s.contains_identity();
  r.generates = generates(s);
  if (r.symmetric && r.contains_identity && !(s.is_subset_of(s2) && s2.is_subset_of(s3))) {
    throw std::logic_error("containment chain S <= S^2 <= S^3 violated");
  }
  return r;
}

ElementSet closure_of(const TablePtr& table, std::span<const ElementIndex> generators, std::size_t stop_above) {
  ElementSet out(table);
  std::vector<ElementIndex> queue{table->identity()};
  out.insert(table->identity());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const ElementIndex g = queue[head];
    for (const auto t : generators) {
      const ElementIndex h = table->mul(g, t);
      if (!out.contains(h)) {
        out.insert(h);
        queue.push_back(h);
      }
    }
    if (out.size() > stop_above) break;
  }
  return out;
}

ElementSet closure(const ElementSet& s) { return greedy_closure(s, static_cast<std::size_t>(-1)).first; }

bool generates(const ElementSet& s) {
  // A subgroup with more than half the elements is the whole group.
  const std::size_t half = s.table().order() / 2;
  return greedy_closure(s, half).first.size() > half;
}

bool generates_with(const Subgroup& h, ElementIndex x) {
  std::vector<ElementIndex> gens = h.generators();
  gens.push_back(x);
  const std::size_t half = h.table().order() / 2;
  return closure_of(h.elements().table_ptr(), gens, half).size() > half;
}

ElementSet left_translate(const GroupElement& x, const ElementSet& s) {
  const GroupTable& t = s.table();
  const ElementIndex xi = t.index_of(x);
  ElementSet out(s.table_ptr());
  s.for_each([&](ElementIndex i) { out.insert(t.mul(xi, i)); });
  return out;
}

ElementSet right_translate(const ElementSet& s, const GroupElement& x) {
  const GroupTable& t = s.table();
  const ElementIndex xi = t.index_of(x);
  ElementSet out(s.table_ptr());
  s.for_each([&](ElementIndex i) { out.insert(t.mul(i, xi)); });
  return out;
}

ElementSet conjugate(const ElementSet& s, const GroupElement& x) {
  const GroupTable& t = s.table();
  const ElementIndex xi = t.index_of(x);
  const ElementIndex xinv = t.inverse(xi);
  ElementSet out(s.table_ptr());
  s.for_each([&](ElementIndex i) { out.insert(t.mul(t.mul(xinv, i), xi)); });
  return out;
}

ElementSet double_coset(const Subgroup& h, const GroupElement& x) {
  return product(h.elements(), left_translate(x, h.elements()));
}

ElementSet double_coset(const ElementSet& h, const GroupElement& x) { return double_coset(Subgroup(h), x); }

std::size_t frobenius_size(const Subgroup& h, const Subgroup& l, const GroupElement& x) {
  const std::size_t d = (conjugate(h.elements(), x) & l.elements()).size();
  return h.order() * l.order() / d;
}

std::size_t frobenius_size(const ElementSet& h, const ElementSet& l, const GroupElement& x) {
  return frobenius_size(Subgroup(h), Subgroup(l), x);
}

ElementSet coset_core(const Subgroup& h, const GroupElement& x) {
  if (h.contains(x)) throw Error(ErrorCode::XInH, x.to_string());
  return left_translate(x, h.elements()) & right_translate(h.elements(), x);
}

ElementSet coset_core(const ElementSet& h, const GroupElement& x) { return coset_core(Subgroup(h), x); }

ElementSet intersect_conjugate(const Subgroup& h, const GroupElement& x) {
  return h.elements() & conjugate(h.elements(), x);
}

ElementSet intersect_conjugate(const ElementSet& h, const GroupElement& x) {
  return intersect_conjugate(Subgroup(h), x);
}

std::pair<std::size_t, std::size_t> psl_project(const ElementSet& s) {
  if (!(s.negated() == s)) throw Error(ErrorCode::NotCentrallyClosed, "S != -S");
  const GroupTable& t = s.table();
  const auto count_classes = [&](const ElementSet& x) {
    ElementSet reps(x.table_ptr());
    x.for_each([&](ElementIndex i) { reps.insert(std::min(i, t.negate(i))); });
    return reps.size();
  };
  return {count_classes(s), count_classes(triple(s))};
}

}  // namespace sl2grow
