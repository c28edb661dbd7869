#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "sl2grow/constructions.hpp"

using namespace sl2grow;
using Tag = SubgroupKind::Tag;

namespace {

template <typename Fn>
ErrorCode code_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::DomainError;
}

std::size_t formula_order(const SubgroupKind& k, std::size_t p) {
  switch (k.tag) {
    case Tag::UpperTriangular: return p * (p - 1);
    case Tag::Unipotent: return p;
    case Tag::Diagonal: return p - 1;
    case Tag::QrIndex2: return p * (p - 1) / 2;
    case Tag::Cyclic: return k.n;
    case Tag::GenQuaternion: return 4 * k.n;
    case Tag::TwoDotS4: return 48;
    case Tag::TwoDotA4: return 24;
    case Tag::TwoDotA5: return 120;
  }
  return 0;
}

}  // namespace

TEST_CASE("catalog subgroups have the right orders") {
  for (const std::uint32_t p : {13U, 17U}) {
    const auto t = GroupTable::create(p);
    const auto kinds = realizable_kinds(p);
    CHECK(kinds.size() >= 5);
    for (const auto& kind : kinds) {
      const SubgroupSpec spec = build_subgroup(kind, t);
      const std::size_t order = spec.group.order();
      CHECK_MESSAGE(order == formula_order(kind, p), kind.to_string());
      CHECK(order == kind.expected_order(p));
      CHECK(closure(spec.group.elements()) == spec.group.elements());
      CHECK(spec.group.contains(t->minus_identity()) == (order % 2 == 0));
      CHECK(SubgroupKind::parse(kind.to_string()) == kind);
    }
  }
}

TEST_CASE("realizable kinds depend on the prime") {
  const auto has = [](std::uint32_t p, Tag tag) {
    for (const auto& k : realizable_kinds(p)) {
      if (k.tag == tag) return true;
    }
    return false;
  };
  CHECK(has(17, Tag::TwoDotS4));
  CHECK_FALSE(has(13, Tag::TwoDotS4));
  CHECK(has(11, Tag::TwoDotA5));
  CHECK_FALSE(has(13, Tag::TwoDotA5));
  const auto t = GroupTable::create(13);
  CHECK(code_of([&] { (void)build_subgroup({Tag::TwoDotS4, 0}, t); }) == ErrorCode::NotRealizable);
  CHECK(code_of([&] { (void)build_subgroup({Tag::Cyclic, 5}, t); }) == ErrorCode::NotRealizable);
  CHECK(code_of([&] { (void)SubgroupKind::parse("dodecahedral"); }) == ErrorCode::ParseError);
}

TEST_CASE("exceptional subgroups have the expected element orders") {
  const auto census = [](const Subgroup& h) {
    std::set<std::uint64_t> orders;
    for (const auto& g : h.elements().elements()) orders.insert(g.order());
    return orders;
  };
  const auto t17 = GroupTable::create(17);
  CHECK(census(build_subgroup({Tag::TwoDotS4, 0}, t17).group) == std::set<std::uint64_t>{1, 2, 3, 4, 6, 8});
  CHECK(census(build_subgroup({Tag::TwoDotA4, 0}, t17).group) == std::set<std::uint64_t>{1, 2, 3, 4, 6});
  const auto t11 = GroupTable::create(11);
  CHECK(census(build_subgroup({Tag::TwoDotA5, 0}, t11).group) == std::set<std::uint64_t>{1, 2, 3, 4, 5, 6, 10});
  const auto q = build_subgroup({Tag::GenQuaternion, 4}, t17).group;
  CHECK(census(q) == std::set<std::uint64_t>{1, 2, 4, 8});
}

TEST_CASE("optimal set is independent of root choices and of the power of v") {
  const auto t = GroupTable::create(17);
  for (const bool ni : {false, true}) {
    for (const bool n2 : {false, true}) {
      BuildOptions opts;
      opts.negate_i = ni;
      opts.negate_sqrt2 = n2;
      const auto oc = optimal_construction(t, 1, opts);
      CHECK(oc.set.size() == 64);
      CHECK(triple(oc.set).size() == 224);
    }
  }
  for (unsigned power = 1; power < 16; power += 2) {
    const auto oc = optimal_construction(t, power);
    CHECK(oc.set.size() == 64);
    CHECK(triple(oc.set).size() == 224);
    CHECK(generates(oc.set));
  }
  CHECK(code_of([&] { (void)optimal_set(GroupTable::create(13)); }) == ErrorCode::NotRealizable);
}

TEST_CASE("subgroup plus two") {
  const auto t = GroupTable::create(17);
  const auto oc = optimal_construction(t);
  CHECK(splus2(oc.h.group, oc.x).size() == 50);
  const Fp& f = t->field();
  const auto t5 = GroupTable::create(5);
  const Subgroup c4 = build_subgroup({Tag::Cyclic, 4}, t5).group;
  CHECK(splus2(c4, GroupElement::upper(t5->field()(1), t5->field()(1))).size() == 6);
  const Subgroup n = build_subgroup({Tag::Unipotent, 0}, t).group;
  CHECK(code_of([&] { (void)splus2(n, GroupElement::minus_identity(f)); }) == ErrorCode::OrderTwo);
  CHECK(code_of([&] { (void)splus2(n, GroupElement::upper(f(1), f(2))); }) == ErrorCode::XInH);
}

TEST_CASE("coset core sets") {
  const auto t = GroupTable::create(17);
  const auto oc = optimal_construction(t);
  CHECK(coset_core_set(oc.h.group, oc.x) == oc.set);

  // x normalizing H gives H u xH.
  const Subgroup d = build_subgroup({Tag::Diagonal, 0}, t).group;
  const GroupElement w = GroupElement::antidiag(t->field()(1));
  CHECK(coset_core_set(d, w).size() == 2 * d.order());

  const Subgroup u = build_subgroup({Tag::UpperTriangular, 0}, t).group;
  CHECK(code_of([&] { (void)coset_core_set(u, GroupElement::upper(t->field()(3), t->field()(1))); }) ==
        ErrorCode::XInH);
  const GroupElement y = GroupElement::make(t->field(), 1, 1, 1, 2);
  REQUIRE_FALSE(u.contains(y * y));
  CHECK(code_of([&] { (void)coset_core_set(u, y); }) == ErrorCode::XSquaredNotInH);
}

TEST_CASE("coset core size is |H|(1 + 1/c)") {
  const auto t = GroupTable::create(13);
  const auto ec = evdlt_construction(t);
  const Subgroup& h = ec.h.group;
  const std::size_t c = conjugate_index(h, ec.x);
  // Oracle: |xH n Hx| counted on matrices.
  const auto hm = oracle::to_mats(h.elements());
  const auto xh = oracle::product({oracle::to_mat(ec.x)}, hm, 13);
  const auto hx = oracle::product(hm, {oracle::to_mat(ec.x)}, 13);
  std::size_t both = 0;
  for (const auto& m : xh) both += hx.count(m);
  const ElementSet s = coset_core_set(h, ec.x);
  CHECK(s.size() == h.order() + both);
  CHECK(s.size() * c == h.order() * (c + 1));
  CHECK(s.size() == 84);
}

TEST_CASE("eventual-delta sets") {
  for (const std::uint32_t p : {5U, 13U, 17U}) {
    const auto t = GroupTable::create(p);
    const auto ec = evdlt_construction(t);
    CHECK(ec.set.size() == (p * (p - 1) + 4) / 2);
    CHECK(ec.h.group.order() == p * (p - 1) / 2);
    CHECK((ec.x * ec.x) == GroupElement::minus_identity(t->field()));
    CHECK(ec.x.c() != 0);
    CHECK(ec.set.is_symmetric());
  }
  // Exact cube size at p = 13 by matrix enumeration.
  const auto t = GroupTable::create(13);
  const auto s = oracle::to_mats(evdlt_set(t));
  const auto cube = oracle::product(oracle::product(s, s, 13), s, 13);
  CHECK(cube.size() == 1128);
  CHECK(triple(evdlt_set(t)).size() == cube.size());
  CHECK(code_of([&] { (void)evdlt_set(GroupTable::create(7)); }) == ErrorCode::NotRealizable);
}

TEST_CASE("find_good_x") {
  const auto t17 = GroupTable::create(17);
  const auto s4 = build_subgroup({Tag::TwoDotS4, 0}, t17);
  const auto good = find_good_x(s4.group);
  REQUIRE_FALSE(good.empty());
  for (const auto& g : good) {
    CHECK(g.c == 3);
    CHECK_FALSE(s4.group.contains(g.x));
    CHECK(s4.group.contains(g.x * g.x));
    CHECK(generates_with(s4.group, g.index));
  }
  CHECK(std::is_sorted(good.begin(), good.end(), [](const auto& a, const auto& b) { return a.index < b.index; }));

  // Oracle: scan every candidate and take the minimum index directly.
  std::size_t best = static_cast<std::size_t>(-1);
  std::size_t count = 0;
  for (ElementIndex i = 0; i < t17->order(); ++i) {
    const auto& x = t17->element(i);
    if (s4.group.contains(i) || !s4.group.contains(x * x) || !generates_with(s4.group, i)) continue;
    const std::size_t c = s4.group.order() / (s4.group.elements() & conjugate(s4.group.elements(), x)).size();
    if (c < best) {
      best = c;
      count = 0;
    }
    if (c == best) ++count;
  }
  CHECK(best == 3);
  CHECK(good.size() == count);

  const auto t13 = GroupTable::create(13);
  const auto u = build_subgroup({Tag::UpperTriangular, 0}, t13);
  for (const auto& g : find_good_x(u.group)) CHECK(g.c == 13);

  // In SL(2,5) an order-4 x with x^2 in <diag[2,3]> would make H and x two
  // involutions mod +-I, which only generate a dihedral group.
  const auto t5 = GroupTable::create(5);
  const Subgroup c4 = build_subgroup({Tag::Cyclic, 4}, t5).group;
  std::size_t candidates = 0;
  for (ElementIndex i = 0; i < t5->order(); ++i) {
    const auto& x = t5->element(i);
    if (!c4.contains(i) && c4.contains(x * x) && generates_with(c4, i)) ++candidates;
  }
  CHECK(candidates == 0);
  CHECK(code_of([&] { (void)find_good_x(c4); }) == ErrorCode::NoneFound);

  CHECK(code_of([&] { (void)find_good_x(build_subgroup({Tag::Unipotent, 0}, t13).group); }) ==
        ErrorCode::NoneFound);
}

TEST_CASE("no generating pair has index one") {
  for (const std::uint32_t p : {13U, 17U}) {
    const auto t = GroupTable::create(p);
    for (const auto& kind : realizable_kinds(p)) {
      try {
        for (const auto& g : find_good_x(build_subgroup(kind, t).group)) CHECK(g.c >= 2);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoneFound);
      }
    }
  }
}

TEST_CASE("normalizing the coset representative") {
  const auto t = GroupTable::create(17);
  const auto oc = optimal_construction(t);
  const Subgroup& h = oc.h.group;
  const auto y = normalize_rep(h, oc.x);
  REQUIRE(y.has_value());
  CHECK(h.contains(*y * *y));
  CHECK(right_translate(h.elements(), oc.x).contains(*y));

  // An x with x^2 outside H but HxH = Hx^-1H still normalizes.
  std::size_t normalized = 0;
  std::size_t disjoint = 0;
  for (ElementIndex i = 0; i < t->order() && (normalized < 5 || disjoint < 5); i += 7) {
    const auto& x = t->element(i);
    if (h.contains(i) || h.contains(x * x) || !generates_with(h, i)) continue;
    const bool same = double_coset(h, x) == double_coset(h, x.inverse());
    const auto r = normalize_rep(h, x);
    CHECK(r.has_value() == same);
    if (!r) {
      ++disjoint;
      continue;
    }
    ++normalized;
    CHECK(h.contains(*r * *r));
    ElementSet s = h.elements();
    s.insert(x);
    s.insert(x.inverse());
    ElementSet tt = h.elements();
    tt.insert(*r);
    tt.insert(r->inverse());
    CHECK(tt.size() == s.size());
    CHECK(triple(tt).is_subset_of(triple(s)));
  }
  CHECK(normalized > 0);
}

TEST_CASE("index bounds") {
  const auto b = bound_estimate(48, 3, BoundCase::CosetCore);
  CHECK(b.lower3 == doctest::Approx(192));
  REQUIRE(b.upper3.has_value());
  CHECK(*b.upper3 == doctest::Approx(224));
  CHECK(b.sizeS == doctest::Approx(64));
  CHECK(b.brackets(224));
  CHECK_FALSE(b.brackets(225));
  CHECK_FALSE(b.brackets(191));

  const auto a4 = bound_estimate(24, 3, BoundCase::CosetCore);
  CHECK(a4.lower3 == doctest::Approx(96));
  CHECK(a4.sizeS == doctest::Approx(32));
  const auto a5 = bound_estimate(120, 5, BoundCase::CosetCore);
  CHECK(a5.lower3 == doctest::Approx(720));
  CHECK(a5.sizeS == doctest::Approx(144));

  const auto d = bound_estimate(48, 3, BoundCase::DisjointCosets);
  CHECK(d.lower3 == doctest::Approx(7 * 48));
  CHECK_FALSE(d.upper3.has_value());
  CHECK(d.sizeS == doctest::Approx(50));
  CHECK(d.brackets(1000));

  CHECK(code_of([] { (void)bound_estimate(48, 1, BoundCase::CosetCore); }) == ErrorCode::BadIndex);
}

TEST_CASE("monotone bound functions") {
  CHECK(monotone_bounds(8, 3).first == doctest::Approx(1 + std::log2(3.0) / 5).epsilon(1e-12));
  CHECK(monotone_bounds(8, 3).first == doctest::Approx(std::log(96.0) / std::log(32.0)).epsilon(1e-12));
  CHECK(monotone_bounds(2, 3).first == doctest::Approx(1 + std::log2(3.0) / 3).epsilon(1e-12));
  CHECK(monotone_bounds(2, 1.5).second == doctest::Approx(std::log(12.0) / std::log(5.0)).epsilon(1e-12));
  CHECK(monotone_bounds(2, 1.5).second == doctest::Approx(1 + std::log(12.0 / 5) / std::log(5.0)).epsilon(1e-12));
  for (const double l : {2.0, 4.0, 8.0}) {
    double f_prev = 0;
    double g_prev = 0;
    for (double k = 1; k <= 50; k += 0.5) {
      const auto [f, g] = monotone_bounds(l, k);
      CHECK(f > f_prev);
      CHECK(g > g_prev);
      f_prev = f;
      g_prev = g;
    }
  }
  CHECK(code_of([] { (void)monotone_bounds(1, 3); }) == ErrorCode::DomainError);
  CHECK(code_of([] { (void)monotone_bounds(2, 0.5); }) == ErrorCode::DomainError);
}

TEST_CASE("optimal set is maximal for its cube") {
  const auto t = GroupTable::create(17);
  const auto oc = optimal_construction(t);
  const ElementSet cube = triple(oc.set);
  for (ElementIndex i = 0; i < t->order(); ++i) {
    if (oc.set.contains(i) || t->inverse(i) < i) continue;
    ElementSet s = oc.set;
    s.insert(i);
    s.insert(t->inverse(i));
    const ElementSet bigger = triple(s);
    CHECK(cube.is_subset_of(bigger));
    CHECK(bigger.size() > cube.size());
  }
}

TEST_CASE("double cosets of 2.S4 and its Sylow subgroups") {
  const auto t = GroupTable::create(17);
  const auto oc = optimal_construction(t);
  const Subgroup& h = oc.h.group;
  for (ElementIndex i = 0; i < t->order(); ++i) {
    if (h.contains(i) || !generates_with(h, i)) continue;
    CHECK(double_coset(h, t->element(i)).size() >= 144);
  }
  const ElementSet l = intersect_conjugate(h, oc.x);
  REQUIRE(l.size() == 16);
  std::vector<ElementSet> sylows;
  h.elements().for_each([&](ElementIndex g) {
    const ElementSet c = conjugate(l, t->element(g));
    if (std::find(sylows.begin(), sylows.end(), c) == sylows.end()) sylows.push_back(c);
  });
  CHECK(sylows.size() == 3);
  for (std::size_t a = 0; a < sylows.size(); ++a) {
    for (std::size_t b = a + 1; b < sylows.size(); ++b) CHECK((sylows[a] & sylows[b]).size() >= 8);
  }
}
