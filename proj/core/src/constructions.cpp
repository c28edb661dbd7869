#include "sl2grow/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace sl2grow {

namespace {

const std::pair<SubgroupKind::Tag, std::string_view> kTagNames[] = {
    {SubgroupKind::Tag::UpperTriangular, "upper_triangular"},
    {SubgroupKind::Tag::Unipotent, "unipotent"},
    {SubgroupKind::Tag::Diagonal, "diagonal"},
    {SubgroupKind::Tag::QrIndex2, "qr_index2"},
    {SubgroupKind::Tag::Cyclic, "cyclic"},
    {SubgroupKind::Tag::GenQuaternion, "gen_quaternion"},
    {SubgroupKind::Tag::TwoDotS4, "two_dot_S4"},
    {SubgroupKind::Tag::TwoDotA4, "two_dot_A4"},
    {SubgroupKind::Tag::TwoDotA5, "two_dot_A5"},
};

[[noreturn]] void not_realizable(SubgroupKind kind, std::uint32_t p, const std::string& why) {
  throw Error(ErrorCode::NotRealizable, kind.to_string() + " at p=" + std::to_string(p) + ": " + why);
}

std::set<std::uint64_t> order_census(const Subgroup& h) {
  std::set<std::uint64_t> orders;
  h.elements().for_each([&](ElementIndex i) { orders.insert(h.table().element(i).order()); });
  return orders;
}

std::size_t involution_count(const Subgroup& h) {
  std::size_t n = 0;
  h.elements().for_each([&](ElementIndex i) {
    const auto& g = h.table().element(i);
    n += !g.is_identity() && (g * g).is_identity();
  });
  return n;
}

bool census_within(const std::set<std::uint64_t>& census, std::initializer_list<std::uint64_t> allowed) {
  return std::all_of(census.begin(), census.end(), [&](std::uint64_t o) {
    return std::find(allowed.begin(), allowed.end(), o) != allowed.end();
  });
}

SubgroupSpec make_spec(SubgroupKind kind, const TablePtr& table, std::vector<GroupElement> gens) {
  Subgroup g = Subgroup::generated_by(table, gens);
  return SubgroupSpec{kind, table->prime(), std::move(gens), std::move(g)};
}

SubgroupSpec build_two_dot_s4(const TablePtr& table, const BuildOptions& opts) {
  const Fp& f = table->field();
  FpElement i = f.sqrt(f(-1));
  FpElement r2 = f.sqrt(f(2));
  if (opts.negate_i) i = -i;
  if (opts.negate_sqrt2) r2 = -r2;
  const FpElement h = r2 / f(2);
  const auto a = GroupElement::make(h * (f.one() + i), f.zero(), f.zero(), h * (f.one() - i));
  const auto b = GroupElement::make(h, h, -h, h);
  return make_spec({SubgroupKind::Tag::TwoDotS4, 0}, table, {a, b});
}

SubgroupSpec build_two_dot_a5(const TablePtr& table, const BuildOptions& opts) {
  const SubgroupKind kind{SubgroupKind::Tag::TwoDotA5, 0};
  const GroupTable& t = *table;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<ElementIndex> pick(0, static_cast<ElementIndex>(t.order() - 1));
  const auto sample_with_order = [&](std::uint64_t order) {
    for (;;) {
      const ElementIndex i = pick(rng);
      if (t.element(i).order() == order) return i;
    }
  };
  for (std::size_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
    const ElementIndex g = sample_with_order(4);
    const ElementIndex h = sample_with_order(6);
    const ElementIndex gens[] = {g, h};
    const ElementSet span = closure_of(table, gens, 120);
    if (span.size() != 120) continue;
    SubgroupSpec spec = make_spec(kind, table, {t.element(g), t.element(h)});
    if (involution_count(spec.group) == 1 && census_within(order_census(spec.group), {1, 2, 3, 4, 5, 6, 10})) {
      return spec;
    }
  }
  throw Error(ErrorCode::SearchExhausted,
              "no 2.A5 found in " + std::to_string(opts.max_attempts) + " attempts at p=" + std::to_string(t.prime()));
}

void verify_spec(const SubgroupSpec& spec) {
  const std::size_t expected = spec.kind.expected_order(spec.p);
  if (spec.group.order() != expected) {
    throw std::logic_error(spec.kind.to_string() + " built with order " + std::to_string(spec.group.order()) +
                           ", expected " + std::to_string(expected));
  }
  const auto census = order_census(spec.group);
  bool ok = true;
  using T = SubgroupKind::Tag;
  switch (spec.kind.tag) {
    case T::TwoDotS4:
      ok = involution_count(spec.group) == 1 && census.count(8) == 1 && census_within(census, {1, 2, 3, 4, 6, 8});
      break;
    case T::TwoDotA4:
      ok = involution_count(spec.group) == 1 && census_within(census, {1, 2, 3, 4, 6});
      break;
    case T::TwoDotA5:
      ok = involution_count(spec.group) == 1 && census_within(census, {1, 2, 3, 4, 5, 6, 10});
      break;
    case T::Cyclic:
      ok = census.count(spec.kind.n) == 1;
      break;
    case T::GenQuaternion:
      ok = involution_count(spec.group) == 1;
      break;
    default:
      break;
  }
  if (!ok) throw std::logic_error(spec.kind.to_string() + " failed its structural checks");
}

}  // namespace

std::string SubgroupKind::to_string() const {
  for (const auto& [t, name] : kTagNames) {
    if (t != tag) continue;
    if (tag == Tag::Cyclic) return std::string(name) + ":" + std::to_string(n);
    if (tag == Tag::GenQuaternion) return std::string(name) + ":" + std::to_string(4 * n);
    return std::string(name);
  }
  return "unknown";
}

SubgroupKind SubgroupKind::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  for (const auto& [t, name] : kTagNames) {
    if (name != head) continue;
    const bool parametrized = t == Tag::Cyclic || t == Tag::GenQuaternion;
    if (parametrized != (colon != std::string_view::npos)) break;
    SubgroupKind kind{t, 0};
    if (parametrized) {
      const std::string_view arg = text.substr(colon + 1);
      unsigned v = 0;
      const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
      if (ec != std::errc{} || ptr != arg.data() + arg.size() || v == 0) break;
      if (t == Tag::GenQuaternion) {
        if (v % 4 != 0) break;
        v /= 4;
      }
      kind.n = v;
    }
    return kind;
  }
  throw Error(ErrorCode::ParseError, "unknown subgroup kind '" + std::string(text) + "'");
}

std::size_t SubgroupKind::expected_order(std::uint32_t p) const {
  const std::size_t q = p;
  switch (tag) {
    case Tag::UpperTriangular: return q * (q - 1);
    case Tag::Unipotent: return q;
    case Tag::Diagonal: return q - 1;
    case Tag::QrIndex2: return q * (q - 1) / 2;
    case Tag::Cyclic: return n;
    case Tag::GenQuaternion: return 4 * std::size_t{n};
    case Tag::TwoDotS4: return 48;
    case Tag::TwoDotA4: return 24;
    case Tag::TwoDotA5: return 120;
  }
  return 0;
}

SubgroupSpec build_subgroup(SubgroupKind kind, const TablePtr& table, const BuildOptions& opts) {
  const Fp& f = table->field();
  const std::uint32_t p = f.modulus();
  const FpElement g = f.primitive_root();
  const FpElement one = f.one();
  using T = SubgroupKind::Tag;

  SubgroupSpec spec = [&]() -> SubgroupSpec {
    switch (kind.tag) {
      case T::UpperTriangular:
        return make_spec(kind, table, {GroupElement::diag(g), GroupElement::upper(one, one)});
      case T::Unipotent:
        return make_spec(kind, table, {GroupElement::upper(one, one)});
      case T::Diagonal:
        return make_spec(kind, table, {GroupElement::diag(g)});
      case T::QrIndex2:
        return make_spec(kind, table, {GroupElement::diag(g * g), GroupElement::upper(one, one)});
      case T::Cyclic:
        if (kind.n == 0 || (p - 1) % kind.n != 0) not_realizable(kind, p, "n must divide p-1");
        return make_spec(kind, table, {GroupElement::diag(f.element_of_order(kind.n))});
      case T::GenQuaternion:
        if (kind.n == 0 || (p - 1) % (2 * kind.n) != 0) not_realizable(kind, p, "2n must divide p-1");
        return make_spec(kind, table,
                         {GroupElement::diag(f.element_of_order(2 * kind.n)), GroupElement::antidiag(one)});
      case T::TwoDotS4:
        if (p % 8 != 1) not_realizable(kind, p, "only p = 1 mod 8 is supported");
        return build_two_dot_s4(table, opts);
      case T::TwoDotA4: {
        if (p % 8 != 1) not_realizable(kind, p, "built inside 2.S4, which needs p = 1 mod 8");
        const SubgroupSpec s4 = build_two_dot_s4(table, opts);
        ElementSet squares(table);
        s4.group.elements().for_each([&](ElementIndex i) { squares.insert(table->mul(i, i)); });
        const ElementSet a4 = closure(squares);
        Subgroup sub(a4);
        std::vector<GroupElement> gens;
        for (const auto i : sub.generators()) gens.push_back(table->element(i));
        return SubgroupSpec{kind, p, std::move(gens), std::move(sub)};
      }
      case T::TwoDotA5:
        if (p % 10 != 1 && p % 10 != 9) not_realizable(kind, p, "needs p = +-1 mod 10");
        return build_two_dot_a5(table, opts);
    }
    throw std::logic_error("unhandled subgroup kind");
  }();
  verify_spec(spec);
  return spec;
}

std::vector<SubgroupKind> realizable_kinds(std::uint32_t p) {
  using T = SubgroupKind::Tag;
  std::vector<SubgroupKind> out{{T::UpperTriangular, 0}, {T::Unipotent, 0}, {T::Diagonal, 0}, {T::QrIndex2, 0}};
  for (unsigned n = 3; n <= p - 1; ++n) {
    if ((p - 1) % n == 0) out.push_back({T::Cyclic, n});
  }
  for (unsigned n = 2; 2 * n <= p - 1; ++n) {
    if ((p - 1) % (2 * n) == 0) out.push_back({T::GenQuaternion, n});
  }
  if (p % 8 == 1) {
    out.push_back({T::TwoDotS4, 0});
    out.push_back({T::TwoDotA4, 0});
  }
  if (p % 10 == 1 || p % 10 == 9) out.push_back({T::TwoDotA5, 0});
  return out;
}

ElementSet splus2(const Subgroup& h, const GroupElement& x) {
  if (h.contains(x)) throw Error(ErrorCode::XInH, x.to_string());
  if ((x * x).is_identity()) throw Error(ErrorCode::OrderTwo, x.to_string() + " has order at most 2");
  ElementSet s = h.elements();
  s.insert(x);
  s.insert(x.inverse());
  return s;
}

ElementSet coset_core_set(const Subgroup& h, const GroupElement& x) {
  if (h.contains(x)) throw Error(ErrorCode::XInH, x.to_string());
  if (!h.contains(x * x)) throw Error(ErrorCode::XSquaredNotInH, x.to_string());
  return h.elements() | coset_core(h, x);
}

std::optional<GroupElement> normalize_rep(const Subgroup& h, const GroupElement& x) {
  const GroupTable& t = h.table();
  const ElementIndex xi = t.index_of(x);
  std::optional<GroupElement> out;
  h.elements().for_each([&](ElementIndex h2) {
    if (out) return;
    const ElementIndex h2inv = t.inverse(h2);
    if (h.contains(t.mul(t.mul(xi, h2inv), xi))) out = t.element(t.mul(h2inv, xi));
  });
  return out;
}

std::size_t conjugate_index(const Subgroup& h, const GroupElement& x) {
  const GroupTable& t = h.table();
  const ElementIndex xi = t.index_of(x);
  const ElementIndex xinv = t.inverse(xi);
  std::size_t kept = 0;
  h.elements().for_each([&](ElementIndex e) { kept += h.contains(t.mul(t.mul(xi, e), xinv)); });
  return h.order() / kept;
}

std::vector<GoodX> find_good_x(const Subgroup& h) {
  const GroupTable& t = h.table();
  std::map<std::size_t, std::vector<ElementIndex>> by_index;
  for (ElementIndex x = 0; x < t.order(); ++x) {
    if (h.contains(x) || !h.contains(t.mul(x, x))) continue;
    by_index[conjugate_index(h, t.element(x))].push_back(x);
  }
  for (const auto& [c, candidates] : by_index) {
    std::vector<GoodX> found;
    for (const auto x : candidates) {
      if (generates_with(h, x)) found.push_back(GoodX{t.element(x), x, c});
    }
    if (!found.empty()) return found;
  }
  throw Error(ErrorCode::NoneFound, "no x with x^2 in H generating G for |H|=" + std::to_string(h.order()));
}

OptimalConstruction optimal_construction(const TablePtr& table, unsigned v_power, const BuildOptions& opts) {
  const Fp& f = table->field();
  const std::uint32_t p = f.modulus();
  if (p % 16 != 1) {
    throw Error(ErrorCode::NotRealizable, "the size-64 construction needs p = 1 mod 16, got " + std::to_string(p));
  }
  if (v_power % 2 == 0) throw Error(ErrorCode::DomainError, "v must be raised to an odd power");
  SubgroupSpec h = build_subgroup({SubgroupKind::Tag::TwoDotS4, 0}, table, opts);
  const FpElement v = f.element_of_order(16).pow(v_power);
  const GroupElement x = GroupElement::antidiag(v);
  ElementSet s = coset_core_set(h.group, x);
  return OptimalConstruction{std::move(h), x, std::move(s)};
}

ElementSet optimal_set(const TablePtr& table) { return optimal_construction(table).set; }

EvdltConstruction evdlt_construction(const TablePtr& table) {
  const Fp& f = table->field();
  const std::uint32_t p = f.modulus();
  if (p % 4 != 1) throw Error(ErrorCode::NotRealizable, "needs p = 1 mod 4, got " + std::to_string(p));
  if (!f.is_qr(f(-1))) throw std::logic_error("-1 must be a square when p = 1 mod 4");
  SubgroupSpec h = build_subgroup({SubgroupKind::Tag::QrIndex2, 0}, table);
  const GroupElement x = GroupElement::make(f, 1, -2, 1, -1);
  if (x.c() == 0 || !(x * x == GroupElement::minus_identity(f))) {
    throw std::logic_error("x must lie outside U with x^2 = -I");
  }
  ElementSet s = splus2(h.group, x);
  return EvdltConstruction{std::move(h), x, std::move(s)};
}

ElementSet evdlt_set(const TablePtr& table) { return evdlt_construction(table).set; }

bool BoundEstimate::brackets(std::size_t cube_size) const noexcept {
  const auto cube = static_cast<double>(cube_size);
  constexpr double eps = 1e-9;
  if (cube + eps < lower3) return false;
  return !upper3 || cube <= *upper3 + eps;
}

BoundEstimate bound_estimate(std::size_t sizeH, std::size_t c, BoundCase bound_case) {
  if (c < 2) throw Error(ErrorCode::BadIndex, "index c = " + std::to_string(c) + " (need c >= 2)");
  BoundEstimate e;
  e.c = c;
  e.sizeH = sizeH;
  e.bound_case = bound_case;
  const auto h = static_cast<double>(sizeH);
  const auto cd = static_cast<double>(c);
  if (bound_case == BoundCase::CosetCore) {
    e.lower3 = (cd + 1) * h;
    e.upper3 = (cd + 2 - 1 / cd) * h;
    e.sizeS = (1 + 1 / cd) * h;
  } else {
    e.lower3 = (2 * cd + 1) * h;
    e.sizeS = h + 2;
  }
  return e;
}

std::pair<double, double> monotone_bounds(double l, double k) {
  if (!(l >= 2) || !(k >= 1)) throw Error(ErrorCode::DomainError, "need l >= 2 and k >= 1");
  const double denom = std::log(l * (k + 1));
  return {std::log(l * k * (k + 1)) / denom, std::log(l * k * (2 * k + 1)) / denom};
}

}  // namespace sl2grow
