#include "sl2grow/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>
#include <vector>

namespace sl2grow {

namespace {

// {g, g^-1}, a singleton when g is an involution.
struct Unit {
  ElementIndex a = 0;
  ElementIndex b = 0;
};

std::vector<Unit> outside_units(const ElementSet& s) {
  const GroupTable& t = s.table();
  std::vector<Unit> out;
  for (ElementIndex i = 0; i < t.order(); ++i) {
    const ElementIndex j = t.inverse(i);
    if (i <= j && !s.contains(i)) out.push_back({i, j});
  }
  return out;
}

std::vector<Unit> inside_units(const ElementSet& s) {
  const GroupTable& t = s.table();
  std::vector<Unit> out;
  s.for_each([&](ElementIndex i) {
    const ElementIndex j = t.inverse(i);
    if (i != t.identity() && i <= j) out.push_back({i, j});
  });
  return out;
}

// n = base^exp with base not itself a perfect power.
std::pair<std::size_t, unsigned> perfect_power(std::size_t n) {
  for (std::size_t base = 2; base * base <= n; ++base) {
    std::size_t v = n;
    unsigned e = 0;
    while (v % base == 0) {
      v /= base;
      ++e;
    }
    if (v == 1) return {base, e};
  }
  return {n, 1};
}

struct TrialOutcome {
  std::size_t size = 0;
  std::size_t cube = 0;
  bool same_cube = false;
};

template <typename MakeSet>
std::vector<TrialOutcome> run_trials(std::size_t count, unsigned workers, const ElementSet* base_cube,
                                     MakeSet make) {
  std::vector<TrialOutcome> out(count);
  const auto chunk = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const ElementSet t = make(i);
      const ElementSet c = triple(t);
      out[i] = {t.size(), c.size(), base_cube != nullptr && c == *base_cube};
    }
  };
  workers = std::max(1U, workers);
  if (workers == 1 || count < 2) {
    chunk(0, count);
    return out;
  }
  std::vector<std::jthread> pool;
  const std::size_t per = (count + workers - 1) / workers;
  for (std::size_t begin = 0; begin < count; begin += per) pool.emplace_back(chunk, begin, std::min(count, begin + per));
  return out;
}

template <typename MakeSet>
PerturbationReport summarize(PerturbKind kind, const ElementSet& s, std::size_t count, unsigned workers,
                             MakeSet make) {
  const ElementSet s3 = triple(s);
  PerturbationReport r{.kind = kind, .worst_case = s};
  r.base_size = s.size();
  r.base_cube = s3.size();
  r.base_delta = delta_ratio(r.base_cube, r.base_size);
  const auto outcomes = run_trials(count, workers, kind == PerturbKind::Remove ? &s3 : nullptr, make);
  std::optional<std::size_t> worst;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    ++r.trials;
    if (compare_delta(o.cube, o.size, r.base_cube, r.base_size) != std::partial_ordering::greater) {
      r.all_exceed_base = false;
    }
    if (kind == PerturbKind::Remove && !o.same_cube) r.cube_invariant = false;
    if (r.trials == 1 || o.cube < r.min_cube_seen) r.min_cube_seen = o.cube;
    if (!worst || compare_delta(o.cube, o.size, outcomes[*worst].cube, outcomes[*worst].size) ==
                      std::partial_ordering::less) {
      worst = i;
    }
  }
  if (worst) {
    r.worst_case = make(*worst);
    r.worst_size = outcomes[*worst].size;
    r.worst_cube = outcomes[*worst].cube;
    r.min_delta_seen = delta_ratio(r.worst_cube, r.worst_size);
  }
  return r;
}

}  // namespace

std::string_view to_string(PerturbKind kind) noexcept {
  switch (kind) {
    case PerturbKind::Add: return "add";
    case PerturbKind::Remove: return "remove";
    case PerturbKind::Swap: return "swap";
  }
  return "add";
}

PerturbKind parse_perturb_kind(std::string_view text) {
  for (const auto k : {PerturbKind::Add, PerturbKind::Remove, PerturbKind::Swap}) {
    if (to_string(k) == text) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown perturbation kind '" + std::string(text) + "'");
}

std::partial_ordering compare_delta(std::size_t cube_a, std::size_t size_a, std::size_t cube_b,
                                    std::size_t size_b) {
  const double da = delta_ratio(cube_a, size_a);
  const double db = delta_ratio(cube_b, size_b);
  if (std::abs(da - db) > 1e-12 || size_a < 2 || size_b < 2) return da <=> db;
  const auto [ca, eca] = perfect_power(cube_a);
  const auto [sa, esa] = perfect_power(size_a);
  const auto [cb, ecb] = perfect_power(cube_b);
  const auto [sb, esb] = perfect_power(size_b);
  if (ca == sa && cb == sb) {
    // eca/esa against ecb/esb
    return std::uint64_t{eca} * esb <=> std::uint64_t{ecb} * esa;
  }
  return da <=> db;
}

ElementSet swap_pair(const ElementSet& s, ElementIndex inner, ElementIndex outer) {
  const GroupTable& t = s.table();
  if (!s.contains(inner) || inner == t.identity()) {
    throw Error(ErrorCode::DomainError, "removed element must be a non-identity member of S");
  }
  if (s.contains(outer)) throw Error(ErrorCode::DomainError, "added element must lie outside S");
  ElementSet out = s;
  out.erase(inner);
  out.erase(t.inverse(inner));
  out.insert(outer);
  out.insert(t.inverse(outer));
  return out;
}

PerturbationReport perturb_add(const ElementSet& s, unsigned workers) {
  const auto units = outside_units(s);
  return summarize(PerturbKind::Add, s, units.size(), workers, [&](std::size_t i) {
    ElementSet t = s;
    t.insert(units[i].a);
    t.insert(units[i].b);
    return t;
  });
}

PerturbationReport perturb_remove(const ElementSet& s, unsigned workers) {
  const auto units = inside_units(s);
  return summarize(PerturbKind::Remove, s, units.size(), workers, [&](std::size_t i) {
    ElementSet t = s;
    t.erase(units[i].a);
    t.erase(units[i].b);
    return t;
  });
}

PerturbationReport perturb_swap(const ElementSet& s, std::optional<std::size_t> sample, std::uint64_t seed,
                                unsigned workers) {
  const auto inner = inside_units(s);
  const auto outer = outside_units(s);
  const std::size_t total = inner.size() * outer.size();
  std::vector<std::size_t> picks(total);
  std::iota(picks.begin(), picks.end(), std::size_t{0});
  if (sample && *sample < total) {
    std::vector<std::size_t> chosen;
    chosen.reserve(*sample);
    std::mt19937_64 rng(seed);
    std::sample(picks.begin(), picks.end(), std::back_inserter(chosen), *sample, rng);
    picks = std::move(chosen);
  }
  return summarize(PerturbKind::Swap, s, picks.size(), workers, [&](std::size_t i) {
    const auto& in = inner[picks[i] / outer.size()];
    const auto& out = outer[picks[i] % outer.size()];
    return swap_pair(s, in.a, out.a);
  });
}

}  // namespace sl2grow
