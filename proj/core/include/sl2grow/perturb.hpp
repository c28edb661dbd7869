#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "sl2grow/growth.hpp"

namespace sl2grow {

enum class PerturbKind { Add, Remove, Swap };

std::string_view to_string(PerturbKind kind) noexcept;
PerturbKind parse_perturb_kind(std::string_view text);

/// Orders log(cube_a)/log(size_a) against log(cube_b)/log(size_b).
/// Decided in double precision unless the two are within 1e-12, in which
/// case ratios of powers of a common base are compared exactly.
std::partial_ordering compare_delta(std::size_t cube_a, std::size_t size_a, std::size_t cube_b,
                                    std::size_t size_b);

struct PerturbationReport {
  PerturbKind kind = PerturbKind::Add;
  double base_delta = 1;
  std::size_t base_size = 0;
  std::size_t base_cube = 0;
  std::size_t trials = 0;
  double min_delta_seen = 0;
  /// Every perturbed set has a strictly larger ratio than the base set.
  bool all_exceed_base = true;
  ElementSet worst_case;
  std::size_t worst_size = 0;
  std::size_t worst_cube = 0;
  /// Smallest |T^3| over all trials.
  std::size_t min_cube_seen = 0;
  /// Remove only: T^3 = S^3 as sets for every trial.
  bool cube_invariant = true;
};

/// T = S u {y, y^-1} for every pair outside S.
PerturbationReport perturb_add(const ElementSet& s, unsigned workers = 1);
/// T = S \ {z, z^-1} for every pair inside S other than I (and -I alone).
PerturbationReport perturb_remove(const ElementSet& s, unsigned workers = 1);
/// T = (S \ {s, s^-1}) u {y, y^-1}; all combinations, or a seeded uniform
/// sample of `sample` of them.
PerturbationReport perturb_swap(const ElementSet& s, std::optional<std::size_t> sample, std::uint64_t seed = 1,
                                unsigned workers = 1);

/// The single swap (S \ {s, s^-1}) u {y, y^-1}. Throws DomainError unless
/// s is a non-identity member of S and y lies outside S.
ElementSet swap_pair(const ElementSet& s, ElementIndex inner, ElementIndex outer);

}  // namespace sl2grow
