#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sl2grow/growth.hpp"

namespace sl2grow {

enum class SearchHalf { WithCenter, WithoutCenter, Both };

std::string_view to_string(SearchHalf half) noexcept;
SearchHalf parse_search_half(std::string_view text);

/// Exhaustive search over symmetric S containing I with <S> = G and S^3 != G.
///
/// S grows one inverse pair {x, x^-1} at a time, with pair indices strictly
/// increasing along a branch; a branch is abandoned as soon as S^3 = G.
/// Up to `conjugacy_prune_depth` pairs, a state is kept only if its sorted
/// pair list is lexicographically least among its SL(2,p)-conjugates, so each
/// conjugacy class of small states is expanded once.
struct SearchConfig {
  std::uint32_t p = 5;
  SearchHalf half = SearchHalf::Both;
  unsigned conjugacy_prune_depth = 3;
  /// Cut a branch once no descendant can reach a ratio at or below this.
  double delta_cap = std::numeric_limits<double>::infinity();
  unsigned worker_count = 1;
  /// Top-level subtrees at this depth become independent work items.
  unsigned frontier_depth = 2;
  /// Truncate the search after this many added pairs.
  std::optional<unsigned> max_depth;
  /// Called for every visited state (pair list, whether -I is in S).
  /// Only honoured with a single worker.
  std::function<void(std::span<const unsigned>, bool)> visitor;
};

struct SearchResult {
  double best_delta = std::numeric_limits<double>::infinity();
  std::size_t best_size = 0;
  std::size_t best_cube = 0;
  /// Sorted by canonical encoding.
  std::vector<ElementSet> witnesses;
  std::uint64_t nodes_visited = 0;
  /// Children abandoned because their triple product was the whole group.
  std::uint64_t nodes_cut = 0;
  std::chrono::duration<double> wall_time{0};
};

/// Inverse pairs {x, x^-1} with x != x^-1, ordered by their smaller index.
std::vector<std::pair<ElementIndex, ElementIndex>> inverse_pairs(const GroupTable& table);

/// Throws BudgetExceeded when |SL(2,p)| exceeds 128.
SearchResult backtrack_search(const SearchConfig& config);

/// The explicitly listed optimal set for p = 5: six matrices with their
/// inverses together with the cyclic groups generated by three more.
/// Throws InterpretationMismatch if that does not give 30 elements.
ElementSet published_optimum(const TablePtr& table);
GrowthReport verify_published_optimum();

/// Number of orbits of the given sets under conjugation by GL(2,p).
std::size_t gl_conjugacy_classes(std::span<const ElementSet> sets);

/// x^-1 S x for x in GL(2,p) given by its entries (nonzero determinant).
ElementSet gl_conjugate(const ElementSet& s, const std::array<std::uint32_t, 4>& x);

}  // namespace sl2grow
