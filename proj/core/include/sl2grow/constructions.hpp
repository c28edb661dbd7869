#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sl2grow/growth.hpp"

namespace sl2grow {

/// Catalog of subgroup families that can be built explicitly.
struct SubgroupKind {
  enum class Tag {
    UpperTriangular,  ///< u(alpha, beta), order p(p-1)
    Unipotent,        ///< u(1, beta), order p
    Diagonal,         ///< diag[l, l^-1], order p-1
    QrIndex2,         ///< u(q, beta) with q a square, order p(p-1)/2
    Cyclic,           ///< <diag[z, z^-1]> with z of order n
    GenQuaternion,    ///< Q_{4n} = <diag[z, z^-1], antidiag[1, -1]>, z of order 2n
    TwoDotS4,
    TwoDotA4,
    TwoDotA5,
  };
  Tag tag = Tag::UpperTriangular;
  /// Cyclic: the order n. GenQuaternion: n in Q_{4n}.
  unsigned n = 0;

  /// Text form: `upper_triangular`, `cyclic:6`, `gen_quaternion:12` (the
  /// group order), `two_dot_S4`, ...
  std::string to_string() const;
  static SubgroupKind parse(std::string_view text);
  /// The order the construction must produce for prime p.
  std::size_t expected_order(std::uint32_t p) const;

  friend bool operator==(const SubgroupKind&, const SubgroupKind&) = default;
};

struct SubgroupSpec {
  SubgroupKind kind;
  std::uint32_t p = 0;
  std::vector<GroupElement> generators;
  Subgroup group;
};

struct BuildOptions {
  /// Root choices for reducing the 2.S4 matrices: i -> -i, sqrt2 -> -sqrt2.
  bool negate_i = false;
  bool negate_sqrt2 = false;
  /// Randomized 2.A5 search.
  std::uint64_t seed = 0x5eed2a5ULL;
  std::size_t max_attempts = 20000;
};

/// Throws NotRealizable when the congruence condition for the kind fails,
/// SearchExhausted when the randomized 2.A5 search gives up.
SubgroupSpec build_subgroup(SubgroupKind kind, const TablePtr& table, const BuildOptions& opts = {});

/// Every kind that can be built at this prime, with its order.
std::vector<SubgroupKind> realizable_kinds(std::uint32_t p);

/// H u {x, x^-1}. Throws XInH or OrderTwo.
ElementSet splus2(const Subgroup& h, const GroupElement& x);
/// H u (xH n Hx). Throws XInH or XSquaredNotInH.
ElementSet coset_core_set(const Subgroup& h, const GroupElement& x);

/// When HxH = Hx^-1H, returns y = h2^-1 x in Hx with y^2 in H, where h2 is
/// the first element of H (by index) with x h2^-1 x in H. Otherwise nothing.
std::optional<GroupElement> normalize_rep(const Subgroup& h, const GroupElement& x);

struct GoodX {
  GroupElement x;
  ElementIndex index = 0;
  /// [H : H n x^-1 H x]
  std::size_t c = 0;
};

/// All x outside H with x^2 in H and <H, x> = G minimizing the index c,
/// sorted by element index. Throws NoneFound.
std::vector<GoodX> find_good_x(const Subgroup& h);

/// [H : H n x^-1 H x]
std::size_t conjugate_index(const Subgroup& h, const GroupElement& x);

/// The size-64 set H u xL from H = 2.S4 and x = antidiag[v, -v^-1] with v
/// of order 16 (or the given odd power of it).
struct OptimalConstruction {
  SubgroupSpec h;
  GroupElement x;
  ElementSet set;
};
OptimalConstruction optimal_construction(const TablePtr& table, unsigned v_power = 1, const BuildOptions& opts = {});
/// Requires p = 1 mod 16; throws NotRealizable otherwise.
ElementSet optimal_set(const TablePtr& table);

/// H = squares-index-2 subgroup of U, x = [[1,-2],[1,-1]], set H u {x, x^-1}.
struct EvdltConstruction {
  SubgroupSpec h;
  GroupElement x;
  ElementSet set;
};
EvdltConstruction evdlt_construction(const TablePtr& table);
/// Requires p = 1 mod 4; throws NotRealizable otherwise.
ElementSet evdlt_set(const TablePtr& table);

enum class BoundCase { DisjointCosets, CosetCore };

struct BoundEstimate {
  std::size_t c = 0;
  std::size_t sizeH = 0;
  double lower3 = 0;
  /// Absent in the disjoint case, where only a lower bound is known.
  std::optional<double> upper3;
  double sizeS = 0;
  BoundCase bound_case = BoundCase::CosetCore;

  bool brackets(std::size_t cube_size) const noexcept;
};

/// Index-c bounds on |S^3| for S built from H and x. Throws BadIndex for c < 2.
BoundEstimate bound_estimate(std::size_t sizeH, std::size_t c, BoundCase bound_case);

/// f_l(k) = log(lk(k+1)) / log(l(k+1)) and g_l(k) = log(lk(2k+1)) / log(l(k+1)).
/// Throws DomainError unless l >= 2 and k >= 1.
std::pair<double, double> monotone_bounds(double l, double k);

}  // namespace sl2grow
