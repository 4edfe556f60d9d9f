#pragma once

// Point-set families: coordinate subspaces, the prime-subfield subplane,
// pencils of concurrent lines, product sets and seeded random sets.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "radproj/radial.hpp"

namespace radproj {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Restart budget for collinearity-capped random sets.
inline constexpr int kMaxRejections = 10'000;

/// The q^k points spanned by the first k coordinate axes, translated by shift.
PointSet affine_subspace_set(const Space& space, unsigned k, std::span<const Elem> shift);

/// The p^2 points of F_{p^2}^2 with both coordinates in the prime subfield.
PointSet subfield_subplane(std::uint32_t p);

/// Union of the first m lines through apex (direction order), optionally
/// without the apex itself.
PointSet concurrent_lines_set(const Space& space, std::uint64_t m, std::span<const Elem> apex,
                              bool include_apex);

/// n points of the axis line {(t, 0, ..., 0)}: t = 0..n-1.
PointSet collinear_set(const Space& space, std::uint64_t n);

/// n distinct points, uniform for a fixed seed. With max_collinear set, points
/// are drawn one at a time in random order and a draw is rejected when it
/// would push some line above the cap; a dead end restarts the draw. Throws
/// GenerationError after kMaxRejections restarts.
PointSet random_set(const Space& space, std::uint64_t n, std::uint64_t seed,
                    std::optional<std::uint32_t> max_collinear = std::nullopt);

/// A x B in F_q^2.
PointSet product_set(const Space& space, std::span<const Elem> a, std::span<const Elem> b);

enum class FamilyKind { subspace, subplane, collinear, concurrent_lines, random, product };

/// A family name plus its parameters, written "kind:key=value,...", e.g.
/// "random:n=12,cap=3", "subspace:k=1", "concurrent:m=2,apex=0", "product:a=3,b=2",
/// "collinear:n=4", "subplane".
struct FamilySpec {
  FamilyKind kind = FamilyKind::random;
  unsigned k = 1;                       // subspace dimension
  std::uint64_t n = 0;                  // random / collinear size
  std::uint64_t m = 1;                  // concurrent line count
  std::optional<std::uint32_t> cap;     // random: max points per line
  std::uint32_t a = 0, b = 0;           // product: first a and first b field elements
  bool include_apex = true;             // concurrent

  static FamilySpec parse(std::string_view text);
  std::string describe() const;
  /// Throws std::invalid_argument when the parameters do not fit the space.
  void validate(const Space& space) const;
  /// Whether the family draws from the seed.
  bool seeded() const { return kind == FamilyKind::random; }
};

/// Builds the family in `space`. subplane ignores `space` beyond requiring
/// q = p^2 and d = 2.
PointSet generate(const Space& space, const FamilySpec& spec, std::uint64_t seed);

}  // namespace radproj
