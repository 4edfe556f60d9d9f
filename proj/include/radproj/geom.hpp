#pragma once

// Affine geometry of F_q^d: points, canonical projective directions, and
// canonical lines.
//
// A point packs into an integer in [0, q^d) by base-q digits, coordinate 0
// least significant. A direction is the scalar multiple of a nonzero vector
// whose first nonzero coordinate (the pivot) is 1. A line is stored as its
// direction plus the unique point on it whose pivot coordinate is 0.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "radproj/gf.hpp"

namespace radproj {

using PointId = std::uint64_t;
using Coords = std::vector<Elem>;

/// Largest q^d accepted by Space.
inline constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 24;
/// Largest line count enumerate_lines will materialise.
inline constexpr std::uint64_t kMaxLines = 100'000'000;

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Direction {
  Coords vec;
  std::size_t pivot = 0;

  friend bool operator==(const Direction&, const Direction&) = default;
};

struct Line {
  Direction dir;
  Coords base;

  friend bool operator==(const Line&, const Line&) = default;
};

/// (packed direction vector, packed base point). Orders lines the same way
/// enumerate_lines does.
struct LineKey {
  PointId dir = 0;
  PointId base = 0;

  friend auto operator<=>(const LineKey&, const LineKey&) = default;
};

struct LineKeyHash {
  std::size_t operator()(const LineKey& k) const noexcept {
    return std::hash<std::uint64_t>{}(k.dir * 0x9E3779B97F4A7C15ULL ^ k.base);
  }
};

struct CountingConstants {
  std::uint64_t qbinom = 0;        // (q^d - 1)/(q - 1): lines through a point
  std::uint64_t lines_total = 0;   // q^(d-1) * qbinom
  std::uint64_t points_total = 0;  // q^d
};

/// Closed-form counts; throws GeometryError when q^d overflows kMaxPoints.
CountingConstants counting_constants(std::uint64_t q, unsigned d);

/// F_q^d. Immutable; copies share internal tables.
class Space {
 public:
  Space(Field field, unsigned d);

  const Field& field() const { return impl_->field; }
  unsigned dim() const { return impl_->d; }
  std::uint32_t q() const { return impl_->field.q(); }
  const CountingConstants& constants() const { return impl_->counts; }
  std::uint64_t num_points() const { return impl_->counts.points_total; }
  std::uint64_t qbinom() const { return impl_->counts.qbinom; }
  std::uint64_t num_lines() const { return impl_->counts.lines_total; }

  PointId pack(std::span<const Elem> coords) const;
  Coords unpack(PointId id) const;
  Elem coord(PointId id, unsigned i) const;
  bool valid_point(std::span<const Elem> coords) const;

  /// Coordinatewise x - y on packed points.
  PointId sub(PointId x, PointId y) const;

  /// Throws GeometryError on the zero vector.
  Direction canonical_direction(std::span<const Elem> v) const;

  /// Throws GeometryError when p1 == p2.
  Line line_through(std::span<const Elem> p1, std::span<const Elem> p2) const;

  /// The q points base + t*dir in increasing t (field index order).
  std::vector<PointId> line_points(const Line& line) const;
  bool contains(const Line& line, std::span<const Elem> x) const;

  /// One canonical line per direction, in direction order.
  std::vector<Line> lines_through(std::span<const Elem> y) const;

  /// Every line once: directions ascending, then bases ascending.
  /// Throws GeometryError when num_lines() > kMaxLines.
  std::vector<Line> enumerate_lines() const;
  void for_each_line(const std::function<void(const LineKey&)>& fn) const;

  LineKey key(const Line& line) const;
  Line line(const LineKey& key) const;

  // Hot-path interface on packed values.

  /// Packed canonical direction vectors, ascending. Position is the ordinal.
  std::span<const PointId> directions() const { return impl_->dirs; }
  /// Ordinal of the canonical direction of a nonzero packed vector.
  std::uint32_t direction_ordinal(PointId vec) const;
  /// Key of the line through x with the direction of the given ordinal.
  LineKey line_key(PointId x, std::uint32_t dir_ordinal) const;
  /// Key of the line through two distinct packed points.
  LineKey line_key(PointId x, PointId y) const;

 private:
  struct Impl {
    Field field;
    unsigned d = 0;
    CountingConstants counts;
    std::vector<PointId> pow_q;       // q^i, i = 0..d
    std::vector<PointId> dirs;        // ascending packed canonical vectors
    std::vector<Elem> dir_coords;     // d coordinates per ordinal
    std::vector<unsigned> dir_pivot;  // pivot per ordinal
    std::vector<std::uint32_t> ordinal_of;  // packed vector -> ordinal, when small
  };

  static PointId canonical_packed(const Impl& impl, PointId vec);

  std::shared_ptr<const Impl> impl_;
};

}  // namespace radproj
