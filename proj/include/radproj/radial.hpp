#pragma once

// Radial projections, exceptional sets and per-line incidence counts.
//
// For a center y and a set E, the radial projection of E from y is the set of
// lines through y that contain a point of E other than y. Its size is the
// number of distinct directions x - y over x in E \ {y}.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "radproj/geom.hpp"
#include "radproj/numeric.hpp"

namespace radproj {

/// A finite subset of F_q^d held as sorted packed indices.
class PointSet {
 public:
  explicit PointSet(Space space) : space_(std::move(space)) {}
  /// Sorts and removes duplicates; throws GeometryError on indices >= q^d.
  PointSet(Space space, std::vector<PointId> members);
  static PointSet from_coords(const Space& space, const std::vector<Coords>& points);
  static PointSet full(const Space& space);

  const Space& space() const { return space_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::span<const PointId> members() const { return members_; }
  bool contains(PointId id) const;
  std::vector<Coords> coords() const;

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.space_.dim() == b.space_.dim() && a.space_.field() == b.space_.field() &&
           a.members_ == b.members_;
  }

 private:
  Space space_;
  std::vector<PointId> members_;
};

/// Size comparison used to select exceptional centers.
enum class Cmp {
  at_most,  // |pi^y(E)| <= threshold
  below,    // |pi^y(E)| <  threshold
};

/// Reusable scratch for counting distinct directions from many centers.
class ProjectionCounter {
 public:
  explicit ProjectionCounter(const Space& space);

  /// |pi^y(E)|, or any value > cap as soon as the count exceeds cap.
  std::size_t count(const PointSet& set, PointId y, std::size_t cap = SIZE_MAX);

 private:
  Space space_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

/// Direction bucketing: |pi^y(E)|.
std::size_t projection_size(const PointSet& set, PointId y);

/// Independent route: materialise the line through y and each x as a
/// canonical Line from coordinates and count distinct lines.
std::size_t projection_size_oracle(const PointSet& set, PointId y);

/// The lines of pi^y(E), ascending.
struct ProjectionImage {
  PointId center = 0;
  std::vector<LineKey> lines;
};
ProjectionImage projection_image(const PointSet& set, PointId y);

/// |pi^y(E)| for every y in F_q^d, indexed by packed point.
std::vector<std::uint32_t> projection_profile(const PointSet& set);

/// Largest integer size that satisfies `size cmp threshold`; -1 when none does.
std::int64_t max_admissible_size(const Rational& threshold, Cmp cmp);

/// {y in F_q^d : |pi^y(E)| cmp threshold}.
PointSet exceptional_set(const PointSet& set, const Rational& threshold, Cmp cmp);
/// Same, read off a precomputed profile.
PointSet exceptional_set(const Space& space, std::span<const std::uint32_t> profile,
                         const Rational& threshold, Cmp cmp);

struct LineCount {
  LineKey key;
  std::uint32_t e = 0;  // |line ∩ E|
  std::uint32_t t = 0;  // |line ∩ T|
};

/// Named sub-collections of lines.
enum class LineFamily {
  all,           // every line of F_q^d (lines absent from the ledger contribute 0)
  joint,         // e >= 1 and t >= 1
  e_at_least_2,  // e >= 2
  t_above_1,     // t > 1
  t_equal_1,     // t == 1
};

struct LineSums {
  std::uint64_t lines = 0;
  std::uint64_t e = 0;
  std::uint64_t t = 0;
  std::uint64_t et = 0;
  std::uint64_t e2 = 0;
  std::uint64_t t2 = 0;
};

/// e(l) and t(l) for every line meeting E ∪ T, sorted by LineKey.
class IncidenceLedger {
 public:
  IncidenceLedger(const PointSet& e_set, const PointSet& t_set);
  explicit IncidenceLedger(const PointSet& e_set) : IncidenceLedger(e_set, PointSet(e_set.space())) {}

  const Space& space() const { return space_; }
  std::span<const LineCount> lines() const { return lines_; }
  /// Lines of F_q^d that meet neither E nor T.
  std::uint64_t empty_lines() const { return space_.num_lines() - lines_.size(); }
  const LineCount* find(const LineKey& key) const;

  LineSums sums(LineFamily family) const;
  LineSums sums(const std::function<bool(const LineCount&)>& keep) const;

  std::uint32_t max_e() const;
  std::uint32_t max_t() const;

 private:
  Space space_;
  std::vector<LineCount> lines_;
};

}  // namespace radproj
