#include "radproj/radial.hpp"

#include <algorithm>
#include <set>

namespace radproj {

PointSet::PointSet(Space space, std::vector<PointId> members)
    : space_(std::move(space)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= space_.num_points())
    throw GeometryError("point index out of range for q = " + std::to_string(space_.q()) +
                        ", d = " + std::to_string(space_.dim()));
}

PointSet PointSet::from_coords(const Space& space, const std::vector<Coords>& points) {
  std::vector<PointId> ids;
  ids.reserve(points.size());
  for (const auto& c : points) ids.push_back(space.pack(c));
  return PointSet(space, std::move(ids));
}

PointSet PointSet::full(const Space& space) {
  std::vector<PointId> ids(space.num_points());
  for (PointId i = 0; i < ids.size(); ++i) ids[i] = i;
  return PointSet(space, std::move(ids));
}

bool PointSet::contains(PointId id) const {
  return std::binary_search(members_.begin(), members_.end(), id);
}

std::vector<Coords> PointSet::coords() const {
  std::vector<Coords> out;
  out.reserve(members_.size());
  for (PointId id : members_) out.push_back(space_.unpack(id));
  return out;
}

ProjectionCounter::ProjectionCounter(const Space& space)
    : space_(space), stamp_(space.qbinom(), 0) {}

std::size_t ProjectionCounter::count(const PointSet& set, PointId y, std::size_t cap) {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  std::size_t distinct = 0;
  for (PointId x : set.members()) {
    if (x == y) continue;
    const std::uint32_t k = space_.direction_ordinal(space_.sub(x, y));
    if (stamp_[k] != epoch_) {
      stamp_[k] = epoch_;
      if (++distinct > cap) break;
    }
  }
  return distinct;
}

std::size_t projection_size(const PointSet& set, PointId y) {
  ProjectionCounter counter(set.space());
  return counter.count(set, y);
}

std::size_t projection_size_oracle(const PointSet& set, PointId y) {
  const Space& space = set.space();
  const Coords center = space.unpack(y);
  std::set<std::pair<Coords, Coords>> lines;
  for (const Coords& x : set.coords()) {
    if (x == center) continue;
    Line l = space.line_through(center, x);
    lines.emplace(std::move(l.dir.vec), std::move(l.base));
  }
  return lines.size();
}

ProjectionImage projection_image(const PointSet& set, PointId y) {
  ProjectionImage img{y, {}};
  for (PointId x : set.members())
    if (x != y) img.lines.push_back(set.space().line_key(y, x));
  std::sort(img.lines.begin(), img.lines.end());
  img.lines.erase(std::unique(img.lines.begin(), img.lines.end()), img.lines.end());
  return img;
}

std::vector<std::uint32_t> projection_profile(const PointSet& set) {
  const Space& space = set.space();
  ProjectionCounter counter(space);
  std::vector<std::uint32_t> out(space.num_points());
  for (PointId y = 0; y < out.size(); ++y) out[y] = static_cast<std::uint32_t>(counter.count(set, y));
  return out;
}

std::int64_t max_admissible_size(const Rational& threshold, Cmp cmp) {
  BigInt k = floor(threshold);
  if (cmp == Cmp::below && Rational(k) == threshold) k -= 1;
  if (k < 0) return -1;
  if (k > INT64_MAX) return INT64_MAX;
  return k.convert_to<std::int64_t>();
}

PointSet exceptional_set(const PointSet& set, const Rational& threshold, Cmp cmp) {
  const Space& space = set.space();
  const std::int64_t limit = max_admissible_size(threshold, cmp);
  if (limit < 0) return PointSet(space);
  const auto cap = static_cast<std::size_t>(limit);
  ProjectionCounter counter(space);
  std::vector<PointId> out;
  for (PointId y = 0; y < space.num_points(); ++y)
    if (counter.count(set, y, cap) <= cap) out.push_back(y);
  return PointSet(space, std::move(out));
}

PointSet exceptional_set(const Space& space, std::span<const std::uint32_t> profile,
                         const Rational& threshold, Cmp cmp) {
  const std::int64_t limit = max_admissible_size(threshold, cmp);
  std::vector<PointId> out;
  if (limit >= 0)
    for (PointId y = 0; y < profile.size(); ++y)
      if (static_cast<std::int64_t>(profile[y]) <= limit) out.push_back(y);
  return PointSet(space, std::move(out));
}

IncidenceLedger::IncidenceLedger(const PointSet& e_set, const PointSet& t_set)
    : space_(e_set.space()) {
  if (!(t_set.space().dim() == space_.dim() && t_set.space().field() == space_.field()))
    throw GeometryError("E and T live in different spaces");
  const auto ndir = static_cast<std::uint32_t>(space_.qbinom());
  std::vector<LineCount> raw;
  raw.reserve((e_set.size() + t_set.size()) * ndir);
  for (PointId x : e_set.members())
    for (std::uint32_t k = 0; k < ndir; ++k) raw.push_back({space_.line_key(x, k), 1, 0});
  for (PointId y : t_set.members())
    for (std::uint32_t k = 0; k < ndir; ++k) raw.push_back({space_.line_key(y, k), 0, 1});
  std::sort(raw.begin(), raw.end(), [](const LineCount& a, const LineCount& b) { return a.key < b.key; });
  for (const LineCount& r : raw) {
    if (!lines_.empty() && lines_.back().key == r.key) {
      lines_.back().e += r.e;
      lines_.back().t += r.t;
    } else {
      lines_.push_back(r);
    }
  }
}

const LineCount* IncidenceLedger::find(const LineKey& key) const {
  const auto it = std::lower_bound(lines_.begin(), lines_.end(), key,
                                   [](const LineCount& a, const LineKey& k) { return a.key < k; });
  return (it != lines_.end() && it->key == key) ? &*it : nullptr;
}

LineSums IncidenceLedger::sums(const std::function<bool(const LineCount&)>& keep) const {
  LineSums s;
  for (const LineCount& l : lines_) {
    if (!keep(l)) continue;
    ++s.lines;
    s.e += l.e;
    s.t += l.t;
    s.et += std::uint64_t{l.e} * l.t;
    s.e2 += std::uint64_t{l.e} * l.e;
    s.t2 += std::uint64_t{l.t} * l.t;
  }
  return s;
}

LineSums IncidenceLedger::sums(LineFamily family) const {
  switch (family) {
    case LineFamily::all: {
      LineSums s = sums([](const LineCount&) { return true; });
      s.lines = space_.num_lines();
      return s;
    }
    case LineFamily::joint: return sums([](const LineCount& l) { return l.e >= 1 && l.t >= 1; });
    case LineFamily::e_at_least_2: return sums([](const LineCount& l) { return l.e >= 2; });
    case LineFamily::t_above_1: return sums([](const LineCount& l) { return l.t > 1; });
    case LineFamily::t_equal_1: return sums([](const LineCount& l) { return l.t == 1; });
  }
  return {};
}

std::uint32_t IncidenceLedger::max_e() const {
  std::uint32_t m = 0;
  for (const LineCount& l : lines_) m = std::max(m, l.e);
  return m;
}

std::uint32_t IncidenceLedger::max_t() const {
  std::uint32_t m = 0;
  for (const LineCount& l : lines_) m = std::max(m, l.t);
  return m;
}

}  // namespace radproj
