#include "radproj/geom.hpp"

#include <algorithm>
#include <string>

namespace radproj {

namespace {

// Packed-vector lookup tables above this size are skipped in favour of binary
// search over the sorted direction list.
constexpr std::uint64_t kOrdinalTableMax = std::uint64_t{1} << 22;

}  // namespace

CountingConstants counting_constants(std::uint64_t q, unsigned d) {
  if (q < 2 || d < 1) throw GeometryError("need q >= 2 and d >= 1");
  std::uint64_t points = 1;
  for (unsigned i = 0; i < d; ++i) {
    points *= q;
    if (points > kMaxPoints)
      throw GeometryError("q^d = " + std::to_string(q) + "^" + std::to_string(d) +
                          " exceeds the point cap 2^24");
  }
  CountingConstants c;
  c.points_total = points;
  c.qbinom = (points - 1) / (q - 1);
  c.lines_total = (points / q) * c.qbinom;
  return c;
}

Space::Space(Field field, unsigned d) {
  auto impl = std::make_shared<Impl>(Impl{std::move(field), d, {}, {}, {}, {}, {}, {}});
  const std::uint32_t q = impl->field.q();
  impl->counts = counting_constants(q, d);
  impl->pow_q.resize(d + 1);
  impl->pow_q[0] = 1;
  for (unsigned i = 1; i <= d; ++i) impl->pow_q[i] = impl->pow_q[i - 1] * q;

  // Canonical vectors with pivot j: coordinate j is 1, lower ones 0, higher free.
  impl->dirs.reserve(impl->counts.qbinom);
  for (unsigned j = 0; j < d; ++j) {
    const PointId free_count = impl->pow_q[d - 1 - j];
    for (PointId n = 0; n < free_count; ++n)
      impl->dirs.push_back(impl->pow_q[j] + n * impl->pow_q[j + 1]);
  }
  std::sort(impl->dirs.begin(), impl->dirs.end());

  impl->dir_coords.resize(impl->dirs.size() * d);
  impl->dir_pivot.resize(impl->dirs.size());
  for (std::size_t k = 0; k < impl->dirs.size(); ++k) {
    PointId v = impl->dirs[k];
    bool found = false;
    for (unsigned i = 0; i < d; ++i) {
      const Elem c = static_cast<Elem>(v % q);
      v /= q;
      impl->dir_coords[k * d + i] = c;
      if (!found && c != 0) {
        impl->dir_pivot[k] = i;
        found = true;
      }
    }
  }

  if (impl->counts.points_total <= kOrdinalTableMax) {
    impl->ordinal_of.assign(impl->counts.points_total, 0);
    for (PointId v = 1; v < impl->counts.points_total; ++v) {
      const PointId canon = canonical_packed(*impl, v);
      const auto it = std::lower_bound(impl->dirs.begin(), impl->dirs.end(), canon);
      impl->ordinal_of[v] = static_cast<std::uint32_t>(it - impl->dirs.begin());
    }
  }
  impl_ = std::move(impl);
}

PointId Space::pack(std::span<const Elem> coords) const {
  if (!valid_point(coords)) throw GeometryError("point has wrong arity or invalid coordinate");
  PointId id = 0;
  for (std::size_t i = coords.size(); i-- > 0;) id = id * q() + coords[i];
  return id;
}

Coords Space::unpack(PointId id) const {
  if (id >= num_points()) throw GeometryError("packed point out of range");
  Coords out(dim());
  for (unsigned i = 0; i < dim(); ++i) {
    out[i] = static_cast<Elem>(id % q());
    id /= q();
  }
  return out;
}

Elem Space::coord(PointId id, unsigned i) const {
  return static_cast<Elem>((id / impl_->pow_q[i]) % q());
}

bool Space::valid_point(std::span<const Elem> coords) const {
  if (coords.size() != dim()) return false;
  return std::all_of(coords.begin(), coords.end(), [&](Elem c) { return c < q(); });
}

PointId Space::sub(PointId x, PointId y) const {
  const Field& f = field();
  PointId out = 0;
  for (unsigned i = dim(); i-- > 0;) {
    const Elem xi = static_cast<Elem>((x / impl_->pow_q[i]) % q());
    const Elem yi = static_cast<Elem>((y / impl_->pow_q[i]) % q());
    out = out * q() + f.sub(xi, yi);
  }
  return out;
}

PointId Space::canonical_packed(const Impl& impl, PointId vec) {
  const Field& f = impl.field;
  const unsigned d = impl.d;
  const std::uint32_t q = f.q();
  Elem coords[64]{};
  PointId v = vec;
  unsigned pivot = d;
  for (unsigned i = 0; i < d; ++i) {
    coords[i] = static_cast<Elem>(v % q);
    v /= q;
    if (pivot == d && coords[i] != 0) pivot = i;
  }
  const Elem s = f.inv(coords[pivot]);
  PointId out = 0;
  for (unsigned i = d; i-- > 0;) out = out * q + f.mul(coords[i], s);
  return out;
}

Direction Space::canonical_direction(std::span<const Elem> v) const {
  if (!valid_point(v)) throw GeometryError("vector has wrong arity or invalid coordinate");
  const auto nz = std::find_if(v.begin(), v.end(), [](Elem c) { return c != 0; });
  if (nz == v.end()) throw GeometryError("zero vector has no direction");
  const Field& f = field();
  const Elem s = f.inv(*nz);
  Direction dir;
  dir.pivot = static_cast<std::size_t>(nz - v.begin());
  dir.vec.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) dir.vec[i] = f.mul(v[i], s);
  return dir;
}

Line Space::line_through(std::span<const Elem> p1, std::span<const Elem> p2) const {
  if (!valid_point(p1) || !valid_point(p2)) throw GeometryError("invalid point");
  if (std::equal(p1.begin(), p1.end(), p2.begin())) throw GeometryError("points coincide");
  const Field& f = field();
  Coords diff(dim());
  for (unsigned i = 0; i < dim(); ++i) diff[i] = f.sub(p2[i], p1[i]);
  Line line;
  line.dir = canonical_direction(diff);
  // Slide p1 along the line until its pivot coordinate is zero.
  const Elem t = p1[line.dir.pivot];
  line.base.resize(dim());
  for (unsigned i = 0; i < dim(); ++i) line.base[i] = f.sub(p1[i], f.mul(t, line.dir.vec[i]));
  return line;
}

std::vector<PointId> Space::line_points(const Line& line) const {
  if (!valid_point(line.dir.vec) || !valid_point(line.base) || line.dir.pivot >= dim() ||
      line.dir.vec[line.dir.pivot] != 1 || line.base[line.dir.pivot] != 0)
    throw GeometryError("line is not in canonical form");
  const Field& f = field();
  std::vector<PointId> out;
  out.reserve(q());
  Coords x(dim());
  for (Elem t = 0; t < q(); ++t) {
    for (unsigned i = 0; i < dim(); ++i) x[i] = f.add(line.base[i], f.mul(t, line.dir.vec[i]));
    out.push_back(pack(x));
  }
  return out;
}

bool Space::contains(const Line& line, std::span<const Elem> x) const {
  const Field& f = field();
  const Elem t = x[line.dir.pivot];
  for (unsigned i = 0; i < dim(); ++i)
    if (x[i] != f.add(line.base[i], f.mul(t, line.dir.vec[i]))) return false;
  return true;
}

std::vector<Line> Space::lines_through(std::span<const Elem> y) const {
  const PointId id = pack(y);
  std::vector<Line> out;
  out.reserve(impl_->dirs.size());
  for (std::uint32_t k = 0; k < impl_->dirs.size(); ++k) out.push_back(line(line_key(id, k)));
  return out;
}

void Space::for_each_line(const std::function<void(const LineKey&)>& fn) const {
  const unsigned d = dim();
  for (std::uint32_t k = 0; k < impl_->dirs.size(); ++k) {
    const unsigned j = impl_->dir_pivot[k];
    // Bases have coordinate j zero; inserting a zero digit keeps packed order.
    const PointId low = impl_->pow_q[j];
    const PointId count = impl_->pow_q[d - 1];
    for (PointId n = 0; n < count; ++n) {
      const PointId base = (n % low) + (n / low) * low * q();
      fn(LineKey{impl_->dirs[k], base});
    }
  }
}

std::vector<Line> Space::enumerate_lines() const {
  if (num_lines() > kMaxLines)
    throw GeometryError("line count " + std::to_string(num_lines()) + " exceeds cap 10^8");
  std::vector<Line> out;
  out.reserve(num_lines());
  for_each_line([&](const LineKey& k) { out.push_back(line(k)); });
  return out;
}

LineKey Space::key(const Line& l) const { return LineKey{pack(l.dir.vec), pack(l.base)}; }

Line Space::line(const LineKey& key) const {
  Line l;
  l.dir.vec = unpack(key.dir);
  l.dir.pivot = static_cast<std::size_t>(
      std::find_if(l.dir.vec.begin(), l.dir.vec.end(), [](Elem c) { return c != 0; }) -
      l.dir.vec.begin());
  l.base = unpack(key.base);
  return l;
}

std::uint32_t Space::direction_ordinal(PointId vec) const {
  if (!impl_->ordinal_of.empty()) return impl_->ordinal_of[vec];
  const PointId canon = canonical_packed(*impl_, vec);
  return static_cast<std::uint32_t>(
      std::lower_bound(impl_->dirs.begin(), impl_->dirs.end(), canon) - impl_->dirs.begin());
}

LineKey Space::line_key(PointId x, std::uint32_t k) const {
  const Field& f = field();
  const unsigned d = dim();
  const Elem* dc = impl_->dir_coords.data() + std::size_t{k} * d;
  const Elem t = coord(x, impl_->dir_pivot[k]);
  PointId base = 0;
  for (unsigned i = d; i-- > 0;) base = base * q() + f.sub(coord(x, i), f.mul(t, dc[i]));
  return LineKey{impl_->dirs[k], base};
}

LineKey Space::line_key(PointId x, PointId y) const {
  if (x == y) throw GeometryError("points coincide");
  return line_key(x, direction_ordinal(sub(y, x)));
}

}  // namespace radproj
