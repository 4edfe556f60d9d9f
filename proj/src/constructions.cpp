#include "radproj/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace radproj {

PointSet affine_subspace_set(const Space& space, unsigned k, std::span<const Elem> shift) {
  if (k > space.dim())
    throw std::invalid_argument("subspace dimension " + std::to_string(k) + " exceeds d = " +
                                std::to_string(space.dim()));
  if (!space.valid_point(shift)) throw GeometryError("invalid shift");
  const Field& f = space.field();
  std::uint64_t count = 1;
  for (unsigned i = 0; i < k; ++i) count *= space.q();
  std::vector<PointId> ids;
  ids.reserve(count);
  Coords x(space.dim());
  for (std::uint64_t n = 0; n < count; ++n) {
    std::uint64_t r = n;
    for (unsigned i = 0; i < space.dim(); ++i) {
      Elem c = 0;
      if (i < k) {
        c = static_cast<Elem>(r % space.q());
        r /= space.q();
      }
      x[i] = f.add(c, shift[i]);
    }
    ids.push_back(space.pack(x));
  }
  return PointSet(space, std::move(ids));
}

PointSet subfield_subplane(std::uint32_t p) {
  const Space space(Field::create(p, 2), 2);
  std::vector<PointId> ids;
  ids.reserve(std::size_t{p} * p);
  for (Elem a : space.field().prime_subfield())
    for (Elem b : space.field().prime_subfield()) ids.push_back(space.pack(Coords{a, b}));
  return PointSet(space, std::move(ids));
}

PointSet concurrent_lines_set(const Space& space, std::uint64_t m, std::span<const Elem> apex,
                              bool include_apex) {
  if (m < 1 || m > space.qbinom())
    throw std::invalid_argument("line count m = " + std::to_string(m) + " outside [1, " +
                                std::to_string(space.qbinom()) + "]");
  const std::vector<Line> pencil = space.lines_through(apex);
  std::vector<PointId> ids;
  for (std::uint64_t i = 0; i < m; ++i) {
    const auto pts = space.line_points(pencil[i]);
    ids.insert(ids.end(), pts.begin(), pts.end());
  }
  if (!include_apex) {
    const PointId a = space.pack(apex);
    ids.erase(std::remove(ids.begin(), ids.end(), a), ids.end());
  }
  return PointSet(space, std::move(ids));
}

PointSet collinear_set(const Space& space, std::uint64_t n) {
  if (n > space.q())
    throw std::invalid_argument("a line holds only " + std::to_string(space.q()) + " points");
  std::vector<PointId> ids(n);
  for (std::uint64_t t = 0; t < n; ++t) ids[t] = t;
  return PointSet(space, std::move(ids));
}

namespace {

std::vector<PointId> floyd_sample(std::uint64_t universe, std::uint64_t n, std::mt19937_64& rng) {
  std::unordered_set<PointId> chosen;
  std::vector<PointId> out;
  out.reserve(n);
  for (std::uint64_t j = universe - n; j < universe; ++j) {
    const PointId t = std::uniform_int_distribution<PointId>(0, j)(rng);
    const PointId pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    out.push_back(pick);
  }
  return out;
}

}  // namespace

PointSet random_set(const Space& space, std::uint64_t n, std::uint64_t seed,
                    std::optional<std::uint32_t> max_collinear) {
  const std::uint64_t universe = space.num_points();
  if (n > universe)
    throw std::invalid_argument("cannot draw " + std::to_string(n) + " points from " +
                                std::to_string(universe));
  std::mt19937_64 rng(seed);
  if (!max_collinear || *max_collinear >= std::min<std::uint64_t>(n, space.q()))
    return PointSet(space, floyd_sample(universe, n, rng));

  const std::uint32_t cap = *max_collinear;
  const auto ndir = static_cast<std::uint32_t>(space.qbinom());
  std::vector<PointId> order(universe);
  std::iota(order.begin(), order.end(), PointId{0});
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    std::shuffle(order.begin(), order.end(), rng);
    std::unordered_map<LineKey, std::uint32_t, LineKeyHash> load;
    std::vector<PointId> picked;
    picked.reserve(n);
    std::vector<LineKey> keys(ndir);
    for (PointId x : order) {
      if (picked.size() == n) break;
      bool fits = true;
      for (std::uint32_t k = 0; k < ndir && fits; ++k) {
        keys[k] = space.line_key(x, k);
        const auto it = load.find(keys[k]);
        fits = it == load.end() || it->second < cap;
      }
      if (!fits) continue;
      for (const LineKey& key : keys) ++load[key];
      picked.push_back(x);
    }
    if (picked.size() == n) return PointSet(space, std::move(picked));
  }
  throw GenerationError("no " + std::to_string(n) + "-point set with at most " +
                        std::to_string(cap) + " points per line after " +
                        std::to_string(kMaxRejections) + " attempts");
}

PointSet product_set(const Space& space, std::span<const Elem> a, std::span<const Elem> b) {
  if (space.dim() != 2) throw std::invalid_argument("product sets live in the plane");
  if (a.empty() || b.empty()) throw std::invalid_argument("product factors must be nonempty");
  std::vector<PointId> ids;
  ids.reserve(a.size() * b.size());
  for (Elem x : a)
    for (Elem y : b) ids.push_back(space.pack(Coords{x, y}));
  return PointSet(space, std::move(ids));
}

FamilySpec FamilySpec::parse(std::string_view text) {
  FamilySpec spec;
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  if (kind == "subspace") spec.kind = FamilyKind::subspace;
  else if (kind == "subplane") spec.kind = FamilyKind::subplane;
  else if (kind == "collinear") spec.kind = FamilyKind::collinear;
  else if (kind == "concurrent") spec.kind = FamilyKind::concurrent_lines;
  else if (kind == "random") spec.kind = FamilyKind::random;
  else if (kind == "product") spec.kind = FamilyKind::product;
  else throw std::invalid_argument("unknown family '" + std::string(kind) + "'");

  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("family parameter '" + std::string(item) + "' lacks '='");
    const std::string key(item.substr(0, eq));
    const std::string value(item.substr(eq + 1));
    std::uint64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("family parameter " + key + " needs a non-negative integer");
    }
    if (key == "k") spec.k = static_cast<unsigned>(v);
    else if (key == "n") spec.n = v;
    else if (key == "m") spec.m = v;
    else if (key == "cap") spec.cap = static_cast<std::uint32_t>(v);
    else if (key == "a") spec.a = static_cast<std::uint32_t>(v);
    else if (key == "b") spec.b = static_cast<std::uint32_t>(v);
    else if (key == "apex") spec.include_apex = v != 0;
    else throw std::invalid_argument("unknown family parameter '" + key + "'");
  }
  return spec;
}

std::string FamilySpec::describe() const {
  switch (kind) {
    case FamilyKind::subspace: return "subspace:k=" + std::to_string(k);
    case FamilyKind::subplane: return "subplane";
    case FamilyKind::collinear: return "collinear:n=" + std::to_string(n);
    case FamilyKind::concurrent_lines:
      return "concurrent:m=" + std::to_string(m) + ",apex=" + (include_apex ? "1" : "0");
    case FamilyKind::random:
      return "random:n=" + std::to_string(n) + (cap ? ",cap=" + std::to_string(*cap) : "");
    case FamilyKind::product: return "product:a=" + std::to_string(a) + ",b=" + std::to_string(b);
  }
  return "unknown";
}

void FamilySpec::validate(const Space& space) const {
  switch (kind) {
    case FamilyKind::subspace:
      if (k > space.dim()) throw std::invalid_argument(describe() + ": k exceeds d");
      break;
    case FamilyKind::subplane:
      if (space.dim() != 2 || space.field().e() != 2)
        throw std::invalid_argument("subplane needs d = 2 over F_{p^2}");
      break;
    case FamilyKind::collinear:
      if (n > space.q()) throw std::invalid_argument(describe() + ": n exceeds q");
      break;
    case FamilyKind::concurrent_lines:
      if (m < 1 || m > space.qbinom()) throw std::invalid_argument(describe() + ": m out of range");
      break;
    case FamilyKind::random:
      if (n > space.num_points()) throw std::invalid_argument(describe() + ": n exceeds q^d");
      break;
    case FamilyKind::product:
      if (space.dim() != 2 || a < 1 || b < 1 || a > space.q() || b > space.q())
        throw std::invalid_argument(describe() + ": needs d = 2 and 1 <= a, b <= q");
      break;
  }
}

PointSet generate(const Space& space, const FamilySpec& spec, std::uint64_t seed) {
  spec.validate(space);
  const Coords origin(space.dim(), 0);
  switch (spec.kind) {
    case FamilyKind::subspace: return affine_subspace_set(space, spec.k, origin);
    case FamilyKind::subplane: return subfield_subplane(space.field().p());
    case FamilyKind::collinear: return collinear_set(space, spec.n);
    case FamilyKind::concurrent_lines:
      return concurrent_lines_set(space, spec.m, origin, spec.include_apex);
    case FamilyKind::random: return random_set(space, spec.n, seed, spec.cap);
    case FamilyKind::product: {
      std::vector<Elem> a(spec.a), b(spec.b);
      std::iota(a.begin(), a.end(), Elem{0});
      std::iota(b.begin(), b.end(), Elem{0});
      return product_set(space, a, b);
    }
  }
  throw std::logic_error("unhandled family");
}

}  // namespace radproj
