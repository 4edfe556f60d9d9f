#include "radproj/report.hpp"

#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace radproj {

Json to_json(const Field& field) {
  Json j;
  j["label"] = field.label();
  j["p"] = field.p();
  j["e"] = field.e();
  j["q"] = field.q();
  j["modulus"] = std::vector<std::uint32_t>(field.modulus().begin(), field.modulus().end());
  return j;
}

Json to_json(const Line& line) {
  Json j;
  j["dir"] = line.dir.vec;
  j["base"] = line.base;
  return j;
}

Json point_json(const Space& space, PointId id) { return Json(space.unpack(id)); }

double upper_double(const Rational& r) {
  double v = to_double(r);
  if (std::isfinite(v) && Rational(v) < r) v = std::nextafter(v, INFINITY);
  return v;
}

namespace {

Json rational_json(const Rational& r) {
  if (denominator(r) == 1 && abs(numerator(r)) < BigInt(1) << 62)
    return Json(numerator(r).convert_to<std::int64_t>());
  return Json(to_string(r));
}

std::string interval_text(const Interval& i) {
  if (i.exact()) return to_string(i.lo);
  std::ostringstream os;
  os.precision(17);
  os << "[" << to_double(i.lo) << ", " << upper_double(i.hi) << "]";
  return os.str();
}

}  // namespace

Json to_json(const BoundReport& r, bool with_timing) {
  Json j;
  j["theorem"] = r.theorem;
  j["q"] = r.q;
  j["d"] = r.d;
  j["e"] = r.e;
  j["family"] = r.family;
  j["sizeE"] = r.size_e;
  j["M"] = r.M ? rational_json(*r.M) : Json(nullptr);
  j["C"] = r.C ? rational_json(*r.C) : Json(nullptr);
  j["hypotheses_met"] = r.hypotheses_met;
  j["measured"] = r.hypotheses_met ? rational_json(r.measured) : Json(nullptr);
  j["bound"] = r.hypotheses_met ? Json(upper_double(r.bound.hi)) : Json(nullptr);
  j["holds"] = to_string(r.holds);
  j["seed"] = r.seed;
  j["runtime_ms"] = with_timing ? r.runtime_ms : 0.0;
  j["bound_exact"] = r.hypotheses_met ? Json(interval_text(r.bound)) : Json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json pointset_to_json(const PointSet& set) {
  Json j;
  j["field"] = to_json(set.space().field());
  j["d"] = set.space().dim();
  j["points"] = std::vector<PointId>(set.members().begin(), set.members().end());
  return j;
}

PointSet pointset_from_json(const Json& doc) {
  const Json& f = doc.at("field");
  const Space space(Field::create(f.at("p").get<std::uint32_t>(), f.at("e").get<std::uint32_t>()),
                    doc.at("d").get<unsigned>());
  return PointSet(space, doc.at("points").get<std::vector<PointId>>());
}

void write_pointset_text(std::ostream& out, const PointSet& set) {
  out << "# field=" << set.space().field().label() << " d=" << set.space().dim() << "\n";
  for (const Coords& c : set.coords()) {
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << "\n";
  }
}

PointSet read_pointset_text(std::istream& in) {
  std::string line;
  std::optional<Space> space;
  std::vector<Coords> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto fpos = line.find("field=");
      const auto dpos = line.find("d=", fpos == std::string::npos ? 0 : fpos + 6);
      if (fpos == std::string::npos || dpos == std::string::npos) continue;
      std::uint32_t p = 0, e = 0;
      unsigned d = 0;
      char caret = 0;
      std::istringstream fs(line.substr(fpos + 6));
      fs >> p >> caret >> e;
      std::istringstream ds(line.substr(dpos + 2));
      ds >> d;
      if (caret != '^' || !fs || !ds) throw std::invalid_argument("malformed header: " + line);
      space.emplace(Field::create(p, e), d);
      continue;
    }
    if (!space) throw std::invalid_argument("point set text lacks a '# field=p^e d=N' header");
    std::istringstream ls(line);
    Coords c;
    long long v = 0;
    while (ls >> v) {
      if (v < 0) throw std::invalid_argument("negative coordinate: " + line);
      c.push_back(static_cast<Elem>(v));
    }
    pts.push_back(std::move(c));
  }
  if (!space) throw std::invalid_argument("point set text lacks a header");
  return PointSet::from_coords(*space, pts);
}

PointSet read_pointset(std::istream& in) {
  in >> std::ws;
  if (in.peek() == '{') return pointset_from_json(Json::parse(in));
  return read_pointset_text(in);
}

}  // namespace radproj
