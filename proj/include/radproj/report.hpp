#pragma once

// JSON / text serialization of fields, points, lines, point sets and reports.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "radproj/theorems.hpp"

namespace radproj {

using Json = nlohmann::ordered_json;

/// {"label": "p^e", "p", "e", "q", "modulus": [c0, ..., ce]}
Json to_json(const Field& field);
Json to_json(const Line& line);
Json point_json(const Space& space, PointId id);

/// Fields in schema order: theorem, q, d, e, family, sizeE, M, C,
/// hypotheses_met, measured, bound, holds, seed, runtime_ms, then bound_exact
/// and note. Non-integer rationals are written as "n/m" strings; an enclosed
/// bound is written as its upper end rounded up to a double.
Json to_json(const BoundReport& report, bool with_timing = true);

/// Smallest double >= r.
double upper_double(const Rational& r);

/// {"field": {...}, "d": d, "points": [sorted packed indices]}
Json pointset_to_json(const PointSet& set);
PointSet pointset_from_json(const Json& doc);

/// Text interchange: a "# field=p^e d=N" header, then one point per line as
/// space-separated field indices.
void write_pointset_text(std::ostream& out, const PointSet& set);
PointSet read_pointset_text(std::istream& in);

/// Reads either format, chosen by the first non-space character.
PointSet read_pointset(std::istream& in);

}  // namespace radproj
