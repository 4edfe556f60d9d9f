#include <doctest.h>

#include <random>

#include "radproj/constructions.hpp"
#include "radproj/radial.hpp"

using namespace radproj;

namespace {

Space plane(std::uint32_t p) { return Space(Field::create(p), 2); }

PointSet diagonal3() {
  return PointSet::from_coords(plane(3), {{0, 0}, {1, 1}, {2, 2}});
}

}  // namespace

TEST_SUITE("radial") {

TEST_CASE("projection sizes") {
  const PointSet e = diagonal3();
  const Space& s = e.space();
  CHECK(projection_size(e, s.pack(Coords{0, 0})) == 1);
  CHECK(projection_size(e, s.pack(Coords{1, 0})) == 3);
  const PointSet one = PointSet::from_coords(s, {{2, 1}});
  CHECK(projection_size(one, s.pack(Coords{2, 1})) == 0);
  const PointSet full = PointSet::full(s);
  for (PointId y = 0; y < s.num_points(); ++y) {
    CHECK(projection_size(full, y) == 4);
    CHECK(projection_size_oracle(full, y) == 4);
  }
  CHECK(projection_size_oracle(e, s.pack(Coords{0, 0})) == 1);
  CHECK(projection_size_oracle(e, s.pack(Coords{1, 0})) == 3);
  CHECK(projection_size_oracle(one, s.pack(Coords{2, 1})) == 0);
}

TEST_CASE("projection image") {
  const PointSet e = diagonal3();
  const Space& s = e.space();
  const PointId y = s.pack(Coords{1, 0});
  const ProjectionImage img = projection_image(e, y);
  CHECK(img.lines.size() == 3);
  for (const LineKey& k : img.lines) {
    const Line l = s.line(k);
    CHECK(s.contains(l, s.unpack(y)));
    bool hits = false;
    for (PointId x : s.line_points(l)) hits |= x != y && e.contains(x);
    CHECK(hits);
  }
}

TEST_CASE("counter cap exits early") {
  const PointSet full = PointSet::full(plane(7));
  ProjectionCounter pc(full.space());
  CHECK(pc.count(full, 0) == 8);
  CHECK(pc.count(full, 0, 2) > 2);
  CHECK(pc.count(full, 5) == 8);
}

TEST_CASE("oracle agreement on random instances") {
  std::mt19937_64 rng(3);
  for (auto [p, e, d] : std::vector<std::tuple<std::uint32_t, std::uint32_t, unsigned>>{
           {7, 1, 3}, {3, 2, 2}, {2, 1, 4}, {5, 1, 2}}) {
    const Space s(Field::create(p, e), d);
    ProjectionCounter pc(s);
    for (int i = 0; i < 1000; ++i) {
      const PointSet set = random_set(s, rng() % (s.num_points() / 2 + 1), rng());
      const PointId y = rng() % s.num_points();
      CHECK(pc.count(set, y) == projection_size_oracle(set, y));
    }
  }
}

TEST_CASE("exceptional sets") {
  const PointSet e = diagonal3();
  CHECK(exceptional_set(e, Rational(1), Cmp::at_most) == e);
  CHECK(exceptional_set(e, Rational(1), Cmp::below).size() == 0);
  const Space s = plane(3);
  CHECK(exceptional_set(PointSet(s), Rational(0), Cmp::at_most).size() == 9);
  CHECK(exceptional_set(PointSet::full(s), Rational(3), Cmp::at_most).empty());
  CHECK(exceptional_set(PointSet::full(s), Rational(4), Cmp::at_most).size() == 9);
  CHECK(max_admissible_size(Rational(3, 10), Cmp::at_most) == 0);
  CHECK(max_admissible_size(Rational(3, 10), Cmp::below) == 0);
  CHECK(max_admissible_size(Rational(3), Cmp::below) == 2);
  CHECK(max_admissible_size(Rational(0), Cmp::below) == -1);
}

TEST_CASE("exceptional sets are monotone in M") {
  std::mt19937_64 rng(17);
  const Space s = plane(7);
  for (int i = 0; i < 50; ++i) {
    const PointSet set = random_set(s, 3 + rng() % 20, rng());
    const auto profile = projection_profile(set);
    for (std::uint64_t m = 0; m < 8; ++m) {
      const PointSet small = exceptional_set(s, profile, Rational(m), Cmp::at_most);
      const PointSet big = exceptional_set(s, profile, Rational(m + 1), Cmp::at_most);
      CHECK(std::includes(big.members().begin(), big.members().end(), small.members().begin(),
                          small.members().end()));
      CHECK(small == exceptional_set(set, Rational(m), Cmp::at_most));
    }
  }
}

TEST_CASE("ledger examples") {
  const Space s = plane(3);
  const PointSet x = PointSet::from_coords(s, {{1, 2}});
  const IncidenceLedger one(x, x);
  CHECK(one.lines().size() == 4);
  for (const LineCount& c : one.lines()) {
    CHECK(c.e == 1);
    CHECK(c.t == 1);
  }
  CHECK(one.sums(LineFamily::joint).lines == 4);
  const PointSet full = PointSet::full(s);
  const IncidenceLedger both(full, full);
  CHECK(both.sums(LineFamily::all).et == 108);
  CHECK(both.sums(LineFamily::all).lines == 12);
  CHECK(both.empty_lines() == 0);
  CHECK(both.max_e() == 3);
}

TEST_CASE("ledger against brute force") {
  std::mt19937_64 rng(23);
  const Space s = plane(5);
  const auto lines = s.enumerate_lines();
  for (int i = 0; i < 100; ++i) {
    const PointSet e = random_set(s, rng() % 26, rng());
    const PointSet t = random_set(s, rng() % 26, rng());
    const IncidenceLedger ledger(e, t);
    LineSums want;
    std::uint64_t joint_et = 0;
    for (const Line& l : lines) {
      std::uint64_t ce = 0, ct = 0;
      for (PointId p : s.line_points(l)) {
        ce += e.contains(p);
        ct += t.contains(p);
      }
      want.e += ce;
      want.t += ct;
      want.e2 += ce * ce;
      want.t2 += ct * ct;
      want.et += ce * ct;
      if (ce && ct) joint_et += ce * ct;
      const LineCount* c = ledger.find(s.key(l));
      if (ce || ct) {
        REQUIRE(c != nullptr);
        CHECK(c->e == ce);
        CHECK(c->t == ct);
      } else {
        CHECK(c == nullptr);
      }
    }
    const LineSums got = ledger.sums(LineFamily::all);
    CHECK(got.e == want.e);
    CHECK(got.e == s.qbinom() * e.size());
    CHECK(got.e2 == want.e2);
    CHECK(got.t2 == want.t2);
    CHECK(got.et == want.et);
    CHECK(ledger.sums(LineFamily::joint).et == joint_et);
    CHECK(joint_et >= e.size() * t.size());
  }
}

TEST_CASE("point set validation") {
  const Space s = plane(3);
  CHECK_THROWS_AS(PointSet(s, {9}), GeometryError);
  const PointSet dup(s, {4, 1, 4});
  CHECK(dup.size() == 2);
  CHECK(dup.contains(1));
  CHECK_FALSE(dup.contains(2));
}

}
