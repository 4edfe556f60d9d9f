#include <doctest.h>

#include "radproj/constructions.hpp"

using namespace radproj;

TEST_SUITE("constructions") {

TEST_CASE("affine subspaces") {
  const Space s(Field::create(3), 2);
  CHECK(affine_subspace_set(s, 1, Coords{0, 0}) == PointSet::from_coords(s, {{0, 0}, {1, 0}, {2, 0}}));
  CHECK(affine_subspace_set(s, 2, Coords{0, 0}) == PointSet::full(s));
  const Space s3(Field::create(5), 3);
  const PointSet plane = affine_subspace_set(s3, 2, Coords{0, 0, 1});
  CHECK(plane.size() == 25);
  for (const Coords& c : plane.coords()) CHECK(c[2] == 1);
  CHECK_THROWS(affine_subspace_set(s, 3, Coords{0, 0}));
}

TEST_CASE("subspace projection sizes") {
  for (auto [p, d, k] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{{3, 3, 1}, {3, 3, 2}, {5, 2, 1}, {2, 4, 2}}) {
    const Space s(Field::create(p), d);
    const PointSet e = affine_subspace_set(s, k, Coords(d, 0));
    std::uint64_t qk = 1;
    for (unsigned i = 0; i < k; ++i) qk *= p;
    for (PointId y = 0; y < s.num_points(); ++y) {
      const std::size_t n = projection_size(e, y);
      if (e.contains(y)) CHECK(n <= (qk - 1) / (p - 1));
      else CHECK(n >= qk / p);
    }
  }
}

TEST_CASE("subfield subplane sees p + 1 lines everywhere") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const PointSet e = subfield_subplane(p);
    CHECK(e.size() == p * p);
    CHECK(e.space().q() == p * p);
    for (PointId y : e.members()) CHECK(projection_size(e, y) == p + 1);
    CHECK(IncidenceLedger(e).max_e() == p);
  }
  const Space f9(Field::create(3, 2), 2);
  const std::vector<Elem> sub = f9.field().prime_subfield();
  CHECK(product_set(f9, sub, sub) == subfield_subplane(3));
}

TEST_CASE("concurrent lines") {
  const Space s(Field::create(3), 2);
  CHECK(concurrent_lines_set(s, 1, Coords{0, 0}, true).size() == 3);
  CHECK(concurrent_lines_set(s, 4, Coords{0, 0}, true) == PointSet::full(s));
  const Space s5(Field::create(5), 2);
  const PointSet two = concurrent_lines_set(s5, 2, Coords{0, 0}, true);
  CHECK(projection_size(two, 0) == 2);
  for (PointId y : two.members()) CHECK(projection_size(two, y) <= 2 + 4 * 1);
  const PointSet hollow = concurrent_lines_set(s5, 2, Coords{0, 0}, false);
  CHECK(hollow.size() == 8);
  CHECK_FALSE(hollow.contains(0));
  CHECK_THROWS(concurrent_lines_set(s5, 7, Coords{0, 0}, true));
}

TEST_CASE("random sets") {
  const Space s(Field::create(7), 2);
  CHECK(random_set(s, 49, 123) == PointSet::full(s));
  CHECK(random_set(s, 0, 5).empty());
  CHECK(random_set(s, 20, 99) == random_set(s, 20, 99));
  CHECK_FALSE(random_set(s, 20, 99) == random_set(s, 20, 100));
  // 15 is the largest size with at most 3 points per line in the plane of order 7.
  const PointSet capped = random_set(s, 15, 1, 3);
  CHECK(capped.size() == 15);
  CHECK(IncidenceLedger(capped).max_e() <= 3);
  CHECK_THROWS_AS(random_set(s, 16, 1, 3), GenerationError);
  CHECK_THROWS_AS(random_set(s, 50, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_set(Space(Field::create(3), 2), 7, 1, 1), GenerationError);
}

TEST_CASE("product sets") {
  const Space s(Field::create(3), 2);
  const std::vector<Elem> all{0, 1, 2};
  CHECK(product_set(s, all, all) == PointSet::full(s));
  CHECK(product_set(s, std::vector<Elem>{0, 1}, std::vector<Elem>{0}) ==
        PointSet::from_coords(s, {{0, 0}, {1, 0}}));
}

TEST_CASE("family specs") {
  const FamilySpec r = FamilySpec::parse("random:n=12,cap=3");
  CHECK(r.kind == FamilyKind::random);
  CHECK(r.n == 12);
  CHECK(r.cap == 3u);
  CHECK(r.describe() == "random:n=12,cap=3");
  CHECK(FamilySpec::parse(r.describe()).describe() == r.describe());
  for (const char* text : {"subspace:k=2", "subplane", "collinear:n=4", "concurrent:m=2,apex=0", "product:a=3,b=2"})
    CHECK(FamilySpec::parse(FamilySpec::parse(text).describe()).describe() == FamilySpec::parse(text).describe());
  CHECK_THROWS(FamilySpec::parse("banana"));
  CHECK_THROWS(FamilySpec::parse("random:q=3"));
  const Space s(Field::create(3), 2);
  CHECK_THROWS(FamilySpec::parse("random:n=10").validate(s));
  CHECK_THROWS(FamilySpec::parse("subplane").validate(s));
  CHECK(generate(s, FamilySpec::parse("collinear:n=2"), 0) == PointSet::from_coords(s, {{0, 0}, {1, 0}}));
  CHECK(generate(Space(Field::create(2, 2), 2), FamilySpec::parse("subplane"), 0) == subfield_subplane(2));
}

}
