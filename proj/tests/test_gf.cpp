#include <doctest.h>

#include <algorithm>
#include <set>

#include "radproj/gf.hpp"

using namespace radproj;

TEST_SUITE("gf") {

TEST_CASE("prime field construction") {
  const Field f = Field::create(3);
  CHECK(f.q() == 3);
  CHECK(f.is_prime_field());
  CHECK(f.label() == "3^1");
  CHECK(f.add(2, 2) == 1);
}

TEST_CASE("F_4 modulus and multiplication") {
  const Field f = Field::create(2, 2);
  const std::vector<std::uint32_t> mod(f.modulus().begin(), f.modulus().end());
  CHECK(mod == std::vector<std::uint32_t>{1, 1, 1});  // x^2 + x + 1
  CHECK(f.mul(2, 2) == 3);
  CHECK(f.prime_subfield() == std::vector<Elem>{0, 1});
}

TEST_CASE("inverse in F_5") {
  const Field f = Field::create(5);
  CHECK(f.inv(2) == 3);
  CHECK(f.apply(FieldOp::inv, 2) == 3);
  CHECK(f.prime_subfield() == std::vector<Elem>{0, 1, 2, 3, 4});
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Field::create(4), FieldError);
  CHECK_THROWS_AS(Field::create(1), FieldError);
  CHECK_THROWS_AS(Field::create(3, 0), FieldError);
  CHECK_THROWS_AS(Field::create(2, 21), FieldError);  // 2^21 > cap
  CHECK_NOTHROW(Field::create(2, 20));
}

TEST_CASE("division by zero") {
  const Field f = Field::create(3, 2);
  CHECK_THROWS_AS(f.inv(0), FieldError);
  CHECK_THROWS_AS(f.div(1, 0), FieldError);
  CHECK_THROWS_AS(f.apply(FieldOp::add, 9, 0), FieldError);
}

namespace {

using Poly = std::vector<std::uint32_t>;

// Monic polynomials of degree e over F_p, compared coefficient by coefficient from x^0 up.
std::vector<Poly> monic(std::uint32_t p, std::uint32_t e) {
  std::vector<Poly> out;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < e; ++i) total *= p;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Poly poly(e + 1, 0);
    std::uint64_t v = idx;
    for (std::uint32_t i = 0; i < e; ++i, v /= p) poly[i] = v % p;
    poly[e] = 1;
    out.push_back(poly);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Poly times(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return c;
}

}  // namespace

TEST_CASE("smallest irreducible matches a product sieve") {
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}, {2, 5}}) {
    CAPTURE(p);
    CAPTURE(e);
    std::set<Poly> reducible;
    for (std::uint32_t i = 1; i <= e / 2; ++i)
      for (const Poly& a : monic(p, i))
        for (const Poly& b : monic(p, e - i)) reducible.insert(times(a, b, p));
    Poly first;
    for (const Poly& cand : monic(p, e)) {
      CHECK(is_irreducible(cand, p) == !reducible.count(cand));
      if (first.empty() && !reducible.count(cand)) first = cand;
    }
    CHECK(smallest_irreducible(p, e) == first);
    const Field f = Field::create(p, e);
    CHECK(Poly(f.modulus().begin(), f.modulus().end()) == first);
  }
  CHECK(smallest_irreducible(3, 2) == Poly{1, 0, 1});  // x^2 + 1
}

TEST_CASE("irreducibility oracle: no roots for quadratics and cubics") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b) {
        const std::vector<std::uint32_t> poly{a, b, 1};
        bool has_root = false;
        for (std::uint32_t x = 0; x < p; ++x) has_root |= (a + b * x + x * x) % p == 0;
        CHECK(is_irreducible(poly, p) == !has_root);
      }
  }
}

TEST_CASE("field axioms exhaustively for q <= 49") {
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4}, {17, 1},
           {19, 1}, {23, 1}, {5, 2}, {3, 3}, {29, 1}, {31, 1}, {2, 5}, {37, 1}, {41, 1}, {43, 1}, {47, 1}, {7, 2}}) {
    const Field f = Field::create(p, e);
    const Elem q = f.q();
    CAPTURE(f.label());
    bool ok = true;
    for (Elem a = 0; a < q && ok; ++a) {
      ok &= f.add(a, 0) == a && f.mul(a, 1) == a && f.add(a, f.neg(a)) == 0;
      if (a != 0) ok &= f.mul(a, f.inv(a)) == 1;
      for (Elem b = 0; b < q && ok; ++b) {
        ok &= f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
        ok &= f.sub(f.add(a, b), b) == a;
        if (b != 0) ok &= f.mul(f.div(a, b), b) == a;
        for (Elem c = 0; c < q && ok; ++c) {
          ok &= f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
          ok &= f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
          ok &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
        }
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("table and polynomial arithmetic agree above the table cap") {
  // F_3^6 = 729 > 256 runs untabled; its prime subfield must behave like F_3.
  const Field big = Field::create(3, 6);
  const Field small = Field::create(3);
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) {
      CHECK(big.add(a, b) == small.add(a, b));
      CHECK(big.mul(a, b) == small.mul(a, b));
    }
  for (Elem a = 1; a < big.q(); a += 7) CHECK(big.mul(a, big.inv(a)) == 1);
}

TEST_CASE("prime subfield closed under add and mul") {
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {3, 2}, {5, 2}, {2, 3}, {7, 2}}) {
    const Field f = Field::create(p, e);
    const auto sub = f.prime_subfield();
    for (Elem a : sub)
      for (Elem b : sub) {
        CHECK(f.add(a, b) < p);
        CHECK(f.mul(a, b) < p);
      }
  }
}

TEST_CASE("deterministic construction") {
  const Field a = Field::create(5, 3), b = Field::create(5, 3);
  CHECK(std::vector<std::uint32_t>(a.modulus().begin(), a.modulus().end()) ==
        std::vector<std::uint32_t>(b.modulus().begin(), b.modulus().end()));
  CHECK(a == b);
}

}
