#include "radproj/gf.hpp"

#include <algorithm>
#include <cassert>

namespace radproj {

namespace {

using Poly = std::vector<std::uint32_t>;

Poly digits_of(Elem a, std::uint32_t p, std::uint32_t e) {
  Poly out(e, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    out[i] = a % p;
    a /= p;
  }
  return out;
}

Elem index_of(const Poly& digits, std::uint32_t p) {
  Elem v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) v = v * p + digits[i];
  return v;
}

// Remainder of a modulo the monic polynomial m over F_p. Both low degree first.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - dm;
      for (std::size_t i = 0; i <= dm; ++i) {
        const std::uint64_t sub = (lead * m[i]) % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

bool all_zero(const Poly& a) {
  return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p) {
  if (poly.size() < 2 || poly.back() != 1) return false;
  const std::size_t deg = poly.size() - 1;
  if (deg == 1) return true;
  const Poly f(poly.begin(), poly.end());
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    // Monic divisors of degree k: the k low coefficients range over F_p^k.
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
      Poly g(k + 1, 0);
      std::uint64_t r = n;
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = static_cast<std::uint32_t>(r % p);
        r /= p;
      }
      g[k] = 1;
      if (all_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t e) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  // The constant term is the most significant digit of n, so increasing n walks
  // the candidates in low-degree-first lexicographic order.
  for (std::uint64_t n = 0; n < count; ++n) {
    Poly f(e + 1, 0);
    std::uint64_t r = n;
    for (std::uint32_t i = 0; i < e; ++i) {
      f[e - 1 - i] = static_cast<std::uint32_t>(r % p);
      r /= p;
    }
    f[e] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial of degree " + std::to_string(e) +
                         " over F_" + std::to_string(p));
}

Field Field::create(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw FieldError("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxFieldOrder)
      throw FieldError("field order " + std::to_string(p) + "^" + std::to_string(e) +
                       " exceeds the cap 2^20");
  }

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->e = e;
  impl->q = static_cast<std::uint32_t>(q);
  impl->modulus = e == 1 ? Poly{0, 1} : smallest_irreducible(p, e);

  if (impl->q <= kTableFieldOrder) {
    const std::uint32_t n = impl->q;
    impl->add_tab.resize(std::size_t{n} * n);
    impl->mul_tab.resize(std::size_t{n} * n);
    impl->neg_tab.resize(n);
    impl->inv_tab.resize(n, 0);
    for (Elem a = 0; a < n; ++a) {
      impl->neg_tab[a] = static_cast<std::uint16_t>(poly_neg(*impl, a));
      for (Elem b = 0; b < n; ++b) {
        impl->add_tab[a * n + b] = static_cast<std::uint16_t>(poly_add(*impl, a, b));
        const Elem m = poly_mul(*impl, a, b);
        impl->mul_tab[a * n + b] = static_cast<std::uint16_t>(m);
        if (m == 1) impl->inv_tab[a] = static_cast<std::uint16_t>(b);
      }
    }
    impl->tabled = true;
  }
  return Field(std::move(impl));
}

std::string Field::label() const { return std::to_string(p()) + "^" + std::to_string(e()); }

Elem Field::poly_add(const Impl& f, Elem a, Elem b) {
  if (f.e == 1) return (a + b) % f.p;
  Elem out = 0, scale = 1;
  for (std::uint32_t i = 0; i < f.e; ++i) {
    out += ((a % f.p + b % f.p) % f.p) * scale;
    a /= f.p;
    b /= f.p;
    scale *= f.p;
  }
  return out;
}

Elem Field::poly_neg(const Impl& f, Elem a) {
  if (f.e == 1) return a == 0 ? 0 : f.p - a;
  Elem out = 0, scale = 1;
  for (std::uint32_t i = 0; i < f.e; ++i) {
    out += ((f.p - a % f.p) % f.p) * scale;
    a /= f.p;
    scale *= f.p;
  }
  return out;
}

Elem Field::poly_mul(const Impl& f, Elem a, Elem b) {
  if (f.e == 1) return static_cast<Elem>((std::uint64_t{a} * b) % f.p);
  const Poly x = digits_of(a, f.p, f.e);
  const Poly y = digits_of(b, f.p, f.e);
  Poly prod(2 * f.e - 1, 0);
  for (std::uint32_t i = 0; i < f.e; ++i) {
    if (x[i] == 0) continue;
    for (std::uint32_t j = 0; j < f.e; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{x[i]} * y[j]) % f.p);
  }
  Poly r = poly_mod(std::move(prod), f.modulus, f.p);
  r.resize(f.e, 0);
  return index_of(r, f.p);
}

Elem Field::pow(const Impl& f, Elem a, std::uint64_t k) {
  Elem result = 1;
  while (k > 0) {
    if (k & 1) result = poly_mul(f, result, a);
    a = poly_mul(f, a, a);
    k >>= 1;
  }
  return result;
}

Elem Field::slow_inv(const Impl& f, Elem a) {
  // a^(q-2) = a^-1 in the multiplicative group of order q-1.
  return pow(f, a, f.q - 2);
}

Elem Field::add(Elem a, Elem b) const {
  const Impl& f = *impl_;
  if (f.tabled) return f.add_tab[a * f.q + b];
  return poly_add(f, a, b);
}

Elem Field::neg(Elem a) const {
  const Impl& f = *impl_;
  if (f.tabled) return f.neg_tab[a];
  return poly_neg(f, a);
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
  const Impl& f = *impl_;
  if (f.tabled) return f.mul_tab[a * f.q + b];
  return poly_mul(f, a, b);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw FieldError("inverse of zero");
  const Impl& f = *impl_;
  if (f.tabled) return f.inv_tab[a];
  return slow_inv(f, a);
}

Elem Field::div(Elem a, Elem b) const {
  if (b == 0) throw FieldError("division by zero");
  return mul(a, inv(b));
}

Elem Field::apply(FieldOp op, Elem a, Elem b) const {
  if (!valid(a) || ((op != FieldOp::neg && op != FieldOp::inv) && !valid(b)))
    throw FieldError("operand outside [0, q)");
  switch (op) {
    case FieldOp::add: return add(a, b);
    case FieldOp::sub: return sub(a, b);
    case FieldOp::mul: return mul(a, b);
    case FieldOp::div: return div(a, b);
    case FieldOp::neg: return neg(a);
    case FieldOp::inv: return inv(a);
  }
  assert(false);
  return 0;
}

std::vector<Elem> Field::prime_subfield() const {
  std::vector<Elem> out(p());
  for (Elem i = 0; i < p(); ++i) out[i] = i;
  return out;
}

}  // namespace radproj
