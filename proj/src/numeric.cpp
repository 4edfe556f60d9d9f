#include "radproj/numeric.hpp"

#include <algorithm>
#include <stdexcept>

namespace radproj {

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty number in '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad number '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("bad number '" + std::string(text) + "'");
    return BigInt(std::string(s));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt floor(const Rational& r) {
  BigInt n = numerator(r), d = denominator(r);
  BigInt quot = n / d;
  if (n < 0 && quot * d != n) quot -= 1;
  return quot;
}

BigInt ceil(const Rational& r) { return -floor(-r); }

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  const Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing 0");
  return a * Interval{1 / b.hi, 1 / b.lo};
}

Interval sqrt_enclosure(const Rational& r, unsigned bits) {
  if (r < 0) throw std::domain_error("sqrt of negative rational");
  const BigInt n = numerator(r), d = denominator(r);
  const BigInt sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn == n && sd * sd == d) return Interval::point(Rational(sn, sd));
  // sqrt(n/d) = sqrt(n*d)/d; scale by 2^bits and bracket the integer root.
  const BigInt scale = BigInt(1) << bits;
  const BigInt s = boost::multiprecision::sqrt(BigInt(n * d * scale * scale));
  return {Rational(s, d * scale), Rational(s + 1, d * scale)};
}

Decision compare_less(const Rational& x, const Interval& bound, bool strict) {
  if (strict) {
    if (x < bound.lo) return Decision::yes;
    if (x >= bound.hi) return Decision::no;
  } else {
    if (x <= bound.lo) return Decision::yes;
    if (x > bound.hi) return Decision::no;
  }
  return Decision::undecided;
}

Decided decide_less(const Rational& x, const std::function<Interval(unsigned)>& bound,
                    bool strict, unsigned start_bits) {
  Decided out;
  for (unsigned bits = start_bits; bits <= kMaxBits; bits *= 2) {
    out.enclosure = bound(bits);
    out.bits = bits;
    out.decision = compare_less(x, out.enclosure, strict);
    if (out.decision != Decision::undecided || out.enclosure.exact()) break;
  }
  return out;
}

}  // namespace radproj
