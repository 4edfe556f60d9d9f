#pragma once

// Exact rationals and rigorous interval enclosures for bounds that involve
// square roots.

#include <functional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace radproj {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Accepts "n", "-n", "n/m".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);
BigInt floor(const Rational& r);
BigInt ceil(const Rational& r);

/// Closed interval [lo, hi] with rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  static Interval point(const Rational& r) { return {r, r}; }
  bool exact() const { return lo == hi; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Throws std::domain_error when b contains zero.
Interval operator/(const Interval& a, const Interval& b);

/// Enclosure of sqrt(r) of width <= 2^-bits (exact when r is a rational square).
/// Throws std::domain_error for r < 0.
Interval sqrt_enclosure(const Rational& r, unsigned bits);

/// Outcome of comparing an exact value against an enclosed one.
enum class Decision { yes, no, undecided };

/// Precision schedule for escalation: 64, 128, ... up to kMaxBits.
inline constexpr unsigned kStartBits = 64;
inline constexpr unsigned kMaxBits = 4096;

struct Decided {
  Decision decision = Decision::undecided;
  Interval enclosure;
  unsigned bits = 0;
};

/// Evaluates `bound(bits)` at increasing precision until `x < bound` (strict)
/// or `x <= bound` is settled either way.
Decided decide_less(const Rational& x, const std::function<Interval(unsigned)>& bound,
                    bool strict, unsigned start_bits = kStartBits);

/// One-shot decision at a fixed enclosure.
Decision compare_less(const Rational& x, const Interval& bound, bool strict);

}  // namespace radproj
