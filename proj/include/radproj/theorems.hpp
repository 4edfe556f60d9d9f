#pragma once

// Bound evaluators and checkers for the exceptional-set bounds over F_q^d.
//
// Every checker returns a BoundReport. A report is pass/fail only when the
// instance satisfies the statement's hypotheses; otherwise it is marked
// not-applicable. Comparisons against bounds with rational data are exact.
// Bounds that involve square roots are enclosed in rational intervals and
// the comparison is only settled once the enclosure decides it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radproj/radial.hpp"

namespace radproj {

enum class Verdict { yes, no, not_applicable };

const char* to_string(Verdict v);

struct BoundReport {
  std::string theorem;
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  std::uint32_t e = 1;  // extension degree of the field
  std::string family;
  std::uint64_t size_e = 0;
  std::optional<Rational> M;
  std::optional<Rational> C;
  bool hypotheses_met = false;
  Rational measured;
  /// Exact bound, or the enclosure of an irrational one.
  Interval bound;
  Verdict holds = Verdict::not_applicable;
  std::uint64_t seed = 0;
  double runtime_ms = 0.0;
  std::string note;
};

// Statement identifiers used in reports and for theorem selection.
namespace ids {
inline constexpr const char* line_sum_identity = "line_sum_identity";
inline constexpr const char* variance_bound = "variance_bound";
inline constexpr const char* large_e = "large_e";                  // 12 q^(d-1) M / |E|
inline constexpr const char* large_e_general = "large_e_general";  // C qbinom M / |E|
inline constexpr const char* large_t = "large_t";                  // 8 q^(d-1)
inline constexpr const char* large_t_general = "large_t_general";
inline constexpr const char* just_cs = "just_cs";                  // q|E|/(C-1)
inline constexpr const char* t_off_a_line = "t_off_a_line";
inline constexpr const char* t_on_a_line = "t_on_a_line";
inline constexpr const char* four_m_squared = "four_m_squared";
inline constexpr const char* unique_bad_point = "unique_bad_point";
inline constexpr const char* et_lower = "et_lower";
inline constexpr const char* et_upper_large_e = "et_upper_large_e";
inline constexpr const char* et_upper_large_t = "et_upper_large_t";
inline constexpr const char* conjecture_scan = "conjecture_scan";
}  // namespace ids

// Incidence identities.

/// Sum over all lines of e(l)^2 against qbinom|E| + |E|(|E|-1); exact equality.
BoundReport verify_line_sum_identity(const PointSet& set);

/// Sum over all lines of (e(l) - |E| q^(1-d))^2 <= qbinom |E|, exact.
BoundReport verify_variance_bound(const PointSet& set);

/// With T = {y : |pi^y(E)| <= M}: the lower bound sum_L e t >= |E||T| and the
/// two upper bounds on sum_L e t (the second gated on (1-b)/a > 1).
std::vector<BoundReport> verify_et_inequalities(const PointSet& set, std::uint64_t m);

// Large-|E| bound: |T| < C qbinom M / |E|.

struct LargeEParams {
  Rational a;  // qbinom / |E|
  Rational b;  // M q^(1-d)
  std::optional<Rational> C;  // (1 - 2b + b^2 - a)^-1 when positive
  bool applicable = false;
  Rational bound;  // C qbinom M / |E| when applicable
  std::string note;
};

/// C(a, b) = (1 - 2b + b^2 - a)^-1, or nullopt when that denominator is <= 0.
std::optional<Rational> large_e_constant(const Rational& a, const Rational& b);

/// Throws std::invalid_argument unless size_e >= 1 and m >= 1.
LargeEParams eval_large_e(std::uint64_t q, unsigned d, std::uint64_t size_e, std::uint64_t m);

BoundReport check_large_e_general(const PointSet& set, std::uint64_t m);
/// |E| >= 6 q^(d-1), M <= q^(d-1)/4  =>  |T| < 12 q^(d-1) M / |E|.
BoundReport check_large_e(const PointSet& set, std::uint64_t m);

// Large-|T| bound: |T| < 2 (1 - b - ac)^-2 (1 - 1/c)^-2 qbinom.

struct LargeTParams {
  Rational a;          // |E| q^(1-d)
  Rational b;          // M / |E|
  Rational c_squared;  // (1 - b) / a
  std::uint64_t qbinom = 0;
  bool applicable = false;
  std::string note;
};

/// Throws std::invalid_argument unless size_e >= 1 and m >= 1.
LargeTParams eval_large_t(std::uint64_t q, unsigned d, std::uint64_t size_e, std::uint64_t m);
LargeTParams large_t_params(const Rational& a, const Rational& b, std::uint64_t qbinom);
/// Enclosure of the bound at the given precision; requires params.applicable.
Interval large_t_bound(const LargeTParams& params, unsigned bits);
/// Enclosure of 2 (1 - b - ac)^-2 (1 - 1/c)^-2, the coefficient of qbinom.
Interval large_t_coefficient(const Rational& a, const Rational& b, unsigned bits);

BoundReport check_large_t_general(const PointSet& set, std::uint64_t m);
/// 1 <= |E| <= q^(d-1)/100  =>  #{y : |pi^y(E)| <= |E|/10} < 8 q^(d-1).
BoundReport check_large_t(const PointSet& set);

// Cauchy-Schwarz bounds for arbitrary fields.

/// 1 < C < |E|  =>  #{y : |pi^y(E)| < |E|/C} < q|E|/(C-1).
/// Throws std::invalid_argument for C <= 1; C >= |E| is not-applicable.
BoundReport check_just_cs(const PointSet& set, const Rational& c);

/// For a candidate T whose points all have |pi^y(E)| < |E|/C and which meets
/// every line in fewer than k points: |T| <= k|E|/(C-1).
BoundReport check_t_off_a_line(const PointSet& set, const Rational& c, std::uint64_t k,
                               const PointSet& candidate);

/// Line l disjoint from E and M < |E|/2  =>  |l ∩ {y : |pi^y(E)| <= M}| <= 2M.
BoundReport check_t_on_a_line(const PointSet& set, const Rational& m, const Line& line);

/// No line holds more than |E|/2 points and M < |E|/4  =>
/// #{y : |pi^y(E)| < M} < 4M^2.
BoundReport check_four_m_squared(const PointSet& set, const Rational& m);

/// No line holds more than 3|E|/4 points  =>  #{y : |pi^y(E)| < |E|^(1/2)/2} <= 1.
BoundReport check_unique_bad_point(const PointSet& set);

// Rich lines.

struct RichLines {
  std::uint64_t count = 0;
  std::vector<LineKey> lines;
  /// histogram[j] = number of lines with exactly j points of E, j = 0..max.
  std::vector<std::uint64_t> histogram;
};

RichLines rich_lines(const PointSet& set, std::uint64_t k);

struct RichSum {
  BigInt value;        // sum_{k_lo <= k <= k_hi} k^2 |L_{=k}|
  Rational reference;  // |E|^2 / 10
};

RichSum rich_sum_statistic(const PointSet& set, std::uint64_t k_lo, std::uint64_t k_hi);

// Conjectured bound #{y : |pi^y(E)| < |E|/10} <= 10 q^k for q^(k-1) < |E| <= q^k.

/// holds = no marks a candidate counterexample, already recounted with
/// projection_size_oracle. Never an artifact failure.
BoundReport conjecture_check(const PointSet& set, unsigned k);

}  // namespace radproj
