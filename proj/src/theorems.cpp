#include "radproj/theorems.hpp"

#include <algorithm>
#include <chrono>

namespace radproj {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_ = Clock::now();
};

BoundReport make_report(const char* theorem, const PointSet& set) {
  BoundReport r;
  r.theorem = theorem;
  r.q = set.space().q();
  r.d = set.space().dim();
  r.e = set.space().field().e();
  r.size_e = set.size();
  return r;
}

Rational pow_q(std::uint64_t q, unsigned k) {
  BigInt v = 1;
  for (unsigned i = 0; i < k; ++i) v *= q;
  return Rational(v);
}

Verdict verdict_of(bool ok) { return ok ? Verdict::yes : Verdict::no; }

Verdict verdict_of(Decision d) {
  // An undecided comparison after full escalation is reported as a failure so
  // that it is never silently counted as a pass.
  return d == Decision::yes ? Verdict::yes : Verdict::no;
}

std::uint64_t count_t(const PointSet& set, const Rational& threshold, Cmp cmp) {
  return exceptional_set(set, threshold, cmp).size();
}

}  // namespace

BoundReport verify_line_sum_identity(const PointSet& set) {
  Stopwatch sw;
  BoundReport r = make_report(ids::line_sum_identity, set);
  const IncidenceLedger ledger(set);
  const std::uint64_t n = set.size();
  r.hypotheses_met = true;
  r.measured = Rational(ledger.sums(LineFamily::all).e2);
  r.bound = Interval::point(Rational(set.space().qbinom() * n + n * (n == 0 ? 0 : n - 1)));
  r.holds = verdict_of(r.measured == r.bound.lo);
  r.runtime_ms = sw.ms();
  return r;
}

BoundReport verify_variance_bound(const PointSet& set) {
  Stopwatch sw;
  BoundReport r = make_report(ids::variance_bound, set);
  const Space& space = set.space();
  const IncidenceLedger ledger(set);
  const Rational mean = Rational(set.size()) / pow_q(space.q(), space.dim() - 1);
  Rational lhs = Rational(ledger.empty_lines()) * mean * mean;
  for (const LineCount& l : ledger.lines()) {
    const Rational dev = Rational(l.e) - mean;
    lhs += dev * dev;
  }
  r.hypotheses_met = true;
  r.measured = lhs;
  r.bound = Interval::point(Rational(space.qbinom() * set.size()));
  r.holds = verdict_of(lhs <= r.bound.lo);
  r.runtime_ms = sw.ms();
  return r;
}

std::optional<Rational> large_e_constant(const Rational& a, const Rational& b) {
  const Rational denom = 1 - 2 * b + b * b - a;
  if (denom <= 0) return std::nullopt;
  return 1 / denom;
}

LargeEParams eval_large_e(std::uint64_t q, unsigned d, std::uint64_t size_e, std::uint64_t m) {
  if (size_e < 1 || m < 1) throw std::invalid_argument("need |E| >= 1 and a positive integer M");
  const CountingConstants cc = counting_constants(q, d);
  LargeEParams p;
  p.a = Rational(cc.qbinom, size_e);
  p.b = Rational(m) / pow_q(q, d - 1);
  p.C = large_e_constant(p.a, p.b);
  if (!p.C) {
    p.note = "C <= 0";
  } else if (p.b >= 1) {
    // The squaring step of the argument needs 1 - b > 0; past it the bound fails.
    p.note = "b = M q^(1-d) >= 1";
  } else {
    p.applicable = true;
    p.bound = *p.C * Rational(cc.qbinom * m, size_e);
  }
  return p;
}

BoundReport check_large_e_general(const PointSet& set, std::uint64_t m) {
  Stopwatch sw;
  BoundReport r = make_report(ids::large_e_general, set);
  r.M = Rational(m);
  if (set.empty() || m < 1) {
    r.note = "needs |E| >= 1 and M >= 1";
    r.runtime_ms = sw.ms();
    return r;
  }
  const LargeEParams p = eval_large_e(r.q, r.d, r.size_e, m);
  r.C = p.C;
  r.note = p.note;
  if (p.applicable) {
    r.hypotheses_met = true;
    r.bound = Interval::point(p.bound);
    r.measured = Rational(count_t(set, Rational(m), Cmp::at_most));
    r.holds = verdict_of(r.measured < p.bound);
  }
  r.runtime_ms = sw.ms();
  return r;
}

BoundReport check_large_e(const PointSet& set, std::uint64_t m) {
  Stopwatch sw;
  BoundReport r = make_report(ids::large_e, set);
  r.M = Rational(m);
  const Rational qd1 = pow_q(r.q, r.d - 1);
  r.hypotheses_met = m >= 1 && Rational(r.size_e) >= 6 * qd1 && Rational(m) <= qd1 / 4;
  if (r.hypotheses_met) {
    r.bound = Interval::point(12 * qd1 * Rational(m) / Rational(r.size_e));
    r.measured = Rational(count_t(set, Rational(m), Cmp::at_most));
    r.holds = verdict_of(r.measured < r.bound.lo);
  } else {
    r.note = "needs |E| >= 6 q^(d-1) and 1 <= M <= q^(d-1)/4";
  }
  r.runtime_ms = sw.ms();
  return r;
}

LargeTParams large_t_params(const Rational& a, const Rational& b, std::uint64_t qbinom) {
  LargeTParams p;
  p.a = a;
  p.b = b;
  p.qbinom = qbinom;
  if (a <= 0 || b >= 1) {
    p.note = "needs a > 0 and b < 1";
    return p;
  }
  p.c_squared = (1 - b) / a;
  // With 1 - b > 0, (1-b)/a > 1 is equivalent to c > 1 and to 1 - b - ac > 0.
  if (p.c_squared <= 1) {
    p.note = "(1-b)/a <= 1";
    return p;
  }
  p.applicable = true;
  return p;
}

LargeTParams eval_large_t(std::uint64_t q, unsigned d, std::uint64_t size_e, std::uint64_t m) {
  if (size_e < 1 || m < 1) throw std::invalid_argument("need |E| >= 1 and a positive integer M");
  const CountingConstants cc = counting_constants(q, d);
  return large_t_params(Rational(size_e) / pow_q(q, d - 1), Rational(m, size_e), cc.qbinom);
}

Interval large_t_coefficient(const Rational& a, const Rational& b, unsigned bits) {
  for (unsigned prec = bits;; prec *= 2) {
    const Interval c = sqrt_enclosure((1 - b) / a, prec);
    const Interval u = Interval::point(1 - b) - Interval::point(a) * c;
    const Interval v = Interval::point(Rational(1)) - Interval::point(Rational(1)) / c;
    if (u.lo > 0 && v.lo > 0) {
      const Interval uv = u * v;
      return Interval::point(Rational(2)) / (uv * uv);
    }
    if (prec >= kMaxBits) throw std::domain_error("large-T coefficient: enclosure touches zero");
  }
}

Interval large_t_bound(const LargeTParams& params, unsigned bits) {
  if (!params.applicable) throw std::invalid_argument("large-T bound outside its hypotheses");
  return large_t_coefficient(params.a, params.b, bits) * Interval::point(Rational(params.qbinom));
}

BoundReport check_large_t_general(const PointSet& set, std::uint64_t m) {
  Stopwatch sw;
  BoundReport r = make_report(ids::large_t_general, set);
  r.M = Rational(m);
  if (set.empty() || m < 1) {
    r.note = "needs |E| >= 1 and M >= 1";
    r.runtime_ms = sw.ms();
    return r;
  }
  const LargeTParams p = eval_large_t(r.q, r.d, r.size_e, m);
  r.note = p.note;
  if (p.applicable) {
    r.hypotheses_met = true;
    r.measured = Rational(count_t(set, Rational(m), Cmp::at_most));
    const Decided dec =
        decide_less(r.measured, [&](unsigned bits) { return large_t_bound(p, bits); }, true);
    r.bound = dec.enclosure;
    r.holds = verdict_of(dec.decision);
  }
  r.runtime_ms = sw.ms();
  return r;
}

BoundReport check_large_t(const PointSet& set) {
  Stopwatch sw;
  BoundReport r = make_report(ids::large_t, set);
  const Rational qd1 = pow_q(r.q, r.d - 1);
  const Rational threshold = Rational(r.size_e, 10);
  r.M = threshold;
  r.hypotheses_met = r.size_e >= 1 && Rational(r.size_e) <= qd1 / 100;
  if (r.hypotheses_met) {
    r.bound = Interval::point(8 * qd1);
    r.measured = Rational(count_t(set, threshold, Cmp::at_most));
    r.holds = verdict_of(r.measured < r.bound.lo);
  } else {
    r.note = "needs 1 <= |E| <= q^(d-1)/100";
  }
  r.runtime_ms = sw.ms();
  return r;
}

BoundReport check_just_cs(const PointSet& set, const Rational& c) {
  if (c <= 1) throw std::invalid_argument("C must exceed 1");
  Stopwatch sw;
  BoundReport r = make_report(ids::just_cs, set);
  r.C = c;
  r.hypotheses_met = c < Rational(r.size_e);
  if (r.hypotheses_met) {
    const Rational n(r.size_e);
    r.bound = Interval::point(Rational(r.q) * n / (c - 1));
    r.measured = Rational(count_t(set, n / c, Cmp::below));
    r.holds = verdict_of(r.measured < r.bound.lo);
  } else {
    r.note = "needs C < |E|";
  }
  r.runtime_ms = sw.ms();
  return r;
}

BoundReport check_t_off_a_line(const PointSet& set, const Rational& c, std::uint64_t k,
                               const PointSet& candidate) {
  Stopwatch sw;
  BoundReport r = make_report(ids::t_off_a_line, set);
  r.C = c;
  r.measured = Rational(candidate.size());
  const Rational n(r.size_e);
  if (!(c > 1 && c < n && k >= 1)) {
    r.note = "needs 1 < C < |E| and k >= 1";
  } else {
    ProjectionCounter counter(set.space());
    const std::int64_t limit = max_admissible_size(n / c, Cmp::below);
    bool all_small = true;
    for (PointId y : candidate.members()) {
      if (limit < 0 || counter.count(set, y, static_cast<std::size_t>(limit)) >
                           static_cast<std::size_t>(limit)) {
        all_small = false;
        break;
      }
    }
    const std::uint32_t max_on_line =
        candidate.empty() ? 0 : IncidenceLedger(PointSet(set.space()), candidate).max_t();
    if (!all_small) {
      r.note = "a candidate point has |pi^y(E)| >= |E|/C";
    } else if (max_on_line >= k) {
      r.note = "a line meets the candidate in >= k points";
    } else {
      r.hypotheses_met = true;
    }
  }
  if (r.hypotheses_met) {
    r.bound = Interval::point(Rational(k) * n / (c - 1));
    r.holds = verdict_of(r.measured <= r.bound.lo);
  }
  r.runtime_ms = sw.ms();
  return r;
}

BoundReport check_t_on_a_line(const PointSet& set, const Rational& m, const Line& line) {
  Stopwatch sw;
  BoundReport r = make_report(ids::t_on_a_line, set);
  r.M = m;
  const Space& space = set.space();
  const std::vector<PointId> pts = space.line_points(line);
  bool disjoint = true;
  for (PointId x : pts) disjoint = disjoint && !set.contains(x);
  if (!disjoint) {
    r.note = "line meets E";
  } else if (!(m >= 0 && 2 * m < Rational(r.size_e))) {
    r.note = "needs 0 <= M < |E|/2";
  } else {
    r.hypotheses_met = true;
    const std::int64_t limit = max_admissible_size(m, Cmp::at_most);
    ProjectionCounter counter(space);
    std::uint64_t hits = 0;
    if (limit >= 0)
      for (PointId y : pts)
        if (counter.count(set, y, static_cast<std::size_t>(limit)) <= static_cast<std::size_t>(limit))
          ++hits;
    r.measured = Rational(hits);
    r.bound = Interval::point(2 * m);
    r.holds = verdict_of(r.measured <= r.bound.lo);
  }
  r.runtime_ms = sw.ms();
  return r;
}

BoundReport check_four_m_squared(const PointSet& set, const Rational& m) {
  Stopwatch sw;
  BoundReport r = make_report(ids::four_m_squared, set);
  r.M = m;
  const Rational n(r.size_e);
  const std::uint32_t max_e = set.empty() ? 0 : IncidenceLedger(set).max_e();
  if (2 * Rational(max_e) > n) {
    r.note = "a line holds more than |E|/2 points";
  } else if (!(m > 0 && 4 * m < n)) {
    r.note = "needs 0 < M < |E|/4";
  } else {
    r.hypotheses_met = true;
    r.measured = Rational(count_t(set, m, Cmp::below));
    r.bound = Interval::point(4 * m * m);
    r.holds = verdict_of(r.measured < r.bound.lo);
  }
  r.runtime_ms = sw.ms();
  return r;
}

BoundReport check_unique_bad_point(const PointSet& set) {
  Stopwatch sw;
  BoundReport r = make_report(ids::unique_bad_point, set);
  const std::uint64_t n = r.size_e;
  const std::uint32_t max_e = set.empty() ? 0 : IncidenceLedger(set).max_e();
  if (4 * std::uint64_t{max_e} > 3 * n) {
    r.note = "a line holds more than 3|E|/4 points";
  } else {
    r.hypotheses_met = true;
    // size < sqrt(|E|)/2  <=>  4 size^2 < |E|.
    std::int64_t limit = -1;
    while (4 * static_cast<std::uint64_t>((limit + 1) * (limit + 1)) < n) ++limit;
    r.M = Rational(limit + 1);
    r.measured = Rational(limit < 0 ? 0 : count_t(set, Rational(limit), Cmp::at_most));
    r.bound = Interval::point(Rational(1));
    r.holds = verdict_of(r.measured <= 1);
  }
  r.runtime_ms = sw.ms();
  return r;
}

std::vector<BoundReport> verify_et_inequalities(const PointSet& set, std::uint64_t m) {
  Stopwatch sw;
  const Space& space = set.space();
  const PointSet t_set = exceptional_set(set, Rational(m), Cmp::at_most);
  const IncidenceLedger ledger(set, t_set);
  const Rational s(ledger.sums(LineFamily::joint).et);
  const Rational ne(set.size()), nt(t_set.size());
  const Rational qd1 = pow_q(space.q(), space.dim() - 1);
  const Rational qbinom(space.qbinom());

  std::vector<BoundReport> out;

  BoundReport lower = make_report(ids::et_lower, set);
  lower.M = Rational(m);
  lower.hypotheses_met = true;
  lower.measured = s;
  lower.bound = Interval::point(ne * nt);
  lower.holds = verdict_of(s >= ne * nt);
  lower.note = "measured >= bound";
  out.push_back(lower);

  // Both upper bounds count at most M lines of L through each center. A
  // center that lies in E sees every line through it in L, so they need
  // T disjoint from E.
  const bool disjoint = std::none_of(t_set.members().begin(), t_set.members().end(),
                                     [&](PointId y) { return set.contains(y); });
  const char* meets = "T meets E";

  // s <= (M/q^(d-1))|E||T| + sqrt((M|T| + |T|^2)|E| qbinom), decided exactly.
  BoundReport up1 = make_report(ids::et_upper_large_e, set);
  up1.M = Rational(m);
  up1.hypotheses_met = m >= 1 && disjoint;
  up1.measured = s;
  if (up1.hypotheses_met) {
    const Rational lin = Rational(m) / qd1 * ne * nt;
    const Rational radicand = (Rational(m) * nt + nt * nt) * ne * qbinom;
    const Rational slack = s - lin;
    up1.holds = verdict_of(slack <= 0 || slack * slack <= radicand);
    up1.bound = Interval::point(lin) + sqrt_enclosure(radicand, kStartBits);
  } else {
    up1.note = m < 1 ? "needs M >= 1" : meets;
  }
  out.push_back(up1);

  // s < (b + ac)|E||T| + (1 - 1/c)^-1 |E| sqrt(2 qbinom |T|) when (1-b)/a > 1.
  BoundReport up2 = make_report(ids::et_upper_large_t, set);
  up2.M = Rational(m);
  up2.measured = s;
  if (set.empty() || m < 1) {
    up2.note = "needs |E| >= 1 and M >= 1";
  } else if (!disjoint) {
    up2.note = meets;
  } else {
    const LargeTParams p = large_t_params(ne / qd1, Rational(m) / ne, space.qbinom());
    up2.note = p.note;
    if (p.applicable) {
      up2.hypotheses_met = true;
      auto bound = [&](unsigned bits) {
        const Interval c = sqrt_enclosure(p.c_squared, bits);
        const Interval one = Interval::point(Rational(1));
        const Interval first = (Interval::point(p.b) + Interval::point(p.a) * c) *
                               Interval::point(ne * nt);
        const Interval root = sqrt_enclosure(2 * qbinom * nt, bits);
        const Interval second = one / (one - one / c) * Interval::point(ne) * root;
        return first + second;
      };
      // Both sides vanish when T is empty, so only then compare non-strictly.
      const Decided dec = decide_less(s, bound, t_set.size() > 0);
      up2.bound = dec.enclosure;
      up2.holds = verdict_of(dec.decision);
    }
  }
  out.push_back(up2);

  const double ms = sw.ms();
  for (BoundReport& r : out) r.runtime_ms = ms;
  return out;
}

RichLines rich_lines(const PointSet& set, std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("richness k must be >= 1");
  const IncidenceLedger ledger(set);
  RichLines out;
  out.histogram.assign(ledger.max_e() + 1, 0);
  out.histogram[0] = ledger.empty_lines();
  for (const LineCount& l : ledger.lines()) {
    ++out.histogram[l.e];
    if (l.e >= k) out.lines.push_back(l.key);
  }
  out.count = out.lines.size();
  return out;
}

RichSum rich_sum_statistic(const PointSet& set, std::uint64_t k_lo, std::uint64_t k_hi) {
  RichSum out;
  out.reference = Rational(set.size() * set.size(), 10);
  if (k_lo > k_hi) return out;
  const RichLines rl = rich_lines(set, 1);
  for (std::uint64_t k = std::max<std::uint64_t>(k_lo, 1); k <= k_hi && k < rl.histogram.size(); ++k)
    out.value += BigInt(k) * k * rl.histogram[k];
  return out;
}

BoundReport conjecture_check(const PointSet& set, unsigned k) {
  Stopwatch sw;
  BoundReport r = make_report(ids::conjecture_scan, set);
  const Rational n(r.size_e);
  const Rational threshold = n / 10;
  r.M = threshold;
  if (!(k >= 1 && k + 1 <= r.d && pow_q(r.q, k - 1) < n && n <= pow_q(r.q, k))) {
    r.note = "needs 1 <= k <= d-1 and q^(k-1) < |E| <= q^k";
    r.runtime_ms = sw.ms();
    return r;
  }
  r.hypotheses_met = true;
  r.bound = Interval::point(10 * pow_q(r.q, k));
  r.measured = Rational(count_t(set, threshold, Cmp::below));
  if (r.measured <= r.bound.lo) {
    r.holds = Verdict::yes;
  } else {
    // Recount with the line-materialising oracle before reporting.
    const std::int64_t limit = max_admissible_size(threshold, Cmp::below);
    std::uint64_t recount = 0;
    for (PointId y = 0; y < set.space().num_points(); ++y)
      if (static_cast<std::int64_t>(projection_size_oracle(set, y)) <= limit) ++recount;
    if (Rational(recount) == r.measured) {
      r.holds = Verdict::no;
      r.note = "candidate counterexample, oracle-confirmed";
    } else {
      r.holds = Verdict::yes;
      r.note = "flag dropped: oracle recount " + std::to_string(recount) + " disagrees";
    }
  }
  r.runtime_ms = sw.ms();
  return r;
}

}  // namespace radproj
