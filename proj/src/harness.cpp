#include "radproj/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#ifndef RADPROJ_VERSION
#define RADPROJ_VERSION "0.0.0"
#endif

namespace radproj {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(sep, start);
    const std::string item = trim(s.substr(start, pos == std::string_view::npos ? s.size() - start : pos - start));
    if (!item.empty()) out.push_back(item);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const auto x = std::stoull(v, &used);
    if (used == v.size() && v[0] != '-') return x;
  } catch (const std::exception&) {
  }
  throw PreflightError("config key '" + key + "' expects a non-negative integer, got '" + v + "'");
}

FieldChoice parse_field(const std::string& text) {
  const auto caret = text.find('^');
  FieldChoice f;
  f.p = static_cast<std::uint32_t>(parse_u64("fields", text.substr(0, caret)));
  f.e = caret == std::string::npos ? 1 : static_cast<std::uint32_t>(parse_u64("fields", text.substr(caret + 1)));
  return f;
}

template <class T, class F>
std::string join(const std::vector<T>& items, const std::string& sep, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + fmt(items[i]);
  return out;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Runs fn(i) for i in [0, n) on `jobs` threads; fn must be independent per i.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

std::string cell_id(const FieldChoice& f, unsigned d, const std::string& family, std::uint64_t trial) {
  return std::to_string(f.p) + "^" + std::to_string(f.e) + "/" + std::to_string(d) + "/" + family +
         "/" + std::to_string(trial);
}

void stamp(BoundReport& r, const std::string& family, std::uint64_t seed) {
  r.family = family;
  r.seed = seed;
}

// Lines disjoint from E, drawn at random: a random point and a random
// direction give a random line through that point.
std::vector<Line> disjoint_lines(const PointSet& set, unsigned want, std::uint64_t seed) {
  const Space& space = set.space();
  std::mt19937_64 rng(splitmix64(seed ^ 0x6c696e6573ULL));
  std::uniform_int_distribution<PointId> point(0, space.num_points() - 1);
  std::uniform_int_distribution<std::uint32_t> dir(0, static_cast<std::uint32_t>(space.qbinom() - 1));
  std::set<LineKey> seen;
  std::vector<Line> out;
  for (int attempt = 0; attempt < 2000 && out.size() < want; ++attempt) {
    const LineKey key = space.line_key(point(rng), dir(rng));
    if (!seen.insert(key).second) continue;
    const Line l = space.line(key);
    const auto pts = space.line_points(l);
    if (std::none_of(pts.begin(), pts.end(), [&](PointId x) { return set.contains(x); }))
      out.push_back(l);
  }
  return out;
}

// Greedy subset of T meeting every line in fewer than k points.
PointSet thin_to_k(const PointSet& t_set, std::uint64_t k) {
  const Space& space = t_set.space();
  std::map<LineKey, std::uint64_t> load;
  std::vector<PointId> kept;
  const auto ndir = static_cast<std::uint32_t>(space.qbinom());
  for (PointId y : t_set.members()) {
    bool fits = true;
    for (std::uint32_t j = 0; j < ndir && fits; ++j) fits = load[space.line_key(y, j)] + 1 < k;
    if (!fits) continue;
    for (std::uint32_t j = 0; j < ndir; ++j) ++load[space.line_key(y, j)];
    kept.push_back(y);
  }
  return PointSet(space, std::move(kept));
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t master, std::uint32_t p, std::uint32_t e, unsigned d,
                        const std::string& family, std::uint64_t trial) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t v : {std::uint64_t{p}, std::uint64_t{e}, std::uint64_t{d}, fnv1a(family), trial})
    h = splitmix64(h ^ v);
  return h;
}

SweepConfig parse_config(std::istream& in) {
  SweepConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw PreflightError("config line " + std::to_string(lineno) + " lacks '='");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "fields") {
      c.fields.clear();
      for (const auto& f : split(val, ',')) c.fields.push_back(parse_field(f));
    } else if (key == "dims") {
      c.dims.clear();
      for (const auto& v : split(val, ',')) c.dims.push_back(static_cast<unsigned>(parse_u64(key, v)));
    } else if (key == "families") {
      c.families.clear();
      for (const auto& v : split(val, ';')) c.families.push_back(FamilySpec::parse(v));
    } else if (key == "theorems") {
      c.theorems = split(val, ',');
    } else if (key == "M") {
      c.m_grid.clear();
      for (const auto& v : split(val, ',')) c.m_grid.push_back(parse_u64(key, v));
    } else if (key == "C") {
      c.c_grid.clear();
      for (const auto& v : split(val, ',')) c.c_grid.push_back(parse_rational(v));
    } else if (key == "k") {
      c.k_grid.clear();
      for (const auto& v : split(val, ',')) c.k_grid.push_back(static_cast<unsigned>(parse_u64(key, v)));
    } else if (key == "trials") {
      c.trials = parse_u64(key, val);
    } else if (key == "seed") {
      c.seed = parse_u64(key, val);
    } else if (key == "jobs") {
      c.jobs = static_cast<unsigned>(parse_u64(key, val));
    } else if (key == "out") {
      c.out = val;
    } else if (key == "format") {
      c.format = val;
    } else if (key == "timing") {
      c.timing = val == "true" || val == "1" || val == "yes";
    } else if (key == "checkpoint") {
      c.checkpoint = val;
    } else if (key == "stats_k_lo") {
      c.stats_k_lo = parse_u64(key, val);
    } else if (key == "stats_k_hi") {
      c.stats_k_hi = parse_u64(key, val);
    } else if (key == "lines_per_instance") {
      c.lines_per_instance = static_cast<unsigned>(parse_u64(key, val));
    } else {
      throw PreflightError("unknown config key '" + key + "' on line " + std::to_string(lineno));
    }
  }
  return c;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreflightError("cannot open config file " + path.string());
  return parse_config(in);
}

std::string to_config_text(const SweepConfig& c) {
  std::ostringstream os;
  os << "fields = " << join(c.fields, ",", [](const FieldChoice& f) { return std::to_string(f.p) + "^" + std::to_string(f.e); }) << "\n";
  os << "dims = " << join(c.dims, ",", [](unsigned d) { return std::to_string(d); }) << "\n";
  os << "families = " << join(c.families, ";", [](const FamilySpec& f) { return f.describe(); }) << "\n";
  os << "theorems = " << join(c.theorems, ",", [](const std::string& s) { return s; }) << "\n";
  os << "M = " << join(c.m_grid, ",", [](std::uint64_t m) { return std::to_string(m); }) << "\n";
  os << "C = " << join(c.c_grid, ",", [](const Rational& r) { return to_string(r); }) << "\n";
  os << "k = " << join(c.k_grid, ",", [](unsigned k) { return std::to_string(k); }) << "\n";
  os << "trials = " << c.trials << "\n";
  os << "seed = " << c.seed << "\n";
  os << "stats_k_lo = " << c.stats_k_lo << "\n";
  os << "stats_k_hi = " << c.stats_k_hi << "\n";
  os << "lines_per_instance = " << c.lines_per_instance << "\n";
  // jobs, out, format, timing and checkpoint do not change report content and
  // stay out of the digest.
  return os.str();
}

std::string config_digest(const SweepConfig& config) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(to_config_text(config));
  return os.str();
}

SweepConfig smoke_config() {
  SweepConfig c;
  c.fields = {{3, 1}, {5, 1}};
  c.dims = {2};
  c.families = {FamilySpec::parse("random:n=4"), FamilySpec::parse("random:n=8"),
                FamilySpec::parse("subspace:k=1"), FamilySpec::parse("concurrent:m=2")};
  c.theorems = {"identities"};
  c.m_grid = {1, 2};
  c.trials = 5;
  c.seed = 1;
  return c;
}

SweepConfig default_hunt_config() {
  SweepConfig c;
  c.fields = {{3, 1}, {5, 1}, {7, 1}};
  c.dims = {2, 3};
  c.families = {FamilySpec::parse("subspace"), FamilySpec::parse("random")};
  c.k_grid = {};
  c.trials = 500;
  c.seed = 1;
  return c;
}

std::vector<std::string> resolve_theorems(const std::vector<std::string>& names) {
  static const std::vector<std::string> identities = {
      ids::line_sum_identity, ids::variance_bound, ids::et_lower, ids::et_upper_large_e,
      ids::et_upper_large_t};
  static const std::vector<std::string> theorems = {
      ids::large_e, ids::large_e_general, ids::large_t, ids::large_t_general, ids::just_cs,
      ids::t_off_a_line, ids::t_on_a_line, ids::four_m_squared, ids::unique_bad_point};
  std::vector<std::string> out;
  auto add = [&](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (const auto& n : names) {
    if (n == "all" || n == "identities")
      for (const auto& s : identities) add(s);
    if (n == "all" || n == "theorems")
      for (const auto& s : theorems) add(s);
    if (n == "all" || n == "identities" || n == "theorems") continue;
    if (n == "et") {
      for (const auto& s : {ids::et_lower, ids::et_upper_large_e, ids::et_upper_large_t}) add(s);
      continue;
    }
    const bool known = std::find(identities.begin(), identities.end(), n) != identities.end() ||
                       std::find(theorems.begin(), theorems.end(), n) != theorems.end();
    if (!known) throw PreflightError("unknown theorem selection '" + n + "'");
    add(n);
  }
  return out;
}

void preflight(const SweepConfig& config) {
  resolve_theorems(config.theorems);
  if (config.format != "json" && config.format != "csv")
    throw PreflightError("format must be json or csv, got '" + config.format + "'");
  for (const auto& c : config.c_grid)
    if (c <= 1) throw PreflightError("C grid value " + to_string(c) + " must exceed 1");
  for (const FieldChoice& f : config.fields) {
    for (unsigned d : config.dims) {
      const std::string cell = std::to_string(f.p) + "^" + std::to_string(f.e) + ", d=" + std::to_string(d);
      try {
        if (d < 2) throw PreflightError("dimension must be >= 2");
        const Space space(Field::create(f.p, f.e), d);
        if (space.num_lines() > kMaxLines) throw PreflightError("line count exceeds 10^8");
        for (const FamilySpec& fam : config.families)
          if (!(fam.kind == FamilyKind::random && fam.n == 0) &&
              !(fam.kind == FamilyKind::subspace && config.theorems.empty()))
            fam.validate(space);
      } catch (const std::invalid_argument& e) {
        throw PreflightError("infeasible cell (F_" + cell + "): " + e.what());
      }
    }
  }
}

Json to_json(const RunManifest& m, bool with_timing) {
  Json j;
  j["config_digest"] = m.config_digest;
  j["version"] = m.version;
  j["master_seed"] = m.master_seed;
  j["seed_scheme"] = "splitmix64 fold over (master, p, e, d, fnv1a(family), trial)";
  Json cells = Json::array();
  for (const CellInfo& c : m.cells)
    cells.push_back({{"cell", c.id}, {"seed", c.seed}});
  j["cells"] = std::move(cells);
  j["total_ms"] = with_timing ? m.total_ms : 0.0;
  return j;
}

namespace {

std::vector<BoundReport> run_cell(const SweepConfig& config, const std::vector<std::string>& selected,
                                  const CellInfo& cell, const FamilySpec& family) {
  std::vector<BoundReport> out;
  const Space space(Field::create(cell.field.p, cell.field.e), cell.d);
  const std::string fam = family.describe();
  std::optional<PointSet> maybe;
  try {
    maybe.emplace(generate(space, family, cell.seed));
  } catch (const GenerationError& e) {
    BoundReport r;
    r.theorem = "generate";
    r.q = space.q();
    r.d = cell.d;
    r.e = cell.field.e;
    r.note = e.what();
    stamp(r, fam, cell.seed);
    return {r};
  }
  const PointSet& set = *maybe;
  auto selected_has = [&](const char* id) {
    return std::find(selected.begin(), selected.end(), id) != selected.end();
  };
  auto push = [&](BoundReport r) {
    stamp(r, fam, cell.seed);
    out.push_back(std::move(r));
  };

  if (selected_has(ids::line_sum_identity)) push(verify_line_sum_identity(set));
  if (selected_has(ids::variance_bound)) push(verify_variance_bound(set));
  for (std::uint64_t m : config.m_grid) {
    if (selected_has(ids::et_lower) || selected_has(ids::et_upper_large_e) ||
        selected_has(ids::et_upper_large_t)) {
      for (BoundReport& r : verify_et_inequalities(set, m))
        if (selected_has(r.theorem.c_str())) push(std::move(r));
    }
    if (selected_has(ids::large_e)) push(check_large_e(set, m));
    if (selected_has(ids::large_e_general)) push(check_large_e_general(set, m));
    if (selected_has(ids::large_t_general)) push(check_large_t_general(set, m));
    if (selected_has(ids::four_m_squared)) push(check_four_m_squared(set, Rational(m)));
    if (selected_has(ids::t_on_a_line)) {
      for (const Line& l : disjoint_lines(set, config.lines_per_instance, cell.seed))
        push(check_t_on_a_line(set, Rational(m), l));
    }
  }
  if (selected_has(ids::large_t)) push(check_large_t(set));
  if (selected_has(ids::unique_bad_point)) push(check_unique_bad_point(set));
  for (const Rational& c : config.c_grid) {
    if (selected_has(ids::just_cs)) push(check_just_cs(set, c));
    if (selected_has(ids::t_off_a_line)) {
      const bool in_range = c > 1 && c < Rational(set.size());
      const PointSet t_set = in_range ? exceptional_set(set, Rational(set.size()) / c, Cmp::below)
                                      : PointSet(space);
      std::set<std::uint64_t> ks(config.k_grid.begin(), config.k_grid.end());
      ks.insert(space.q() + 1);
      for (std::uint64_t k : ks) {
        if (k == 0) continue;
        push(check_t_off_a_line(set, c, k, thin_to_k(t_set, k)));
      }
    }
  }
  return out;
}

}  // namespace

VerifyResult run_verify(const SweepConfig& config) {
  preflight(config);
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::string> selected = resolve_theorems(config.theorems);
  VerifyResult result;
  result.manifest.config_digest = config_digest(config);
  result.manifest.version = RADPROJ_VERSION;
  result.manifest.master_seed = config.seed;

  std::vector<std::pair<CellInfo, FamilySpec>> cells;
  if (!selected.empty()) {
    for (const FieldChoice& f : config.fields)
      for (unsigned d : config.dims)
        for (const FamilySpec& fam : config.families)
          for (std::uint64_t t = 0; t < (fam.seeded() ? config.trials : 1); ++t) {
            CellInfo c;
            c.field = f;
            c.d = d;
            c.family = fam.describe();
            c.trial = t;
            c.id = cell_id(f, d, c.family, t);
            c.seed = cell_seed(config.seed, f.p, f.e, d, c.family, t);
            cells.emplace_back(c, fam);
          }
  }
  std::vector<std::vector<BoundReport>> per_cell(cells.size());
  parallel_for(cells.size(), config.jobs, [&](std::size_t i) {
    per_cell[i] = run_cell(config, selected, cells[i].first, cells[i].second);
  });
  for (auto& [c, fam] : cells) result.manifest.cells.push_back(c);
  for (auto& reps : per_cell)
    for (auto& r : reps) result.reports.push_back(std::move(r));
  std::stable_sort(result.reports.begin(), result.reports.end(), [](const BoundReport& a, const BoundReport& b) {
    return std::tie(a.theorem, a.seed) < std::tie(b.theorem, b.seed);
  });
  for (const BoundReport& r : result.reports)
    if (r.hypotheses_met && r.holds == Verdict::no) ++result.failures;
  result.manifest.total_ms = elapsed_ms(start);
  return result;
}

Json verify_json(const VerifyResult& result, bool with_timing) {
  Json j;
  j["manifest"] = to_json(result.manifest, with_timing);
  Json reps = Json::array();
  for (const BoundReport& r : result.reports) reps.push_back(to_json(r, with_timing));
  j["reports"] = std::move(reps);
  std::map<std::string, std::array<std::size_t, 3>> summary;
  for (const BoundReport& r : result.reports) ++summary[r.theorem][static_cast<int>(r.holds)];
  Json s = Json::object();
  for (const auto& [name, counts] : summary)
    s[name] = {{"yes", counts[0]}, {"no", counts[1]}, {"not_applicable", counts[2]}};
  j["summary"] = std::move(s);
  j["failures"] = result.failures;
  return j;
}

Json witness_json(const Witness& w, bool with_timing) {
  Json j;
  j["k"] = w.k;
  j["family"] = w.family;
  j["seed"] = w.seed;
  j["set"] = pointset_to_json(w.set);
  j["report"] = to_json(w.report, with_timing);
  j["profile"] = w.profile;
  return j;
}

namespace {

BoundReport report_from_json(const Json& j) {
  BoundReport r;
  auto rational = [](const Json& v) -> Rational {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number()) return Rational(v.get<double>());
    return parse_rational(v.get<std::string>());
  };
  r.theorem = j.at("theorem").get<std::string>();
  r.q = j.at("q").get<std::uint32_t>();
  r.d = j.at("d").get<std::uint32_t>();
  r.e = j.at("e").get<std::uint32_t>();
  r.family = j.at("family").get<std::string>();
  r.size_e = j.at("sizeE").get<std::uint64_t>();
  if (!j.at("M").is_null()) r.M = rational(j.at("M"));
  if (!j.at("C").is_null()) r.C = rational(j.at("C"));
  r.hypotheses_met = j.at("hypotheses_met").get<bool>();
  if (r.hypotheses_met) {
    r.measured = rational(j.at("measured"));
    const std::string exact = j.at("bound_exact").get<std::string>();
    if (!exact.empty() && exact[0] == '[') {
      r.bound = {Rational(j.at("bound").get<double>()), Rational(j.at("bound").get<double>())};
    } else {
      r.bound = Interval::point(parse_rational(exact));
    }
  }
  const std::string holds = j.at("holds").get<std::string>();
  r.holds = holds == "yes" ? Verdict::yes : holds == "no" ? Verdict::no : Verdict::not_applicable;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.runtime_ms = j.at("runtime_ms").get<double>();
  if (j.contains("note")) r.note = j.at("note").get<std::string>();
  return r;
}

}  // namespace

Witness witness_from_json(const Json& j) {
  Witness w{pointset_from_json(j.at("set")), j.at("k").get<unsigned>(), j.at("family").get<std::string>(),
            j.at("seed").get<std::uint64_t>(), report_from_json(j.at("report")),
            j.at("profile").get<std::vector<std::uint32_t>>()};
  return w;
}

HuntResult run_hunt(const SweepConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  for (const FieldChoice& f : config.fields)
    for (unsigned d : config.dims) {
      try {
        if (d < 2) throw PreflightError("dimension must be >= 2");
        const Space space(Field::create(f.p, f.e), d);
      } catch (const std::invalid_argument& e) {
        throw PreflightError("infeasible cell (F_" + std::to_string(f.p) + "^" + std::to_string(f.e) +
                             ", d=" + std::to_string(d) + "): " + e.what());
      }
    }

  HuntResult result;
  result.manifest.config_digest = config_digest(config);
  result.manifest.version = RADPROJ_VERSION;
  result.manifest.master_seed = config.seed;

  struct HuntCell {
    CellInfo info;
    FamilySpec family;
    unsigned k;
  };
  std::vector<HuntCell> cells;
  for (const FieldChoice& f : config.fields)
    for (unsigned d : config.dims)
      for (unsigned k = 1; k + 1 <= d; ++k) {
        if (!config.k_grid.empty() &&
            std::find(config.k_grid.begin(), config.k_grid.end(), k) == config.k_grid.end())
          continue;
        for (const FamilySpec& fam : config.families)
          for (std::uint64_t t = 0; t < config.trials; ++t) {
            HuntCell c{{}, fam, k};
            if (c.family.kind == FamilyKind::subspace) {
              c.family.k = k;
              if (t > 0) break;  // deterministic family, one trial suffices
            }
            c.info.field = f;
            c.info.d = d;
            c.info.family = c.family.describe() + (c.family.kind == FamilyKind::random && c.family.n == 0 ? ":auto" : "");
            c.info.trial = t;
            c.info.id = cell_id(f, d, c.info.family, t) + "/k" + std::to_string(k);
            c.info.seed = cell_seed(config.seed, f.p, f.e, d, c.info.family + "/k" + std::to_string(k), t);
            cells.push_back(std::move(c));
          }
      }

  // Completed cells from an earlier run.
  std::map<std::string, Json> done;
  if (!config.checkpoint.empty()) {
    std::ifstream in(config.checkpoint);
    std::string line;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      try {
        Json j = Json::parse(line);
        std::string id = j.at("cell").get<std::string>();
        done[id] = std::move(j);
      } catch (const std::exception&) {
        // A torn final line from an interrupted run; that cell reruns.
      }
    }
  }

  std::vector<std::vector<BoundReport>> per_cell(cells.size());
  std::vector<std::vector<Witness>> per_cell_w(cells.size());
  std::vector<char> resumed(cells.size(), 0);
  std::mutex ckpt_mu;
  std::ofstream ckpt;
  if (!config.checkpoint.empty()) {
    // Terminate a torn last line so appended records start clean.
    bool torn = false;
    if (std::ifstream tail(config.checkpoint, std::ios::binary); tail && tail.seekg(-1, std::ios::end)) {
      char ch = '\n';
      torn = tail.get(ch) && ch != '\n';
    }
    ckpt.open(config.checkpoint, std::ios::app);
    if (torn) ckpt << "\n";
  }

  parallel_for(cells.size(), config.jobs, [&](std::size_t i) {
    const HuntCell& c = cells[i];
    if (const auto it = done.find(c.info.id); it != done.end()) {
      for (const Json& r : it->second.at("reports")) per_cell[i].push_back(report_from_json(r));
      for (const Json& w : it->second.at("witnesses")) per_cell_w[i].push_back(witness_from_json(w));
      resumed[i] = 1;
      return;
    }
    const Space space(Field::create(c.info.field.p, c.info.field.e), c.info.d);
    FamilySpec fam = c.family;
    if (fam.kind == FamilyKind::random && fam.n == 0) {
      // Size drawn from (q^(k-1), q^k].
      std::uint64_t lo = 1, hi = 1;
      for (unsigned i2 = 0; i2 < c.k; ++i2) hi *= space.q();
      lo = hi / space.q() + 1;
      std::mt19937_64 rng(splitmix64(c.info.seed));
      fam.n = std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
    }
    std::vector<BoundReport> reps;
    std::vector<Witness> wits;
    try {
      fam.validate(space);
      const PointSet set = generate(space, fam, c.info.seed);
      BoundReport r = conjecture_check(set, c.k);
      stamp(r, c.info.family, c.info.seed);
      if (r.hypotheses_met && r.holds == Verdict::no) {
        Witness w{set, c.k, c.info.family, c.info.seed, r, {}};
        w.profile.resize(space.num_points());
        for (PointId y = 0; y < space.num_points(); ++y)
          w.profile[y] = static_cast<std::uint32_t>(projection_size_oracle(set, y));
        wits.push_back(std::move(w));
      }
      reps.push_back(std::move(r));
    } catch (const std::exception& e) {
      BoundReport r;
      r.theorem = ids::conjecture_scan;
      r.q = space.q();
      r.d = c.info.d;
      r.e = c.info.field.e;
      r.note = std::string("skipped: ") + e.what();
      stamp(r, c.info.family, c.info.seed);
      reps.push_back(std::move(r));
    }
    if (ckpt.is_open()) {
      Json line;
      line["cell"] = c.info.id;
      line["reports"] = Json::array();
      for (const auto& r : reps) line["reports"].push_back(to_json(r, config.timing));
      line["witnesses"] = Json::array();
      for (const auto& w : wits) line["witnesses"].push_back(witness_json(w, config.timing));
      std::lock_guard lock(ckpt_mu);
      ckpt << line.dump() << "\n" << std::flush;
    }
    per_cell[i] = std::move(reps);
    per_cell_w[i] = std::move(wits);
  });

  for (std::size_t i = 0; i < cells.size(); ++i) {
    result.manifest.cells.push_back(cells[i].info);
    result.cells_resumed += resumed[i];
    for (auto& r : per_cell[i]) result.reports.push_back(std::move(r));
    for (auto& w : per_cell_w[i]) result.witnesses.push_back(std::move(w));
  }
  result.manifest.total_ms = elapsed_ms(start);
  return result;
}

Json hunt_json(const HuntResult& result, bool with_timing) {
  Json j;
  j["manifest"] = to_json(result.manifest, with_timing);
  j["cells_resumed"] = result.cells_resumed;
  Json reps = Json::array();
  for (const BoundReport& r : result.reports) reps.push_back(to_json(r, with_timing));
  j["reports"] = std::move(reps);
  Json wits = Json::array();
  for (const Witness& w : result.witnesses) wits.push_back(witness_json(w, with_timing));
  j["witnesses"] = std::move(wits);
  return j;
}

std::vector<StatsRow> run_stats(const SweepConfig& config) {
  for (const FieldChoice& f : config.fields)
    if (f.e != 1)
      throw PreflightError("stats runs over prime fields only; got F_" + std::to_string(f.p) + "^" +
                           std::to_string(f.e));
  for (unsigned d : config.dims)
    if (d != 2) throw PreflightError("stats runs in the plane only; got d = " + std::to_string(d));
  preflight(config);

  struct Job {
    FieldChoice field;
    FamilySpec family;
    std::uint64_t trial;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const FieldChoice& f : config.fields)
    for (const FamilySpec& fam : config.families)
      for (std::uint64_t t = 0; t < (fam.seeded() ? config.trials : 1); ++t)
        jobs.push_back({f, fam, t, cell_seed(config.seed, f.p, f.e, 2, fam.describe(), t)});

  std::vector<std::vector<StatsRow>> per_job(jobs.size());
  parallel_for(jobs.size(), config.jobs, [&](std::size_t i) {
    const Job& job = jobs[i];
    const Space space(Field::create(job.field.p, job.field.e), 2);
    const PointSet set = generate(space, job.family, job.seed);
    const std::vector<std::uint32_t> profile = projection_profile(set);
    const RichLines rl = rich_lines(set, 1);
    const std::uint64_t n = set.size();
    const std::uint64_t k_hi = config.stats_k_hi == 0 ? n : config.stats_k_hi;
    const RichSum rs = rich_sum_statistic(set, config.stats_k_lo, k_hi);
    for (std::uint64_t m : config.m_grid) {
      StatsRow row;
      row.field = space.field().label();
      row.family = job.family.describe();
      row.trial = job.trial;
      row.seed = job.seed;
      row.size_e = n;
      row.m = m;
      row.size_t = exceptional_set(space, profile, Rational(m), Cmp::below).size();
      row.m_11_4_over_e = n ? std::pow(static_cast<double>(m), 2.75) / static_cast<double>(n) : 0.0;
      row.m2_over_e = n ? static_cast<double>(m) * static_cast<double>(m) / static_cast<double>(n) : 0.0;
      row.histogram = rl.histogram;
      row.k_lo = config.stats_k_lo;
      row.k_hi = k_hi;
      row.rich_sum = rs.value;
      row.rich_ref = rs.reference;
      per_job[i].push_back(std::move(row));
    }
  });
  std::vector<StatsRow> rows;
  for (auto& v : per_job)
    for (auto& r : v) rows.push_back(std::move(r));
  return rows;
}

void write_stats_csv(std::ostream& out, const SweepConfig& config, const std::vector<StatsRow>& rows) {
  out << "# config_digest=" << config_digest(config) << " version=" << RADPROJ_VERSION << "\n";
  out << "field,d,family,trial,seed,sizeE,M,T,M^(11/4)/|E|,M^2/|E|,histogram,k_lo,k_hi,rich_sum,|E|^2/10\n";
  for (const StatsRow& r : rows) {
    std::ostringstream h;
    for (std::size_t j = 0; j < r.histogram.size(); ++j) h << (j ? ";" : "") << j << ":" << r.histogram[j];
    std::ostringstream row;
    row << std::setprecision(10);
    row << r.field << "," << r.d << ",\"" << r.family << "\"," << r.trial << "," << r.seed << ","
        << r.size_e << "," << r.m << "," << r.size_t << "," << r.m_11_4_over_e << "," << r.m2_over_e
        << "," << h.str() << "," << r.k_lo << "," << r.k_hi << "," << r.rich_sum.str() << ","
        << to_string(r.rich_ref);
    out << row.str() << "\n";
  }
}

}  // namespace radproj
