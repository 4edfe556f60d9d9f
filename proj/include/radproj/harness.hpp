#pragma once

// Sweep configuration, deterministic seeding and the verify / hunt / stats
// drivers behind the CLI.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "radproj/constructions.hpp"
#include "radproj/report.hpp"
#include "radproj/theorems.hpp"

namespace radproj {

class PreflightError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FieldChoice {
  std::uint32_t p = 3;
  std::uint32_t e = 1;

  friend bool operator==(const FieldChoice&, const FieldChoice&) = default;
};

struct SweepConfig {
  std::vector<FieldChoice> fields{{3, 1}};
  std::vector<unsigned> dims{2};
  std::vector<FamilySpec> families;
  /// Statement ids (see theorems.hpp), or "all", "identities", "theorems".
  std::vector<std::string> theorems;
  std::vector<std::uint64_t> m_grid{1};
  std::vector<Rational> c_grid{Rational(2)};
  std::vector<unsigned> k_grid{1};
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out;
  std::string format = "json";
  bool timing = true;
  std::string checkpoint;
  /// Richness range for the stats command; k_hi = 0 means |E|.
  std::uint64_t stats_k_lo = 2;
  std::uint64_t stats_k_hi = 0;
  /// Lines disjoint from E tried per instance by t_on_a_line.
  unsigned lines_per_instance = 3;
};

/// Flat "key = value" document; '#' starts a comment. List values are
/// comma-separated, except families, which are ';'-separated.
SweepConfig parse_config(std::istream& in);
SweepConfig load_config(const std::filesystem::path& path);
/// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const SweepConfig& config);
/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string config_digest(const SweepConfig& config);

/// F_3^2 and F_5^2, all identity checks over a few families.
SweepConfig smoke_config();
/// q in {3,5,7}, d in {2,3}, k in 1..d-1, subspace and random families.
SweepConfig default_hunt_config();

/// Expanded list of statement ids; throws PreflightError on unknown names.
std::vector<std::string> resolve_theorems(const std::vector<std::string>& names);

/// Rejects cells that exceed the desk caps or whose family does not fit,
/// naming the offending cell.
void preflight(const SweepConfig& config);

/// Seed for one instance: splitmix64 folded over (master, p, e, d,
/// FNV-1a(family description), trial). Independent of scheduling.
std::uint64_t cell_seed(std::uint64_t master, std::uint32_t p, std::uint32_t e, unsigned d,
                        const std::string& family, std::uint64_t trial);

struct CellInfo {
  std::string id;  // "p^e/d/family/trial" (hunt cells also carry "/k")
  FieldChoice field;
  unsigned d = 0;
  std::string family;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
};

struct RunManifest {
  std::string config_digest;
  std::string version;
  std::uint64_t master_seed = 0;
  std::vector<CellInfo> cells;
  double total_ms = 0.0;
};

Json to_json(const RunManifest& manifest, bool with_timing = true);

struct VerifyResult {
  RunManifest manifest;
  std::vector<BoundReport> reports;
  std::size_t failures = 0;  // hypotheses met and holds = no

  bool ok() const { return failures == 0; }
};

VerifyResult run_verify(const SweepConfig& config);
Json verify_json(const VerifyResult& result, bool with_timing);

struct Witness {
  PointSet set;
  unsigned k = 0;
  std::string family;
  std::uint64_t seed = 0;
  BoundReport report;
  std::vector<std::uint32_t> profile;  // oracle projection size per center
};

Json witness_json(const Witness& w, bool with_timing = true);
Witness witness_from_json(const Json& j);

struct HuntResult {
  RunManifest manifest;
  std::vector<BoundReport> reports;
  std::vector<Witness> witnesses;
  std::size_t cells_resumed = 0;
};

/// Runs the conjecture scan over every (field, d, k, family, trial) cell.
/// When config.checkpoint is set, completed cells are appended there and
/// skipped on the next run.
HuntResult run_hunt(const SweepConfig& config);
Json hunt_json(const HuntResult& result, bool with_timing);

struct StatsRow {
  std::string field;
  unsigned d = 2;
  std::string family;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t size_e = 0;
  std::uint64_t m = 0;
  std::uint64_t size_t = 0;  // #{y : |pi^y(E)| < M}
  double m_11_4_over_e = 0;
  double m2_over_e = 0;
  std::vector<std::uint64_t> histogram;
  std::uint64_t k_lo = 0, k_hi = 0;
  BigInt rich_sum;
  Rational rich_ref;
};

/// Incidence statistics in F_p^2; rejects extension fields and d != 2.
std::vector<StatsRow> run_stats(const SweepConfig& config);
void write_stats_csv(std::ostream& out, const SweepConfig& config, const std::vector<StatsRow>& rows);

}  // namespace radproj
