// radproj: verify | hunt | stats | construct
//
// Exit status: 0 clean, 1 a checked statement failed, 2 bad input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "radproj/harness.hpp"

using namespace radproj;

namespace {

struct SharedFlags {
  std::vector<std::uint32_t> p;
  std::uint32_t e = 1;
  std::vector<unsigned> d;
  std::vector<std::string> family;
  std::optional<std::uint64_t> size;
  std::vector<std::uint64_t> M;
  std::vector<std::string> C;
  std::vector<unsigned> k;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  std::string out;
  std::string format;
  std::string config;
  bool no_timing = false;
};

void add_shared(CLI::App* cmd, SharedFlags& f) {
  cmd->add_option("--p", f.p, "field characteristics (comma list)")->delimiter(',');
  cmd->add_option("--e", f.e, "extension degree for every --p");
  cmd->add_option("--d", f.d, "dimensions (comma list)")->delimiter(',');
  cmd->add_option("--family", f.family, "family spec, e.g. random:n=12,cap=3 (repeatable)");
  cmd->add_option("--size", f.size, "size n for random and collinear families");
  cmd->add_option("--M", f.M, "M grid (comma list)")->delimiter(',');
  cmd->add_option("--C", f.C, "C grid, rationals like 3/2 (comma list)")->delimiter(',');
  cmd->add_option("--k", f.k, "k grid (comma list)")->delimiter(',');
  cmd->add_option("--trials", f.trials, "trials per seeded cell");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--jobs", f.jobs, "worker threads");
  cmd->add_option("--out", f.out, "output path (default stdout)");
  cmd->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--config", f.config, "flat key = value config file");
  cmd->add_flag("--no-timing", f.no_timing, "zero the runtime fields");
}

// Flags override the config file, which overrides `base`.
SweepConfig merge(const SharedFlags& f, SweepConfig base) {
  SweepConfig c = f.config.empty() ? std::move(base) : load_config(f.config);
  if (!f.p.empty()) {
    c.fields.clear();
    for (auto p : f.p) c.fields.push_back({p, f.e});
  } else if (f.e != 1) {
    for (auto& fc : c.fields) fc.e = f.e;
  }
  if (!f.d.empty()) c.dims = f.d;
  if (!f.family.empty()) {
    c.families.clear();
    for (const auto& s : f.family) c.families.push_back(FamilySpec::parse(s));
  }
  if (f.size) {
    if (c.families.empty()) c.families.push_back(FamilySpec::parse("random"));
    for (auto& fam : c.families)
      if (fam.kind == FamilyKind::random || fam.kind == FamilyKind::collinear) fam.n = *f.size;
  }
  if (!f.M.empty()) c.m_grid = f.M;
  if (!f.C.empty()) {
    c.c_grid.clear();
    for (const auto& s : f.C) c.c_grid.push_back(parse_rational(s));
  }
  if (!f.k.empty()) c.k_grid = f.k;
  if (f.trials) c.trials = *f.trials;
  if (f.seed) c.seed = *f.seed;
  if (f.jobs) c.jobs = *f.jobs;
  if (!f.out.empty()) c.out = f.out;
  if (!f.format.empty()) c.format = f.format;
  if (f.no_timing) c.timing = false;
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  return s;
}

std::string reports_csv(const std::string& digest, const Json& reports) {
  static const char* cols[] = {"theorem", "q", "d", "e", "family", "sizeE", "M", "C",
                               "hypotheses_met", "measured", "bound", "holds", "seed",
                               "runtime_ms", "bound_exact", "note"};
  std::ostringstream os;
  os << "# config_digest=" << digest << "\n";
  for (std::size_t i = 0; i < std::size(cols); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const Json& r : reports) {
    for (std::size_t i = 0; i < std::size(cols); ++i)
      os << (i ? "," : "") << (r.contains(cols[i]) ? csv_cell(r[cols[i]]) : "");
    os << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial projections in F_q^d: bound checks, counterexample scans, statistics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RADPROJ_VERSION);

  SharedFlags vf, hf, sf, cf;
  std::vector<std::string> theorems;
  bool smoke = false;
  auto* verify = app.add_subcommand("verify", "run bound checkers over a sweep grid");
  add_shared(verify, vf);
  verify->add_option("--theorems", theorems, "statement ids or all, identities, theorems")->delimiter(',');
  verify->add_flag("--smoke", smoke, "start from the built-in smoke grid");

  std::string checkpoint;
  auto* hunt = app.add_subcommand("hunt", "scan families for counterexamples to the conjectured bound");
  add_shared(hunt, hf);
  hunt->add_option("--checkpoint", checkpoint, "append completed cells here and skip them on rerun");

  std::uint64_t k_lo = 2, k_hi = 0;
  auto* stats = app.add_subcommand("stats", "incidence statistics in F_p^2 (CSV)");
  add_shared(stats, sf);
  stats->add_option("--k-lo", k_lo, "lower richness for the weighted sum");
  stats->add_option("--k-hi", k_hi, "upper richness (0 = |E|)");

  auto* construct = app.add_subcommand("construct", "write one family as a point-set file");
  add_shared(construct, cf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      SweepConfig base = smoke ? smoke_config() : SweepConfig{};
      if (!smoke) base.theorems = {"all"};
      SweepConfig c = merge(vf, base);
      if (!theorems.empty()) c.theorems = theorems;
      const VerifyResult r = run_verify(c);
      const Json j = verify_json(r, c.timing);
      emit(c.out, c.format == "csv" ? reports_csv(r.manifest.config_digest, j["reports"]) : j.dump(2) + "\n");
      std::cerr << r.reports.size() << " reports, " << r.failures << " failures\n";
      return r.ok() ? 0 : 1;
    }
    if (*hunt) {
      SweepConfig c = merge(hf, default_hunt_config());
      if (!checkpoint.empty()) c.checkpoint = checkpoint;
      const HuntResult r = run_hunt(c);
      const Json j = hunt_json(r, c.timing);
      emit(c.out, c.format == "csv" ? reports_csv(r.manifest.config_digest, j["reports"]) : j.dump(2) + "\n");
      std::cerr << r.reports.size() << " instances, " << r.witnesses.size() << " witnesses, "
                << r.cells_resumed << " cells resumed\n";
      return 0;  // a witness is a finding, not a failure
    }
    if (*stats) {
      SweepConfig base;
      base.families = {FamilySpec::parse("random:n=40")};
      base.fields = {{13, 1}};
      base.m_grid = {5};
      base.format = "csv";
      SweepConfig c = merge(sf, base);
      c.stats_k_lo = k_lo;
      c.stats_k_hi = k_hi;
      std::ostringstream os;
      write_stats_csv(os, c, run_stats(c));
      emit(c.out, os.str());
      return 0;
    }
    if (*construct) {
      SweepConfig c = merge(cf, SweepConfig{});
      if (c.families.size() != 1) throw PreflightError("construct takes exactly one --family");
      if (c.fields.size() != 1 || c.dims.size() != 1)
        throw PreflightError("construct takes a single --p and --d");
      const FamilySpec& fam = c.families.front();
      const Space space(Field::create(c.fields[0].p, c.fields[0].e), c.dims[0]);
      fam.validate(space);
      const PointSet set = generate(space, fam, c.seed);
      std::ostringstream os;
      if (c.format == "json") {
        Json j = pointset_to_json(set);
        j["family"] = fam.describe();
        j["seed"] = c.seed;
        os << j.dump(2) << "\n";
      } else {
        write_pointset_text(os, set);
      }
      emit(c.out, os.str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "radproj: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
