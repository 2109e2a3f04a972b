#include "syzlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "syzlab/bigint.hpp"
#include "syzlab/class_verifier.hpp"
#include "syzlab/dvr.hpp"
#include "syzlab/errors.hpp"
#include "syzlab/exterior.hpp"
#include "syzlab/parallel.hpp"
#include "syzlab/rng.hpp"

namespace syzlab {

using json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

unsigned thread_cap(const RunConfig& c) { return c.threads == 0 ? default_thread_count() : c.threads; }

class Checks {
 public:
  void add(std::string name, bool passed, json detail = nullptr) {
    json c;
    c["name"] = std::move(name);
    c["passed"] = passed;
    if (!detail.is_null()) c["detail"] = std::move(detail);
    all_ &= passed;
    list_.push_back(std::move(c));
  }
  void add(const SelfCheckReport& report, const std::string& prefix) {
    for (const auto& c : report.checks)
      add(prefix + c.name, c.passed, c.detail.empty() ? json(nullptr) : json(c.detail));
  }
  bool passed() const { return all_; }
  json to_json() const { return list_; }

 private:
  json list_ = json::array();
  bool all_ = true;
};

json base_report(const RunConfig& c) {
  json r;
  r["schema"] = kReportSchemaVersion;
  r["command"] = c.command;
  r["rng"] = Rng::kRngVersion;
  return r;
}

KoszulOptions koszul_options(const RunConfig& c, const std::string& prefix) {
  KoszulOptions o;
  o.threads = thread_cap(c);
  o.dump_dir = c.dump_dir;
  o.dump_prefix = prefix;
  return o;
}

std::size_t expected_k11(std::size_t g) { return (g - 2) * (g - 3) / 2; }

// Shared strand checks. j is the extra_syzygies index.
void strand_checks(Checks& checks, const StrandResult& strand, const std::string& prefix) {
  checks.add(prefix + "compositions_zero", strand.all_compositions_zero());
  checks.add(prefix + "vanishing_propagates", strand.vanishing_propagates());
}

std::size_t extra_from_strand(const StrandResult& strand, std::size_t j) {
  if (j < 2 || j + 1 > strand.h0L)
    throw IndexOutOfRange("extra_syzygies index j = " + std::to_string(j) + " outside [2, " +
                          std::to_string(strand.h0L - 1) + "]");
  return strand.at_p(strand.h0L - j).dim;
}

json extra_json(std::size_t j, std::size_t value, std::size_t expected) {
  json e;
  e["j"] = j;
  e["value"] = value;
  e["expected"] = expected;
  return e;
}

// Builds the tables requested by the route, with their self checks, then the
// strands and the route-agreement check. Returns the first strand.
StrandResult curve_strands(const RunConfig& c, const NodalCurve& curve, Checks& checks, json& report) {
  const std::size_t g = static_cast<std::size_t>(curve.genus());
  json routes;
  std::vector<StrandResult> strands;
  auto run_route = [&](const std::string& name, const MulTable& table) {
    checks.add(table_selfcheck(table, g, 3 * g - 3), name + ".");
    StrandResult s = linear_strand(table, koszul_options(c, name));
    strand_checks(checks, s, name + ".");
    routes[name] = strand_json(s);
    strands.push_back(std::move(s));
  };
  if (c.route != Route::Points) run_route("quotient", mul_table_quotient(curve));
  if (c.route != Route::Quotient) run_route("points", mul_table_eval(curve));
  if (strands.size() == 2) checks.add("routes_agree", strands[0].dims() == strands[1].dims());
  report["routes"] = std::move(routes);
  checks.add("k11", strands.front().at_p(1).dim == expected_k11(g),
             json{{"value", strands.front().at_p(1).dim}, {"expected", expected_k11(g)}});
  return strands.front();
}

void finish(json& report, const Checks& checks, Clock::time_point start, CommandOutcome& out) {
  report["checks"] = checks.to_json();
  report["passed"] = checks.passed();
  report["total_ms"] = ms_since(start);
  out.report = std::move(report);
  out.exit_code = checks.passed() ? kExitPass : kExitCheckFailed;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

std::string to_string(Route route) {
  switch (route) {
    case Route::Quotient: return "quotient";
    case Route::Points: return "points";
    case Route::Both: return "both";
  }
  return "both";
}

Route route_from_string(const std::string& name) {
  if (name == "quotient") return Route::Quotient;
  if (name == "points") return Route::Points;
  if (name == "both") return Route::Both;
  throw ConfigError("unknown route '" + name + "' (expected quotient, points or both)");
}

std::string to_string(GonalShape shape) { return shape == GonalShape::K4 ? "k4" : "kk1"; }

GonalShape shape_from_string(const std::string& name) {
  if (name == "k4") return GonalShape::K4;
  if (name == "kk1") return GonalShape::KK1;
  throw ConfigError("unknown gonal shape '" + name + "' (expected k4 or kk1)");
}

void validate(const RunConfig& c) {
  const std::string& cmd = c.command;
  if (cmd == "verify-class") {
    require(c.kmax >= 3, "verify-class needs kmax >= 3");
    return;
  }
  if (cmd == "dvr-demo") {
    require(c.size >= 1, "dvr-demo needs size >= 1");
    require(c.count >= 1, "dvr-demo needs count >= 1");
    require(is_prime(c.prime) && c.prime > 2 && c.prime < (1u << 31), "prime must be an odd prime below 2^31");
    return;
  }
  if (cmd == "scroll") {
    require(c.k >= 3, "scroll needs k >= 3");
    return;
  }
  if (cmd != "gonal" && cmd != "maxcliff" && cmd != "ci")
    throw ConfigError("unknown command '" + cmd + "'");
  require(is_prime(c.prime) && c.prime >= 1000 && c.prime < (1u << 31),
          "prime must be a prime in [1000, 2^31)");
  if (cmd == "ci")
    require(c.genus == 4 || c.genus == 5, "ci needs genus 4 or 5");
  else
    require(c.k >= 3, cmd + " needs k >= 3");
}

RunConfig run_config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("suite entry is not an object");
  static const std::vector<std::string> known = {"command", "k",     "genus",          "kmax",   "size",
                                                 "count",   "prime", "seed",           "route",  "shape",
                                                 "expected_extra", "output", "dump_matrices", "threads"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown config key '" + key + "'");
  try {
    RunConfig c;
    c.command = doc.at("command").get<std::string>();
    if (doc.contains("k")) c.k = doc["k"].get<int>();
    if (doc.contains("genus")) c.genus = doc["genus"].get<int>();
    if (doc.contains("kmax")) c.kmax = doc["kmax"].get<int>();
    if (doc.contains("size")) c.size = doc["size"].get<int>();
    if (doc.contains("count")) c.count = doc["count"].get<int>();
    if (doc.contains("prime")) c.prime = doc["prime"].get<std::uint32_t>();
    if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("route")) c.route = route_from_string(doc["route"].get<std::string>());
    if (doc.contains("shape")) c.shape = shape_from_string(doc["shape"].get<std::string>());
    if (doc.contains("expected_extra")) c.expected_extra = doc["expected_extra"].get<std::size_t>();
    if (doc.contains("output")) c.output = doc["output"].get<std::string>();
    if (doc.contains("dump_matrices")) c.dump_dir = doc["dump_matrices"].get<std::string>();
    if (doc.contains("threads")) c.threads = doc["threads"].get<unsigned>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config entry: ") + e.what());
  }
}

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  if (c.command == "verify-class") {
    j["kmax"] = c.kmax;
    return j;
  }
  if (c.command == "dvr-demo") {
    j["size"] = c.size;
    j["count"] = c.count;
  } else if (c.command == "ci") {
    j["genus"] = c.genus;
  } else {
    j["k"] = c.k;
  }
  if (c.command != "scroll") {
    j["prime"] = c.prime;
    j["seed"] = c.seed;
  }
  if (c.command == "gonal" || c.command == "maxcliff") j["route"] = to_string(c.route);
  if (c.command == "gonal") j["shape"] = to_string(c.shape);
  if (c.expected_extra) j["expected_extra"] = *c.expected_extra;
  return j;
}

json strand_json(const StrandResult& strand) {
  json rows = json::array();
  for (const auto& e : strand.entries) {
    json r;
    r["p"] = e.p;
    r["dim"] = e.dim;
    r["nullity"] = e.nullity2;
    r["rank_delta1"] = e.rank1;
    r["rank_delta2"] = e.rank2;
    r["delta2_shape"] = {e.delta2_rows, e.delta2_cols};
    r["composition_zero"] = e.composition_zero;
    r["elapsed_ms"] = e.elapsed_ms;
    rows.push_back(std::move(r));
  }
  json s;
  s["h0L"] = strand.h0L;
  s["h0L2"] = strand.h0L2;
  s["dims"] = strand.dims();
  s["entries"] = std::move(rows);
  return s;
}

// ---------------------------------------------------------------------------
// Commands

CommandOutcome cmd_verify_class(const RunConfig& c) {
  const auto start = Clock::now();
  CommandOutcome out;
  json report = base_report(c);
  report["params"] = to_json(c);
  const auto results = verify_class_range(c.kmax, thread_cap(c));
  Checks checks;
  json entries = json::array();
  bool agree = true, ratio = true, id1 = true, id2 = true, rank = true;
  for (const auto& r : results) {
    entries.push_back(to_json(r));
    agree &= r.agree_ok;
    ratio &= r.ratio_ok;
    id1 &= r.id1_ok;
    id2 &= r.id2_ok;
    rank &= r.rank_ok;
  }
  report["entries"] = std::move(entries);
  checks.add("n_values_agree", agree);
  checks.add("ratio_k_minus_1", ratio);
  checks.add("series_identity_1", id1);
  checks.add("series_identity_2", id2);
  checks.add("rank_identity", rank);
  finish(report, checks, start, out);
  return out;
}

CommandOutcome cmd_scroll(const RunConfig& c) {
  const auto start = Clock::now();
  CommandOutcome out;
  json report = base_report(c);
  report["params"] = to_json(c);
  const int k = c.k;
  report["model"] = {{"kind", "scroll"}, {"k", k}, {"summands", "O(1)^" + std::to_string(k - 2) + " + O(2)"}};
  Checks checks;
  const MulTable table = scroll_mul_table(k, PrimeField(c.prime));
  checks.add(table_selfcheck(table, static_cast<std::size_t>(2 * k - 1), scroll_h0L2(k)), "table.");
  const StrandResult strand = linear_strand(table, koszul_options(c, "scroll"));
  strand_checks(checks, strand, "");
  report["strand"] = strand_json(strand);

  std::vector<std::size_t> expected;
  for (std::size_t p = 1; p + 2 <= table.h0L(); ++p)
    expected.push_back(p * static_cast<std::size_t>(binom64(static_cast<unsigned>(k), p + 1)));
  checks.add("eagon_northcott", strand.dims() == expected, json(expected));

  const std::size_t j = static_cast<std::size_t>(k);
  const std::size_t extra = extra_from_strand(strand, j);
  const std::size_t want = c.expected_extra.value_or(static_cast<std::size_t>(k - 1));
  report["extra_syzygies"] = extra_json(j, extra, want);
  checks.add("extra_syzygies", extra == want);
  finish(report, checks, start, out);
  return out;
}

CommandOutcome cmd_gonal(const RunConfig& c) {
  const auto start = Clock::now();
  CommandOutcome out;
  json report = base_report(c);
  report["params"] = to_json(c);
  const NodalCurve curve = fit_nodal_bideg(c.k, PrimeField(c.prime), c.seed, c.shape);
  report["model"] = to_json(curve);
  Checks checks;
  checks.add(model_selfcheck(curve), "model.");
  const StrandResult strand = curve_strands(c, curve, checks, report);
  report["strand"] = strand_json(strand);

  const std::size_t k = static_cast<std::size_t>(c.k);
  const std::size_t extra = extra_from_strand(strand, k);
  const std::size_t want = c.expected_extra.value_or(k - 1);
  report["extra_syzygies"] = extra_json(k, extra, want);
  checks.add("extra_syzygies", extra == want);

  const std::size_t nullity = strand.at_p(k - 1).nullity2;
  const BigInt bound = big_binom(static_cast<long>(2 * k - 1), static_cast<long>(k - 1)) + BigInt(k - 1);
  checks.add("gonal_nullity_bound", BigInt(nullity) >= bound,
             json{{"nullity", nullity}, {"bound", to_string(bound)}});

  const StrandResult scroll = linear_strand(scroll_mul_table(c.k, PrimeField(c.prime)), koszul_options(c, "scroll"));
  bool dominates = scroll.entries.size() == strand.entries.size();
  for (std::size_t i = 0; dominates && i < strand.entries.size(); ++i)
    dominates = strand.entries[i].dim >= scroll.entries[i].dim;
  checks.add("dominates_scroll", dominates, json(scroll.dims()));
  finish(report, checks, start, out);
  return out;
}

CommandOutcome cmd_maxcliff(const RunConfig& c) {
  const auto start = Clock::now();
  CommandOutcome out;
  json report = base_report(c);
  report["params"] = to_json(c);
  const PlaneParams pp = maxcliff_params(c.k);
  const NodalCurve curve = fit_nodal_plane(pp.degree, pp.nodes, PrimeField(c.prime), c.seed);
  report["model"] = to_json(curve);
  Checks checks;
  checks.add(model_selfcheck(curve), "model.");
  const StrandResult strand = curve_strands(c, curve, checks, report);
  report["strand"] = strand_json(strand);
  const std::size_t j = static_cast<std::size_t>(c.k);
  const std::size_t extra = extra_from_strand(strand, j);
  const std::size_t want = c.expected_extra.value_or(0);
  report["extra_syzygies"] = extra_json(j, extra, want);
  checks.add("extra_syzygies", extra == want);
  finish(report, checks, start, out);
  return out;
}

CommandOutcome cmd_ci(const RunConfig& c) {
  const auto start = Clock::now();
  CommandOutcome out;
  json report = base_report(c);
  report["params"] = to_json(c);
  const CIFixture fx = make_ci_fixture(c.genus, PrimeField(c.prime), c.seed);
  report["model"] = to_json(fx);
  const std::size_t g = static_cast<std::size_t>(c.genus);
  const MulTable table = ci_mul_table(fx);
  Checks checks;
  checks.add(table_selfcheck(table, g, 3 * g - 3), "table.");
  const StrandResult strand = linear_strand(table, koszul_options(c, "ci"));
  strand_checks(checks, strand, "");
  report["strand"] = strand_json(strand);
  checks.add("k11", strand.at_p(1).dim == expected_k11(g));
  const std::size_t j = (g + 1) / 2;
  const std::size_t extra = extra_from_strand(strand, j);
  const std::size_t want = c.expected_extra.value_or(0);
  report["extra_syzygies"] = extra_json(j, extra, want);
  checks.add("extra_syzygies", extra == want);
  finish(report, checks, start, out);
  return out;
}

CommandOutcome cmd_dvr_demo(const RunConfig& c) {
  const auto start = Clock::now();
  CommandOutcome out;
  json report = base_report(c);
  report["params"] = to_json(c);
  const PrimeField F(c.prime);
  Rng rng(c.seed);
  json instances = json::array();
  std::size_t ok_count = 0, equality_mismatch = 0;
  for (int i = 0; i < c.count; ++i) {
    const std::size_t n = static_cast<std::size_t>(c.size);
    // a third of the instances only use exponents 0 and 1
    const unsigned top = rng.below(3) == 0 ? 1 : 3;
    std::vector<unsigned> exps(n);
    for (auto& e : exps) e = static_cast<unsigned>(rng.below(top + 1));
    const PolyMatrix m = random_smith_instance(exps, F, rng);
    const DegeneracyCheck chk = dvr_degeneracy_check(m);
    const bool all_ones = std::all_of(exps.begin(), exps.end(), [](unsigned e) { return e <= 1; });
    const bool equality = chk.detval == chk.corank0;
    ok_count += chk.ok;
    equality_mismatch += equality != all_ones;
    json r;
    r["exponents"] = exps;
    r["corank0"] = chk.corank0;
    r["detval"] = chk.detval;
    r["ok"] = chk.ok;
    r["equality"] = equality;
    instances.push_back(std::move(r));
  }
  report["instances"] = std::move(instances);
  Checks checks;
  checks.add("valuation_at_least_corank", ok_count == static_cast<std::size_t>(c.count));
  checks.add("equality_iff_unit_exponents", equality_mismatch == 0);
  finish(report, checks, start, out);
  return out;
}

CommandOutcome run(const RunConfig& c) {
  CommandOutcome out;
  auto error_report = [&](int code, const std::string& kind, const std::string& message) {
    json r = base_report(c);
    r["params"] = to_json(c);
    r["error"] = {{"kind", kind}, {"message", message}};
    r["passed"] = false;
    out.exit_code = code;
    out.report = std::move(r);
  };
  try {
    validate(c);
    const std::string& cmd = c.command;
    if (cmd == "verify-class") return cmd_verify_class(c);
    if (cmd == "scroll") return cmd_scroll(c);
    if (cmd == "gonal") return cmd_gonal(c);
    if (cmd == "maxcliff") return cmd_maxcliff(c);
    if (cmd == "ci") return cmd_ci(c);
    if (cmd == "dvr-demo") return cmd_dvr_demo(c);
    throw ConfigError("unknown command '" + cmd + "'");
  } catch (const ConfigError& e) {
    error_report(kExitUsage, "usage", e.what());
  } catch (const DegenerateInstance& e) {
    error_report(kExitDegenerate, "degenerate_instance", e.what());
  } catch (const InsufficientPoints& e) {
    error_report(kExitDegenerate, "insufficient_points", e.what());
  } catch (const std::exception& e) {
    error_report(kExitCheckFailed, "error", e.what());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suite

CommandOutcome cmd_suite(const json& entries, unsigned threads) {
  const auto start = Clock::now();
  if (!entries.is_array()) throw ConfigError("suite config must be a JSON list");
  std::vector<RunConfig> configs;
  for (const auto& e : entries) {
    configs.push_back(run_config_from_json(e));
    validate(configs.back());
  }
  std::vector<CommandOutcome> outcomes(configs.size());
  const unsigned jobs = threads == 0 ? default_thread_count() : threads;
  parallel_for(0, configs.size(), jobs,
               [&](std::size_t i) {
                 RunConfig c = configs[i];
                 if (c.threads == 0) c.threads = 1;
                 outcomes[i] = run(c);
               },
               1);

  json summary;
  summary["schema"] = kReportSchemaVersion;
  summary["command"] = "suite";
  summary["rng"] = Rng::kRngVersion;
  json list = json::array();
  bool any_failed = false, any_degenerate = false;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    json e;
    e["index"] = i;
    e["config"] = to_json(configs[i]);
    e["exit_code"] = outcomes[i].exit_code;
    e["passed"] = outcomes[i].exit_code == kExitPass;
    e["report"] = outcomes[i].report;
    list.push_back(std::move(e));
    any_failed |= outcomes[i].exit_code == kExitCheckFailed || outcomes[i].exit_code == kExitUsage;
    any_degenerate |= outcomes[i].exit_code == kExitDegenerate;
    if (configs[i].output) {
      std::ofstream f(*configs[i].output);
      f << outcomes[i].report.dump(2) << '\n';
    }
  }
  summary["entries"] = std::move(list);
  summary["passed"] = !any_failed && !any_degenerate;
  summary["total_ms"] = ms_since(start);
  CommandOutcome out;
  out.exit_code = any_failed ? kExitCheckFailed : any_degenerate ? kExitDegenerate : kExitPass;
  out.report = std::move(summary);
  return out;
}

CommandOutcome cmd_suite_file(const std::string& path, unsigned threads) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read suite config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("suite config is not valid JSON: " + std::string(e.what()));
  }
  return cmd_suite(doc, threads);
}

json strip_timing(json report) {
  if (report.is_object()) {
    report.erase("elapsed_ms");
    report.erase("total_ms");
    for (auto& [key, value] : report.items()) value = strip_timing(value);
  } else if (report.is_array()) {
    for (auto& value : report) value = strip_timing(value);
  }
  return report;
}

}  // namespace syzlab
