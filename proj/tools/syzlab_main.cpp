// syzlab: command-line front end for the strand, model and class checks.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "syzlab/harness.hpp"

namespace {

int emit(const syzlab::CommandOutcome& out, const std::string& json_path) {
  const std::string text = out.report.dump(2);
  if (json_path.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream f(json_path);
    if (!f) {
      std::cerr << "syzlab: cannot write " << json_path << '\n';
      return syzlab::kExitUsage;
    }
    f << text << '\n';
  }
  const char* verdict = out.exit_code == syzlab::kExitPass          ? "PASS"
                        : out.exit_code == syzlab::kExitCheckFailed ? "FAIL"
                        : out.exit_code == syzlab::kExitDegenerate  ? "DEGENERATE"
                                                                    : "USAGE";
  std::cerr << "syzlab: " << out.report.value("command", std::string("?")) << ": " << verdict;
  if (out.report.contains("error")) std::cerr << " (" << out.report["error"]["message"].get<std::string>() << ")";
  std::cerr << '\n';
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear strand, curve model and divisor class checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string json_path;
  std::string dump_dir;
  unsigned threads = 0;
  app.add_option("--json", json_path, "Write the JSON report here instead of stdout");
  app.add_option("--dump-matrices", dump_dir, "Write every Koszul matrix to DIR (MatrixMarket)");
  app.add_option("--threads", threads, "Worker cap (default: SYZLAB_THREADS or all cores)");

  syzlab::RunConfig cfg;
  std::string route = "both";
  std::string shape = "kk1";
  std::string suite_path;
  std::size_t expected_extra = 0;

  auto* verify = app.add_subcommand("verify-class", "Divisor class, series and rank identities for k = 3..kmax");
  verify->add_option("--kmax", cfg.kmax, "Largest k")->required();

  auto* scroll = app.add_subcommand("scroll", "Linear strand of the scroll P(O(1)^(k-2) + O(2))");
  scroll->add_option("--k", cfg.k, "k >= 3")->required();

  auto* gonal = app.add_subcommand("gonal", "Linear strand of a nodal k-gonal curve on P1xP1");
  gonal->add_option("--k", cfg.k, "k >= 3")->required();
  gonal->add_option("--prime", cfg.prime, "Field characteristic")->required();
  gonal->add_option("--seed", cfg.seed, "Model seed")->required();
  gonal->add_option("--route", route, "quotient | points | both")
      ->check(CLI::IsMember({"quotient", "points", "both"}));
  gonal->add_option("--shape", shape, "Bidegree shape: kk1 = (k, k+1), k4 = (k, 4)")
      ->check(CLI::IsMember({"kk1", "k4"}));

  auto* maxcliff = app.add_subcommand("maxcliff", "Linear strand of a nodal plane curve of genus 2k - 1");
  maxcliff->add_option("--k", cfg.k, "k >= 3")->required();
  maxcliff->add_option("--prime", cfg.prime, "Field characteristic")->required();
  maxcliff->add_option("--seed", cfg.seed, "Model seed")->required();
  maxcliff->add_option("--route", route, "quotient | points | both")
      ->check(CLI::IsMember({"quotient", "points", "both"}));

  auto* ci = app.add_subcommand("ci", "Linear strand of a complete-intersection canonical curve");
  ci->add_option("--genus", cfg.genus, "4 or 5")->required();
  ci->add_option("--prime", cfg.prime, "Field characteristic")->required();
  ci->add_option("--seed", cfg.seed, "Fixture seed")->required();

  auto* suite = app.add_subcommand("suite", "Run a JSON list of jobs");
  suite->add_option("--config", suite_path, "Suite config file")->required();

  auto* dvr = app.add_subcommand("dvr-demo", "Valuation versus corank on random U diag(t^a) V");
  dvr->add_option("--size", cfg.size, "Matrix size")->required();
  dvr->add_option("--seed", cfg.seed, "Seed")->required();
  dvr->add_option("--count", cfg.count, "Number of instances (default 1)");

  for (auto* sub : {scroll, gonal, maxcliff, ci})
    sub->add_option("--expect-extra", expected_extra, "Override the expected extra_syzygies value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return syzlab::kExitUsage;
  }

  cfg.threads = threads;
  if (!dump_dir.empty()) cfg.dump_dir = dump_dir;
  try {
    cfg.route = syzlab::route_from_string(route);
    cfg.shape = syzlab::shape_from_string(shape);
  } catch (const syzlab::ConfigError& e) {
    std::cerr << "syzlab: " << e.what() << '\n';
    return syzlab::kExitUsage;
  }

  if (suite->parsed()) {
    try {
      return emit(syzlab::cmd_suite_file(suite_path, threads), json_path);
    } catch (const syzlab::ConfigError& e) {
      std::cerr << "syzlab: " << e.what() << '\n';
      return syzlab::kExitUsage;
    }
  }

  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    if (auto* opt = sub->get_option_no_throw("--expect-extra"); opt != nullptr && opt->count() > 0)
      cfg.expected_extra = expected_extra;
  }
  return emit(syzlab::run(cfg), json_path);
}
