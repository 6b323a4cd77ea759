#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "conicmin/error.hpp"
#include "conicmin_tools/harness.hpp"

namespace {

using namespace conicmin;
using namespace conicmin::tools;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_minimize(const std::string& path, bool verify, bool require_feasible) {
  RunRecord rec = cmd_minimize(parse_problem_spec(read_file(path)), verify);
  std::cout << rec.to_json() << '\n';
  if (rec.order_equal && !*rec.order_equal) {
    std::cerr << "verify: minimizer disagrees with brute force\n";
    return kExitInvariant;
  }
  if (require_feasible && rec.status != "OK") return kExitInfeasible;
  return kExitOk;
}

int run_gcd(const std::string& a, const std::string& b, bool verify) {
  Integer ia, ib;
  if (ia.set_str(a, 10) != 0 || ib.set_str(b, 10) != 0) {
    throw Error(ErrorCode::kParseError, "gcd arguments must be integers");
  }
  GcdResult res = cmd_gcd(ia, ib, verify);
  std::cout << res.to_json() << '\n';
  if (res.matches_euclid && !*res.matches_euclid) {
    std::cerr << "verify: result differs from Euclid's algorithm\n";
    return kExitInvariant;
  }
  return kExitOk;
}

int run_bench(const std::string& config, const std::string& out_path) {
  auto rows = cmd_bench(read_file(config));
  if (out_path.empty() || out_path == "-") {
    write_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + out_path);
    write_csv(out, rows);
  }
  return kExitOk;
}

int run_adversary(std::size_t n, long r, const std::string& variant, std::size_t trials,
                  std::uint64_t seed, const std::string& csv_path) {
  AdversaryOutput out = cmd_adversary(n, r, parse_variant(variant), trials, seed);
  std::cout << out.json << '\n';
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw Error(ErrorCode::kInvalidArgument, "cannot write " + csv_path);
    write_csv(csv, out.rows);
  }
  if (!out.report.all_match()) {
    std::cerr << "adversary: minimizer disagrees with brute force\n";
    return kExitInvariant;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer minimization of conic functions with a comparison oracle"};
  app.require_subcommand(1);

  std::string spec_path;
  bool verify = false;
  bool require_feasible = false;
  auto* minimize_cmd = app.add_subcommand("minimize", "Minimize a problem spec");
  minimize_cmd->add_option("spec", spec_path, "Problem spec JSON")->required();
  minimize_cmd->add_flag("--verify", verify, "Cross-check against brute force");
  minimize_cmd->add_flag("--require-feasible", require_feasible,
                         "Exit with 3 when the result violates a constraint");

  std::string ga, gb;
  bool gcd_verify = false;
  auto* gcd_cmd = app.add_subcommand("gcd", "gcd(a, b) by lattice minimization");
  gcd_cmd->add_option("a", ga)->required();
  gcd_cmd->add_option("b", gb)->required();
  gcd_cmd->add_flag("--verify", gcd_verify, "Compare with Euclid's algorithm");

  std::string bench_config, bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid, emit CSV");
  bench_cmd->add_option("config", bench_config, "Grid config JSON")->required();
  bench_cmd->add_option("--out", bench_out, "CSV output path (default stdout)");

  std::size_t adv_n = 1;
  long adv_r = 2;
  std::string adv_variant = "general";
  std::size_t adv_trials = 1;
  std::uint64_t adv_seed = 0;
  std::string adv_csv;
  auto* adv_cmd = app.add_subcommand("adversary", "Lower-bound family report");
  adv_cmd->add_option("--n", adv_n)->required();
  adv_cmd->add_option("--r", adv_r)->required();
  adv_cmd->add_option("--variant", adv_variant)->check(CLI::IsMember({"general", "even"}));
  adv_cmd->add_option("--trials", adv_trials);
  adv_cmd->add_option("--seed", adv_seed);
  adv_cmd->add_option("--csv", adv_csv, "Also write CSV rows here");

  std::string lattice_op, lattice_path;
  auto* lattice_cmd = app.add_subcommand("lattice", "Lattice reduction and SVP/CVP");
  lattice_cmd->add_option("op", lattice_op)->required()->check(CLI::IsMember({"svp", "cvp", "lll"}));
  lattice_cmd->add_option("basis", lattice_path, "Basis JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (*minimize_cmd) return run_minimize(spec_path, verify, require_feasible);
    if (*gcd_cmd) return run_gcd(ga, gb, gcd_verify);
    if (*bench_cmd) return run_bench(bench_config, bench_out);
    if (*adv_cmd) return run_adversary(adv_n, adv_r, adv_variant, adv_trials, adv_seed, adv_csv);
    if (*lattice_cmd) {
      std::cout << cmd_lattice(lattice_op, read_file(lattice_path)) << '\n';
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kParseError ? kExitParse : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
