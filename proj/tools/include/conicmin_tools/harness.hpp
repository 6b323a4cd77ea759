#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "conicmin/adversary.hpp"
#include "conicmin/bruteforce.hpp"
#include "conicmin/minimizer.hpp"

namespace conicmin::tools {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitInfeasible = 3,
  kExitInvariant = 4,
};

struct ProblemSpec {
  std::size_t dim = 0;
  ValueOracle objective{0, nullptr};
  std::vector<ValueOracle> constraints;
  Vector center;
  Scalar radius;
  Norm norm = Norm::kL2;
  bool exclude_origin = false;
  MinimizeParams params;
  std::uint64_t seed = 0;
};

// Throws Error(kParseError) on malformed input.
ProblemSpec parse_problem_spec(const std::string& json_text);

struct RunParams {
  std::string c_hat = "1/2";
  std::uint64_t seed = 0;
  std::uint64_t max_depth = 64;

  bool operator==(const RunParams&) const = default;
};

struct RunRecord {
  std::string status;  // OK, EMPTY or INFEASIBLE
  std::optional<std::vector<std::string>> argmin;
  std::optional<std::string> value;
  std::uint64_t oracle_calls = 0;
  std::uint64_t shrink_iterations = 0;
  std::uint64_t branches = 0;
  double wall_time_ms = 0;
  RunParams params;
  // Present with --verify.
  std::optional<std::vector<std::string>> bruteforce_argmin;
  std::optional<bool> order_equal;

  std::string to_json() const;
  static RunRecord from_json(const std::string& text);
  bool operator==(const RunRecord&) const = default;
};

RunRecord cmd_minimize(const ProblemSpec& spec, bool verify);

struct GcdResult {
  Integer a;
  Integer b;
  Integer g;
  RunRecord record;
  std::optional<bool> matches_euclid;

  std::string to_json() const;
};

GcdResult cmd_gcd(const Integer& a, const Integer& b, bool verify);

inline constexpr const char* kCsvHeader =
    "n,r,seed,variant,oracle_calls,analytic_bound,shrink_iters,branches,wall_ms";

struct BenchRow {
  std::size_t n = 0;
  long r = 0;
  std::uint64_t seed = 0;
  std::string variant;
  std::uint64_t oracle_calls = 0;
  std::optional<double> analytic_bound;
  std::uint64_t shrink_iters = 0;
  std::uint64_t branches = 0;
  double wall_ms = 0;

  std::string to_csv() const;
};

// Config: {"n":[...], "r":[...], "seeds":[...], "variants":["quadratic", ...]}.
// Variants: quadratic, max_affine, general, even.
std::vector<BenchRow> cmd_bench(const std::string& config_json);
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

// The fixed quadratic instance used by benchmarks for (n, r, seed).
ProblemInstance bench_quadratic(std::size_t n, long r, std::uint64_t seed);
BenchRow run_bench_case(std::size_t n, long r, std::uint64_t seed, const std::string& variant);

struct AdversaryOutput {
  LowerBoundReport report;
  std::string json;
  std::vector<BenchRow> rows;
};

AdversaryOutput cmd_adversary(std::size_t n, long r, Variant variant, std::size_t trials,
                              std::uint64_t seed);

// {"basis": [[...], ...]} with basis vectors as rows; cvp also reads "target".
std::string cmd_lattice(const std::string& op, const std::string& json_text);

}  // namespace conicmin::tools
