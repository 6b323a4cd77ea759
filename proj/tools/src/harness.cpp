#include "conicmin_tools/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>

#include <json.hpp>

#include "conicmin/error.hpp"
#include "conicmin/function_spec.hpp"

namespace conicmin::tools {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& message) {
  throw Error(ErrorCode::kParseError, message);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

Scalar scalar_of(const json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(Integer(std::to_string(j.get<long long>()), 10));
  parse_fail("rational literal must be a \"p/q\" string or an integer");
}

Vector vector_of(const json& j) {
  if (!j.is_array()) parse_fail("expected an array of rationals");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = scalar_of(j[i]);
  return v;
}

std::vector<std::string> strings_of(const Vector& v) {
  std::vector<std::string> out;
  for (const Scalar& s : v) out.push_back(format_scalar(s));
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

// Smallest integer R with R^2 >= value.
Integer ceil_sqrt(const Scalar& value) {
  Integer s = sqrt(Integer(ceil_of(value)));
  while (Scalar(s * s) < value) s += 1;
  return s;
}

// |x_i - c_i| - r as a max of two affine forms.
ValueOracle box_constraint(std::size_t n, std::size_t i, const Scalar& c, const Scalar& r) {
  Vector e(n);
  e[i] = 1;
  Vector neg(n);
  neg[i] = -1;
  return combinator_max({linear_oracle(e, -c - r), linear_oracle(neg, c - r)},
                        {Scalar(1), Scalar(1)});
}

ValueOracle reduced(const ValueOracle& objective, const std::vector<ValueOracle>& constraints) {
  if (constraints.empty()) return objective;
  return constrained_reduction(objective, constraints);
}

RunParams echo(const ProblemSpec& spec) {
  return RunParams{format_scalar(spec.params.c_hat), spec.seed,
                   static_cast<std::uint64_t>(spec.params.max_depth)};
}

}  // namespace

ProblemSpec parse_problem_spec(const std::string& json_text) {
  json root = parse_json(json_text);
  try {
    if (!root.is_object()) parse_fail("problem spec must be an object");
    ProblemSpec spec;
    spec.objective = parse_function_spec(root.at("objective").dump());
    spec.dim = spec.objective.dim();
    if (root.contains("constraints")) {
      for (const auto& c : root.at("constraints")) {
        spec.constraints.push_back(parse_function_spec(c.dump()));
        if (spec.constraints.back().dim() != spec.dim) parse_fail("constraint dimension mismatch");
      }
    }
    const json& dom = root.at("domain");
    spec.center = dom.contains("center") ? vector_of(dom.at("center")) : Vector(spec.dim);
    if (spec.center.size() != spec.dim) parse_fail("domain center dimension mismatch");
    spec.radius = scalar_of(dom.at("radius"));
    if (spec.radius < 1) parse_fail("domain radius must be at least 1");
    std::string norm = dom.value("norm", std::string("l2"));
    if (norm == "l2") {
      spec.norm = Norm::kL2;
    } else if (norm == "linf") {
      spec.norm = Norm::kLinf;
    } else {
      parse_fail("domain norm must be \"l2\" or \"linf\"");
    }
    spec.exclude_origin = dom.value("exclude_origin", false);
    if (root.contains("params")) {
      const json& p = root.at("params");
      if (p.contains("c_hat")) spec.params.c_hat = scalar_of(p.at("c_hat"));
      if (!(sgn(spec.params.c_hat) > 0 && spec.params.c_hat <= 1)) {
        parse_fail("c_hat must lie in (0, 1]");
      }
      spec.seed = p.value("seed", std::uint64_t{0});
      spec.params.max_depth = p.value("max_depth", std::size_t{64});
    }
    return spec;
  } catch (const json::exception& e) {
    parse_fail(std::string("malformed problem spec: ") + e.what());
  }
}

std::string RunRecord::to_json() const {
  json j;
  j["status"] = status;
  j["argmin"] = argmin ? json(*argmin) : json(nullptr);
  j["value"] = value ? json(*value) : json(nullptr);
  j["oracle_calls"] = oracle_calls;
  j["shrink_iterations"] = shrink_iterations;
  j["branches"] = branches;
  j["wall_time_ms"] = wall_time_ms;
  j["params"] = {{"c_hat", params.c_hat}, {"seed", params.seed}, {"max_depth", params.max_depth}};
  if (order_equal) {
    j["verify"] = {{"bruteforce_argmin", bruteforce_argmin ? json(*bruteforce_argmin) : json(nullptr)},
                   {"order_equal", *order_equal}};
  }
  return j.dump(2);
}

RunRecord RunRecord::from_json(const std::string& text) {
  json j = parse_json(text);
  try {
    RunRecord r;
    r.status = j.at("status").get<std::string>();
    if (!j.at("argmin").is_null()) r.argmin = j.at("argmin").get<std::vector<std::string>>();
    if (!j.at("value").is_null()) r.value = j.at("value").get<std::string>();
    r.oracle_calls = j.at("oracle_calls").get<std::uint64_t>();
    r.shrink_iterations = j.at("shrink_iterations").get<std::uint64_t>();
    r.branches = j.at("branches").get<std::uint64_t>();
    r.wall_time_ms = j.at("wall_time_ms").get<double>();
    const json& p = j.at("params");
    r.params = RunParams{p.at("c_hat").get<std::string>(), p.at("seed").get<std::uint64_t>(),
                         p.at("max_depth").get<std::uint64_t>()};
    if (j.contains("verify")) {
      const json& v = j.at("verify");
      if (!v.at("bruteforce_argmin").is_null()) {
        r.bruteforce_argmin = v.at("bruteforce_argmin").get<std::vector<std::string>>();
      }
      r.order_equal = v.at("order_equal").get<bool>();
    }
    return r;
  } catch (const json::exception& e) {
    parse_fail(std::string("malformed run record: ") + e.what());
  }
}

RunRecord cmd_minimize(const ProblemSpec& spec, bool verify) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = spec.dim;
  std::vector<ValueOracle> constraints = spec.constraints;
  Scalar ball = spec.radius;
  if (spec.norm == Norm::kLinf) {
    for (std::size_t i = 0; i < n; ++i) {
      constraints.push_back(box_constraint(n, i, spec.center[i], spec.radius));
    }
    ball = Scalar(ceil_sqrt(spec.radius * spec.radius * Scalar(static_cast<unsigned long>(n))));
  }
  const ValueOracle h = reduced(spec.objective, constraints);
  const ComparisonOracle base = from_value_oracle(h);

  RunRecord rec;
  rec.params = echo(spec);
  std::optional<Vector> best;
  auto absorb = [&](const MinimizeResult& res) {
    rec.oracle_calls += res.oracle_calls;
    rec.shrink_iterations += res.total_shrink_iterations();
    rec.branches += res.total_branches();
    if (!res.point) return;
    if (!best || !base.compare_leq(*best, *res.point)) best = res.point;
  };

  if (!spec.exclude_origin) {
    absorb(minimize(ProblemInstance{base, spec.center, ball, LatticeBasis::integer_lattice(n),
                                    Matrix(0, n), Vector(0)},
                    spec.params));
  } else {
    // Z^n \ {0} is the disjoint union over k and s = ±1 of
    // {s x_k >= 1, x_j = 0 for j > k}.
    for (std::size_t k = 0; k < n; ++k) {
      for (int s : {1, -1}) {
        Vector e(n);
        e[k] = -s;
        std::vector<ValueOracle> piece = constraints;
        piece.push_back(linear_oracle(e, Scalar(1)));
        ProblemInstance p{from_value_oracle(constrained_reduction(spec.objective, piece)),
                          spec.center,
                          ball,
                          LatticeBasis::integer_lattice(n),
                          Matrix(n - k - 1, n),
                          Vector(n - k - 1)};
        for (std::size_t j = k + 1; j < n; ++j) p.subspace_a(j - k - 1, j) = 1;
        absorb(minimize(p, spec.params));
      }
    }
  }
  rec.oracle_calls += base.calls();

  if (!best) {
    rec.status = "EMPTY";
  } else {
    rec.argmin = strings_of(*best);
    rec.value = spec.objective(*best).to_string();
    rec.status = "OK";
    for (const ValueOracle& g : spec.constraints) {
      if (sgn(g(*best).scalar()) > 0) rec.status = "INFEASIBLE";
    }
  }

  if (verify) {
    EnumerationDomain dom{spec.center, spec.radius, spec.norm,
                          LatticeBasis::integer_lattice(n), {}, std::nullopt};
    if (spec.exclude_origin) dom.exclusions.push_back(Vector(n));
    const ValueOracle user = reduced(spec.objective, spec.constraints);
    MinimaSets bm = brute_min(from_value_oracle(user), dom);
    if (bm.first.empty()) {
      rec.order_equal = !best.has_value();
    } else {
      rec.bruteforce_argmin = strings_of(bm.first.front());
      rec.order_equal = best.has_value() && dom.contains(*best) &&
                        user(*best) == user(bm.first.front());
    }
  }
  rec.wall_time_ms = elapsed_ms(start);
  return rec;
}

std::string GcdResult::to_json() const {
  json j;
  j["a"] = a.get_str();
  j["b"] = b.get_str();
  j["gcd"] = g.get_str();
  j["run"] = json::parse(record.to_json());
  if (matches_euclid) j["matches_euclid"] = *matches_euclid;
  return j.dump(2);
}

GcdResult cmd_gcd(const Integer& a, const Integer& b, bool verify) {
  if (a < 1 || b < 1) throw Error(ErrorCode::kInvalidArgument, "gcd arguments must be positive");
  const auto start = std::chrono::steady_clock::now();
  // On x_1 >= 1 the objective |a x_1 - b x_2| reaches 0 at (b/g, a/g), so the
  // subproblem minimizes it over a x_1 - b x_2 >= 1 instead; the x_1 = 0
  // axis contributes b.
  const Vector form{Scalar(a), Scalar(-b)};
  Vector neg_form{Scalar(-a), Scalar(b)};
  ValueOracle objective = combinator_max({linear_oracle(form), linear_oracle(neg_form)},
                                         {Scalar(1), Scalar(1)});
  ValueOracle constraint = linear_oracle(neg_form, Scalar(1));
  ValueOracle h = constrained_reduction(objective, {constraint});
  const Integer radius = ceil_sqrt(Scalar(a * a + b * b));
  ProblemInstance p = ProblemInstance::over_integers(from_value_oracle(h), Vector(2), Scalar(radius));
  MinimizeResult res = minimize(p);

  GcdResult out;
  out.a = a;
  out.b = b;
  out.g = b;
  Vector argmin{Scalar(0), Scalar(1)};
  if (res.point) {
    Value v = h(*res.point);
    if (sgn(v.first().scalar()) == 0 && v.second().scalar() < Scalar(b)) {
      out.g = v.second().scalar().get_num();
      argmin = *res.point;
    }
  }
  RunRecord& rec = out.record;
  rec.status = "OK";
  rec.argmin = strings_of(argmin);
  rec.value = out.g.get_str();
  rec.oracle_calls = res.oracle_calls;
  rec.shrink_iterations = res.total_shrink_iterations();
  rec.branches = res.total_branches();
  rec.params = RunParams{"1/2", 0, 64};
  if (verify) {
    Integer e;
    mpz_gcd(e.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    out.matches_euclid = e == out.g;
    rec.order_equal = out.matches_euclid;
  }
  rec.wall_time_ms = elapsed_ms(start);
  return out;
}

std::string BenchRow::to_csv() const {
  char wall[64];
  std::snprintf(wall, sizeof wall, "%.3f", wall_ms);
  std::string bound;
  if (analytic_bound) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", *analytic_bound);
    bound = buf;
  }
  return std::to_string(n) + "," + std::to_string(r) + "," + std::to_string(seed) + "," +
         variant + "," + std::to_string(oracle_calls) + "," + bound + "," +
         std::to_string(shrink_iters) + "," + std::to_string(branches) + "," + wall;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kCsvHeader << '\n';
  for (const BenchRow& row : rows) out << row.to_csv() << '\n';
}

namespace {

std::mt19937_64 bench_rng(std::size_t n, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint64_t>(n), seed};
  return std::mt19937_64(seq);
}

// Center r * u with u uniform on a grid of [-1/2, 1/2]^n.
Vector bench_center(std::size_t n, long r, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-48, 48);
  Vector c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = Scalar(r * d(rng), 97);
  for (auto& v : c) v.canonicalize();
  return c;
}

ProblemInstance bench_max_affine(std::size_t n, long r, std::uint64_t seed) {
  auto rng = bench_rng(n, seed);
  Vector c = bench_center(n, r, rng);
  std::uniform_int_distribution<long> w(1, 4);
  std::vector<ValueOracle> forms;
  std::vector<Scalar> weights;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e(n);
    e[i] = 1;
    if (i + 1 < n) e[i + 1] = Scalar(w(rng), 4);
    for (int s : {1, -1}) {
      Vector a = Scalar(s) * e;
      forms.push_back(linear_oracle(a, -a.dot(c)));
      weights.push_back(Scalar(w(rng)));
    }
  }
  return ProblemInstance::over_integers(from_value_oracle(combinator_max(forms, weights)),
                                        Vector(n), Scalar(r));
}

}  // namespace

ProblemInstance bench_quadratic(std::size_t n, long r, std::uint64_t seed) {
  auto rng = bench_rng(n, seed);
  Vector c = bench_center(n, r, rng);
  std::uniform_int_distribution<long> diag(static_cast<long>(n), static_cast<long>(n) + 2);
  std::uniform_int_distribution<long> off(-1, 1);
  Matrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    q(i, i) = diag(rng);
    for (std::size_t j = 0; j < i; ++j) q(i, j) = q(j, i) = Scalar(off(rng), 2);
  }
  return ProblemInstance::over_integers(from_value_oracle(quadratic_oracle(q, c)), Vector(n),
                                        Scalar(r));
}

BenchRow run_bench_case(std::size_t n, long r, std::uint64_t seed, const std::string& variant) {
  BenchRow row;
  row.n = n;
  row.r = r;
  row.seed = seed;
  row.variant = variant;
  const auto start = std::chrono::steady_clock::now();
  if (variant == "quadratic" || variant == "max_affine") {
    ProblemInstance p =
        variant == "quadratic" ? bench_quadratic(n, r, seed) : bench_max_affine(n, r, seed);
    MinimizeResult res = minimize(p);
    row.oracle_calls = res.oracle_calls;
    row.shrink_iters = res.total_shrink_iterations();
    row.branches = res.total_branches();
  } else {
    Variant v = parse_variant(variant);
    LowerBoundReport rep = lower_bound_report(n, r, v, 1, seed);
    if (!rep.all_match()) {
      throw Error(ErrorCode::kInternal, "adversary run disagrees with brute force");
    }
    row.analytic_bound = rep.analytic_bound;
    row.oracle_calls = rep.rows.front().oracle_calls;
    row.shrink_iters = rep.rows.front().shrink_iterations;
    row.branches = rep.rows.front().branches;
  }
  row.wall_ms = elapsed_ms(start);
  return row;
}

std::vector<BenchRow> cmd_bench(const std::string& config_json) {
  json cfg = parse_json(config_json);
  std::vector<long> ns, rs;
  std::vector<std::uint64_t> seeds{0};
  std::vector<std::string> variants{"quadratic"};
  try {
    ns = cfg.value("n", std::vector<long>{});
    rs = cfg.value("r", std::vector<long>{});
    if (cfg.contains("seeds")) seeds = cfg.at("seeds").get<std::vector<std::uint64_t>>();
    if (cfg.contains("variants")) variants = cfg.at("variants").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    parse_fail(std::string("malformed bench config: ") + e.what());
  }
  for (long n : ns) {
    if (n < 1) parse_fail("bench dimensions must be positive");
  }
  for (long r : rs) {
    if (r < 1) parse_fail("bench radii must be positive");
  }
  for (const auto& v : variants) {
    if (v != "quadratic" && v != "max_affine") parse_variant(v);
  }
  std::sort(ns.begin(), ns.end());
  std::sort(rs.begin(), rs.end());
  std::sort(seeds.begin(), seeds.end());
  std::vector<BenchRow> rows;
  for (long n : ns)
    for (long r : rs)
      for (std::uint64_t seed : seeds)
        for (const auto& v : variants)
          rows.push_back(run_bench_case(static_cast<std::size_t>(n), r, seed, v));
  return rows;
}

AdversaryOutput cmd_adversary(std::size_t n, long r, Variant variant, std::size_t trials,
                              std::uint64_t seed) {
  AdversaryOutput out;
  out.report = lower_bound_report(n, r, variant, trials, seed);
  const LowerBoundReport& rep = out.report;
  json j;
  j["n"] = n;
  j["r"] = r;
  j["variant"] = to_string(variant);
  j["trials"] = trials;
  j["seed"] = seed;
  j["analytic_bound"] = rep.analytic_bound;
  j["measured"] = {{"min", rep.min_calls}, {"mean", rep.mean_calls}, {"max", rep.max_calls}};
  json rows = json::array();
  for (const TrialRow& row : rep.rows) {
    rows.push_back({{"seed", row.seed},
                    {"oracle_calls", row.oracle_calls},
                    {"argmin", strings_of(row.argmin)},
                    {"matches_bruteforce", row.matches_bruteforce}});
    BenchRow b;
    b.n = n;
    b.r = r;
    b.seed = row.seed;
    b.variant = to_string(variant);
    b.oracle_calls = row.oracle_calls;
    b.analytic_bound = rep.analytic_bound;
    b.shrink_iters = row.shrink_iterations;
    b.branches = row.branches;
    out.rows.push_back(std::move(b));
  }
  j["rows"] = std::move(rows);
  j["invariant_ok"] = rep.all_match();
  out.json = j.dump(2);
  return out;
}

std::string cmd_lattice(const std::string& op, const std::string& json_text) {
  json root = parse_json(json_text);
  LatticeBasis lattice = LatticeBasis::integer_lattice(0);
  try {
    std::vector<Vector> vectors;
    for (const auto& v : root.at("basis")) vectors.push_back(vector_of(v));
    if (vectors.empty()) parse_fail("basis must contain at least one vector");
    const std::size_t dim = vectors.front().size();
    for (const auto& v : vectors) {
      if (v.size() != dim) parse_fail("basis vectors differ in length");
    }
    lattice = LatticeBasis(Matrix::from_columns(vectors, dim));
  } catch (const json::exception& e) {
    parse_fail(std::string("malformed lattice input: ") + e.what());
  }
  auto columns = [](const Matrix& m) {
    json out = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(strings_of(m.column(j)));
    return out;
  };
  json j;
  if (op == "lll") {
    ReducedBasis red = lll_reduce_with_transform(lattice);
    j["basis"] = columns(red.basis.basis());
    j["transform"] = columns(red.transform);
  } else if (op == "svp" || op == "cvp") {
    LatticePoint pt;
    if (op == "svp") {
      pt = shortest_vector(lattice);
    } else {
      Vector target;
      try {
        target = vector_of(root.at("target"));
      } catch (const json::exception& e) {
        parse_fail(std::string("cvp needs a target: ") + e.what());
      }
      if (target.size() != lattice.ambient_dim()) parse_fail("target dimension mismatch");
      pt = closest_vector(lattice, target);
    }
    j["vector"] = strings_of(pt.vector);
    j["coefficients"] = strings_of(pt.coefficients);
    j["squared_norm"] = format_scalar(pt.squared_norm);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown lattice operation '" + op + "'");
  }
  return j.dump(2);
}

}  // namespace conicmin::tools
