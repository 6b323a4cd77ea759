// One pass/fail line per acceptance criterion; `--criterion k` runs one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "conicmin/adversary.hpp"
#include "conicmin/bruteforce.hpp"
#include "conicmin/cone_cut.hpp"
#include "conicmin/error.hpp"
#include "conicmin/lattice.hpp"
#include "conicmin/minimizer.hpp"
#include "conicmin_tools/harness.hpp"
#include "support.hpp"
#include "testkit.hpp"

namespace conicmin {
namespace {

using testkit::Family;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

constexpr Family kFamilies[] = {Family::kQuadratic, Family::kMaxAffine, Family::kNormImage};

Outcome brute_force_equivalence() {
  std::mt19937_64 rng(1001);
  std::size_t runs = 0, mismatches = 0;
  for (std::size_t n : {2u, 3u}) {
    for (long r = 2; r <= 6; ++r) {
      for (Family fam : kFamilies) {
        for (int i = 0; i < 100; ++i) {
          ValueOracle f = testkit::random_conic(rng, n, r, fam);
          Vector center = testkit::random_point(rng, n, 1, 4);
          auto p = ProblemInstance::over_integers(from_value_oracle(f), center, r);
          MinimizeResult res = minimize(p);
          EnumerationDomain dom = EnumerationDomain::integer_ball(center, r);
          MinimaSets ref = brute_min(from_value_oracle(f), dom);
          ++runs;
          bool ok = !res.empty() && !ref.first.empty() && dom.contains(*res.point) &&
                    f(*res.point) == f(ref.first.front());
          if (!ok) ++mismatches;
        }
      }
    }
  }
  return {mismatches == 0, fmt("%zu instances, %zu mismatches", runs, mismatches)};
}

// Instances large enough that the shrink loop runs.
std::vector<std::pair<ValueOracle, ProblemInstance>> shrink_instances(std::uint64_t seed,
                                                                      std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<ValueOracle, ProblemInstance>> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = i % 5 == 4 ? 3 : 2;
    const long r = n == 2 ? 12 + static_cast<long>(i % 4) * 3 : 7;
    ValueOracle f = testkit::random_conic(rng, n, r, kFamilies[i % 3]);
    Vector center = testkit::random_point(rng, n, 1, 3);
    out.emplace_back(f, ProblemInstance::over_integers(from_value_oracle(f), center, r));
  }
  return out;
}

Outcome retention() {
  std::uint64_t shrinks = 0, checked = 0, failures = 0, wrong = 0;
  for (auto& [f, p] : shrink_instances(2002, 25)) {
    testkit::InvariantReport rep = testkit::checked_minimize(f, p);
    shrinks += rep.shrinks;
    checked += rep.retention_checked;
    failures += rep.retention_failures;
    EnumerationDomain dom = EnumerationDomain::integer_ball(p.center, p.radius);
    MinimaSets ref = brute_min(from_value_oracle(f), dom);
    if (rep.result.empty() || f(*rep.result.point) != f(ref.first.front())) ++wrong;
  }
  bool pass = failures == 0 && wrong == 0 && checked > 0;
  return {pass, fmt("25 instances, %llu shrinks, %llu with a minimizer inside E, %llu violations, "
                    "%llu wrong answers",
                    (unsigned long long)shrinks, (unsigned long long)checked,
                    (unsigned long long)failures, (unsigned long long)wrong)};
}

Outcome volume_shrink() {
  std::map<std::size_t, std::pair<Scalar, Scalar>> worst;  // dim -> (ratio, bound)
  std::uint64_t shrinks = 0, failures = 0;
  MinimizeObserver obs;
  obs.on_shrink = [&](const ShrinkEvent& e) {
    ++shrinks;
    if (e.det_ratio > e.bound) ++failures;
    auto it = worst.find(e.dim);
    if (it == worst.end()) {
      worst[e.dim] = {e.det_ratio, e.bound};
    } else if (e.det_ratio > it->second.first) {
      it->second = {e.det_ratio, e.bound};
    }
  };
  for (auto& [f, p] : shrink_instances(3003, 25)) minimize(p, {}, obs);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    minimize(tools::bench_quadratic(2, 256, seed), {}, obs);
    minimize(tools::bench_quadratic(3, 24, seed), {}, obs);
  }
  std::string detail = fmt("%llu cuts, %llu over budget", (unsigned long long)shrinks,
                           (unsigned long long)failures);
  for (auto& [dim, wb] : worst) {
    detail += fmt("; k=%zu worst %.6f vs bound %.6f", dim, wb.first.get_d(), wb.second.get_d());
  }
  const double b2 = cut_beta_hat(2, 0.25);
  detail += fmt("; beta_hat(phi_2) = %.4f", b2);
  return {failures == 0 && shrinks > 0 && std::abs(b2 - 0.9826) < 5e-4, detail};
}

bool lattice_free(const Ellipsoid& e) {
  const std::size_t n = e.dim();
  Matrix aat = e.shape() * e.shape().transpose();
  std::vector<std::pair<Integer, Integer>> box;
  for (std::size_t i = 0; i < n; ++i) {
    Scalar half = sqrt_upper(aat(i, i));
    box.emplace_back(floor_of(Scalar(e.center()[i] - half)), ceil_of(Scalar(e.center()[i] + half)));
  }
  Vector x(n);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) return !e.contains(x);
    for (Integer v = box[i].first; v <= box[i].second; ++v) {
      x[i] = Scalar(v);
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  return rec(0);
}

Outcome flatness() {
  std::mt19937_64 rng(4004);
  std::size_t tested = 0, failures = 0;
  Scalar worst_ratio = 0;
  while (tested < 50) {
    const std::size_t n = 2 + tested % 2;
    Matrix m = testing::random_integer_matrix(rng, n, n, -6, 6);
    Scalar det = abs(determinant(m));
    if (sgn(det) == 0) continue;
    const double omega = n == 2 ? std::numbers::pi : 4.0 * std::numbers::pi / 3.0;
    // Scale so that vol(E) = 0.95 * omega * |det(s M)| / omega < 1.
    double s = std::pow(0.95 / (omega * det.get_d()), 1.0 / static_cast<double>(n));
    Scalar sq = from_double(s * (1 - 1e-9));
    Matrix shape = sq * m;
    if (abs(determinant(shape)) * from_double(omega * (1 + 1e-12)) >= 1) continue;
    std::optional<Ellipsoid> e;
    for (int attempt = 0; attempt < 200 && !e; ++attempt) {
      Ellipsoid cand(shape, testing::random_vector(rng, n, 3, 97));
      if (lattice_free(cand)) e = cand;
    }
    if (!e) continue;
    FlatnessCertificate cert = flatness_direction_integer(*e);
    Scalar bound(static_cast<long>(n * n));
    if (cert.squared_width > bound) ++failures;
    worst_ratio = std::max(worst_ratio, Scalar(cert.squared_width / bound));
    ++tested;
  }
  return {failures == 0,
          fmt("%zu lattice-free ellipsoids with vol < 1, %zu over n^2, max width^2/n^2 = %.4f",
              tested, failures, worst_ratio.get_d())};
}

Outcome svp_cvp() {
  std::mt19937_64 rng(5005);
  std::size_t tested = 0, failures = 0;
  while (tested < 200) {
    const std::size_t n = 1 + rng() % 4;
    const std::size_t k = 1 + rng() % n;
    Matrix m = testing::random_integer_matrix(rng, n, k, -5, 5);
    if (rank(m) != k) continue;
    LatticeBasis l(m);
    LatticePoint s = shortest_vector(l);
    LatticePoint sref = testing::exhaustive_search(l, nullptr);
    Vector target = testing::random_vector(rng, n, 6, 7);
    LatticePoint c = closest_vector(l, target);
    LatticePoint cref = testing::exhaustive_search(l, &target);
    bool ok = s.squared_norm == sref.squared_norm && s.coefficients == sref.coefficients &&
              c.squared_norm == cref.squared_norm && c.coefficients == cref.coefficients;
    if (!ok) ++failures;
    ++tested;
  }
  return {failures == 0, fmt("%zu lattices of rank <= 4, %zu mismatches", tested, failures)};
}

Outcome gcd_application() {
  std::mt19937_64 rng(6006);
  std::uniform_int_distribution<long> d(1, 1000);
  std::size_t failures = 0;
  std::uint64_t max_calls = 0;
  for (int i = 0; i < 50; ++i) {
    long a = d(rng), b = d(rng);
    tools::GcdResult res = tools::cmd_gcd(a, b, false);
    if (res.g != std::gcd(a, b)) ++failures;
    max_calls = std::max(max_calls, res.record.oracle_calls);
  }
  return {failures == 0, fmt("50 pairs in [1, 1000], %zu mismatches, max %llu oracle calls",
                             failures, (unsigned long long)max_calls)};
}

Outcome oracle_scaling() {
  std::vector<long> radii;
  for (long r = 4; r <= 512; r *= 2) radii.push_back(r);
  std::vector<double> ratio;
  for (long r : radii) {
    double total = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      total += static_cast<double>(minimize(tools::bench_quadratic(2, r, seed)).oracle_calls);
    }
    ratio.push_back(total / 3.0 / std::log2(static_cast<double>(r)));
  }
  const double c = *std::max_element(ratio.begin(), ratio.begin() + 3);
  bool pass = true;
  std::string detail = fmt("C = %.1f (r = 4..16); calls/log2 r:", c);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    detail += fmt(" %ld:%.1f", radii[i], ratio[i]);
    pass = pass && ratio[i] <= 3 * c;
  }
  return {pass, detail + fmt("; bound 3C = %.1f", 3 * c)};
}

Outcome family_counts() {
  bool pass = true;
  std::string detail;
  for (long r = 1; r <= 6; ++r) {
    pass = pass && generate_family(1, r, Variant::kGeneral).size() == static_cast<std::size_t>(2 * r - 1);
  }
  std::size_t g22 = generate_family(2, 2, Variant::kGeneral).size();
  std::size_t e23 = generate_family(2, 3, Variant::kEven).size();
  pass = pass && g22 == 81 && e23 == 8;
  return {pass, fmt("|T_1,r| = 2r-1 for r = 1..6, |T_2,2| = %zu, even |T_2,3| = %zu", g22, e23)};
}

Outcome hull_avoidance_property() {
  std::size_t inst_g = 0, bad_g = 0, inst_e = 0, bad_e = 0, bad_half = 0;
  std::string per_n;
  for (Variant v : {Variant::kGeneral, Variant::kEven}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      std::size_t bad_n = 0, inst_n = 0;
      for (long r = v == Variant::kEven ? 2 : 1; r <= 5; ++r) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
          AdversaryInstance inst = sample_family(n, r, v, seed);
          bool ok = hull_avoidance(inst).ok();
          ++inst_n;
          if (!ok) ++bad_n;
          if (v == Variant::kEven && !hull_avoidance_half_set(inst).ok()) ++bad_half;
        }
      }
      (v == Variant::kGeneral ? inst_g : inst_e) += inst_n;
      (v == Variant::kGeneral ? bad_g : bad_e) += bad_n;
      per_n += fmt(" %s n=%zu:%zu/%zu", to_string(v), n, bad_n, inst_n);
    }
  }
  return {bad_g + bad_e == 0,
          fmt("violating instances: general %zu/%zu, even %zu/%zu (even half-set without "
              "origin: %zu/%zu);",
              bad_g, inst_g, bad_e, inst_e, bad_half, inst_e) +
              per_n};
}

Outcome conic_closure() {
  std::mt19937_64 rng(9009);
  const std::size_t n = 2;
  auto gen = [&](Family fam) { return testkit::random_conic(rng, n, 3, fam); };
  ValueOracle cube(1, [](const Vector& x) { return Value(Scalar(x[0] * x[0] * x[0])); });
  std::vector<std::pair<std::string, ValueOracle>> combos = {
      {"max", combinator_max({gen(Family::kQuadratic), gen(Family::kNormImage)},
                             {Scalar(1), Scalar(3, 2)})},
      {"affine", combinator_affine(gen(Family::kMaxAffine), Matrix{{1, 2}, {0, -1}}, Vector{1, Scalar(1, 3)})},
      {"monotone", combinator_monotone(gen(Family::kQuadratic), cube)},
      {"lex_pair", combinator_lex_pair(gen(Family::kMaxAffine), gen(Family::kQuadratic))},
      {"constrained", constrained_reduction(gen(Family::kQuadratic),
                                            {gen(Family::kNormImage), linear_oracle(Vector{1, -1}, -1)})},
  };
  bool pass = true;
  std::string detail;
  for (auto& [name, f] : combos) {
    auto triples = testkit::random_triples(rng, n, 4, 10000);
    std::size_t bad = is_conic_witness(from_value_oracle(f), triples).size();
    pass = pass && bad == 0;
    detail += fmt("%s:%zu ", name.c_str(), bad);
  }
  bool sgn_found = !is_conic_witness(from_value_oracle(testkit::sign_of_first()),
                                     {{Vector{1, 0}, Vector{Scalar(1, 2), 0}, Scalar(2)}})
                        .empty();
  ComparisonOracle tx = from_value_oracle(testkit::three_x_minus_two_pow_y());
  std::string ts;
  bool tx_found = false;
  for (long t = 1; t <= 4; ++t) {
    bool hit = !is_conic_witness(tx, {{Vector{0, 0}, Vector{1, 1}, Scalar(t)}}).empty();
    ts += hit ? fmt("%ld", t) + " " : "";
    tx_found = tx_found || hit;
  }
  pass = pass && sgn_found && tx_found;
  return {pass, "violations over 10^4 triples: " + detail + "| sgn(x1) detected: " +
                    (sgn_found ? "yes" : "no") + ", 3x - 2^y detected at t = " + ts};
}

Outcome bound_values() {
  double a = lower_bound_report(1, 8, Variant::kGeneral, 1, 0).analytic_bound;
  double b = lower_bound_report(2, 2, Variant::kGeneral, 1, 0).analytic_bound;
  bool pass = std::abs(a - 3.91) <= 1e-2 && std::abs(b - 6.34) <= 1e-2;
  return {pass, fmt("n=1 r=8: %.4f (3.91), n=2 r=2: %.4f (6.34)", a, b)};
}

const std::vector<std::pair<const char*, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<const char*, std::function<Outcome()>>> list = {
      {"brute-force equivalence", brute_force_equivalence},
      {"retention invariant", retention},
      {"volume shrink", volume_shrink},
      {"flatness", flatness},
      {"svp/cvp equivalence", svp_cvp},
      {"gcd application", gcd_application},
      {"oracle-call scaling", oracle_scaling},
      {"family combinatorics", family_counts},
      {"hull avoidance", hull_avoidance_property},
      {"conic closure", conic_closure},
      {"lower-bound values", bound_values},
  };
  return list;
}

}  // namespace
}  // namespace conicmin

int main(int argc, char** argv) {
  CLI::App app{"conicmin acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const auto& list = conicmin::criteria();
  bool all = true;
  for (std::size_t k = 1; k <= list.size(); ++k) {
    if (only != 0 && static_cast<std::size_t>(only) != k) continue;
    const auto start = std::chrono::steady_clock::now();
    conicmin::Outcome out;
    try {
      out = list[k - 1].second();
    } catch (const conicmin::Error& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %s [%s] %s (%.1fs)\n", k, out.pass ? "PASS" : "FAIL",
                list[k - 1].first, out.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && out.pass;
  }
  return all ? 0 : 1;
}
