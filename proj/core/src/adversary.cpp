#include "conicmin/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "conicmin/bruteforce.hpp"
#include "conicmin/error.hpp"
#include "conicmin/minimizer.hpp"

namespace conicmin {

const char* to_string(Variant v) { return v == Variant::kGeneral ? "general" : "even"; }

Variant parse_variant(const std::string& text) {
  if (text == "general") return Variant::kGeneral;
  if (text == "even") return Variant::kEven;
  throw Error(ErrorCode::kParseError, "unknown variant '" + text + "'");
}

std::vector<std::size_t> AdversaryInstance::order() const {
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return idx;
}

namespace {

struct Half {
  std::vector<std::vector<long>> points;
  std::vector<long> values;
};

void check_family_args(std::size_t n, long r, Variant variant) {
  if (n < 1 || r < 1) throw Error(ErrorCode::kInvalidArgument, "family needs n >= 1 and r >= 1");
  if (variant == Variant::kEven && r < 2) {
    throw Error(ErrorCode::kEmptyFamily, "the even family is empty for r < 2");
  }
}

long pow_long(long base, std::size_t e) {
  long v = 1;
  for (std::size_t i = 0; i < e; ++i) v *= base;
  return v;
}

// Slice offsets and value offsets of the parts glued along the last
// coordinate: GENERAL uses (i-1, i, i+1) with offsets (3^{n-1}, 0, 2*3^{n-1});
// EVEN uses (i, i+1) with offsets (0, 2^{n-1}).
std::vector<std::pair<long, long>> parts(std::size_t n, long i, Variant variant) {
  if (variant == Variant::kGeneral) {
    long m = pow_long(3, n - 1);
    return {{i - 1, m}, {i, 0}, {i + 1, 2 * m}};
  }
  long m = pow_long(2, n - 1);
  return {{i, 0}, {i + 1, m}};
}

std::pair<long, long> slice_range(long r, Variant variant) {
  return variant == Variant::kGeneral ? std::pair{-r + 1, r - 1} : std::pair{1L, r - 1};
}

Half glue(std::size_t n, long i, Variant variant, const std::vector<const Half*>& subs) {
  Half out;
  auto ps = parts(n, i, variant);
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const Half& s = *subs[k];
    for (std::size_t j = 0; j < s.points.size(); ++j) {
      std::vector<long> p = s.points[j];
      p.push_back(ps[k].first);
      out.points.push_back(std::move(p));
      out.values.push_back(ps[k].second + s.values[j]);
    }
  }
  return out;
}

Half sample_half(std::size_t n, long r, Variant variant, std::mt19937_64& rng) {
  auto [lo, hi] = slice_range(r, variant);
  long i = std::uniform_int_distribution<long>(lo, hi)(rng);
  const std::size_t count = variant == Variant::kGeneral ? 3 : 2;
  // The base sets are the n = 1 case of the gluing rule with point parts.
  Half point{{{}}, {0}};
  std::vector<Half> subs;
  std::vector<const Half*> ptrs(count, &point);
  if (n > 1) {
    for (std::size_t k = 0; k < count; ++k) subs.push_back(sample_half(n - 1, r, variant, rng));
    for (std::size_t k = 0; k < count; ++k) ptrs[k] = &subs[k];
  }
  return glue(n, i, variant, ptrs);
}

AdversaryInstance finish(std::size_t n, long r, Variant variant, const Half& half) {
  AdversaryInstance inst;
  inst.n = n;
  inst.r = r;
  inst.variant = variant;
  auto to_vec = [](const std::vector<long>& p, long sign) {
    Vector v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = Scalar(sign * p[i]);
    return v;
  };
  for (std::size_t j = 0; j < half.points.size(); ++j) {
    inst.points.push_back(to_vec(half.points[j], 1));
    inst.values.push_back(half.values[j]);
  }
  if (variant == Variant::kEven) {
    for (std::size_t j = 0; j < half.points.size(); ++j) {
      inst.points.push_back(to_vec(half.points[j], -1));
      inst.values.push_back(half.values[j]);
    }
  }
  return inst;
}

void all_halves(std::size_t n, long r, Variant variant, std::vector<Half>& out,
                std::uint64_t limit) {
  auto [lo, hi] = slice_range(r, variant);
  const std::size_t count = variant == Variant::kGeneral ? 3 : 2;
  if (n == 1) {
    Half point{{{}}, {0}};
    std::vector<const Half*> ptrs(count, &point);
    for (long i = lo; i <= hi; ++i) out.push_back(glue(1, i, variant, ptrs));
    return;
  }
  std::vector<Half> sub;
  all_halves(n - 1, r, variant, sub, limit);
  const std::size_t m = sub.size();
  std::vector<std::size_t> pick(count, 0);
  for (long i = lo; i <= hi; ++i) {
    std::fill(pick.begin(), pick.end(), 0);
    for (;;) {
      if (out.size() >= limit) throw Error(ErrorCode::kTooLarge, "family exceeds the limit");
      std::vector<const Half*> ptrs;
      for (std::size_t k = 0; k < count; ++k) ptrs.push_back(&sub[pick[k]]);
      out.push_back(glue(n, i, variant, ptrs));
      std::size_t k = count;
      while (k > 0 && ++pick[k - 1] == m) pick[--k] = 0;
      if (k == 0) break;
    }
  }
}

}  // namespace

AdversaryInstance sample_family(std::size_t n, long r, Variant variant, std::uint64_t seed) {
  check_family_args(n, r, variant);
  std::mt19937_64 rng(seed);
  return finish(n, r, variant, sample_half(n, r, variant, rng));
}

Integer family_size(std::size_t n, long r, Variant variant) {
  check_family_args(n, r, variant);
  Integer base = variant == Variant::kGeneral ? Integer(2 * r - 1) : Integer(r - 1);
  unsigned long e = variant == Variant::kGeneral ? (pow_long(3, n) - 1) / 2 : pow_long(2, n) - 1;
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

std::vector<AdversaryInstance> generate_family(std::size_t n, long r, Variant variant,
                                               std::uint64_t limit) {
  check_family_args(n, r, variant);
  if (family_size(n, r, variant) > Integer(static_cast<unsigned long>(limit))) {
    throw Error(ErrorCode::kTooLarge, "family exceeds the limit");
  }
  std::vector<Half> halves;
  all_halves(n, r, variant, halves, limit);
  std::vector<AdversaryInstance> out;
  out.reserve(halves.size());
  for (const Half& h : halves) out.push_back(finish(n, r, variant, h));
  return out;
}

bool cone_hull_member(const std::vector<RankedPoint>& r, const Vector& y) {
  if (r.size() <= 1) return false;
  for (std::size_t zi = 0; zi < r.size(); ++zi) {
    const RankedPoint& z = r[zi];
    ConeAtApex cone{z.point, {}};
    for (std::size_t xi = 0; xi < r.size(); ++xi) {
      if (xi == zi || r[xi].value > z.value) continue;
      Vector g = z.point - r[xi].point;
      if (!g.is_zero()) cone.generators.push_back(std::move(g));
    }
    if (cone.generators.empty()) continue;
    if (cone_member(cone, y)) return true;
  }
  return false;
}

HullCheck hull_avoidance(const AdversaryInstance& inst, bool with_origin) {
  HullCheck check;
  std::vector<RankedPoint> seq;
  if (with_origin) seq.push_back(RankedPoint{Vector(inst.n), -1});
  const auto idx = inst.order();
  for (std::size_t pos = 0; pos < idx.size(); ++pos) {
    const Vector& x = inst.points[idx[pos]];
    if (!seq.empty()) {
      ++check.checked;
      if (cone_hull_member(seq, x)) check.violations.push_back(pos);
    }
    seq.push_back(RankedPoint{x, inst.values[idx[pos]]});
  }
  return check;
}

HullCheck hull_avoidance_half_set(const AdversaryInstance& inst) {
  if (inst.variant != Variant::kEven) return hull_avoidance(inst, false);
  AdversaryInstance half = inst;
  const std::size_t m = inst.points.size() / 2;
  half.points.resize(m);
  half.values.resize(m);
  return hull_avoidance(half, false);
}

bool verify_nonsingularity(const std::vector<Vector>& first_minima,
                           const std::vector<Vector>& second_minima) {
  if (first_minima.empty() || second_minima.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "both minima sets must be nonempty");
  }
  if (first_minima.size() + second_minima.size() > 10) {
    throw Error(ErrorCode::kTooLarge, "nonsingularity check is limited to 10 points");
  }
  for (const Vector& y : first_minima) {
    for (const Vector& z : second_minima) {
      if (y == z) throw Error(ErrorCode::kInvalidArgument, "minima sets must be disjoint");
    }
  }
  std::vector<Vector> all = first_minima;
  all.insert(all.end(), second_minima.begin(), second_minima.end());
  // Every point of cone(T | y) lies in the cone of at most n of its
  // generators, so testing T = (Y ∪ Z) \ {y} covers all subsets.
  for (const Vector& y : first_minima) {
    ConeAtApex cone{y, {}};
    for (const Vector& t : all) {
      if (t == y) continue;
      cone.generators.push_back(y - t);
    }
    for (const Vector& z : second_minima) {
      if (cone_member(cone, z)) return false;
    }
  }
  return true;
}

double analytic_bound(std::size_t n, long r, Variant variant) {
  check_family_args(n, r, variant);
  if (variant == Variant::kGeneral) {
    return static_cast<double>((pow_long(3, n) - 1) / 2) * std::log2(static_cast<double>(2 * r - 1));
  }
  return static_cast<double>(pow_long(2, n) - 1) * std::log2(static_cast<double>(r - 1));
}

bool LowerBoundReport::all_match() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const TrialRow& row) { return row.matches_bruteforce; });
}

namespace {

// (max(0, max_i |x_i| - r, 1 - x_k), g(x)) in lexicographic order; k < 0
// drops the 1 - x_k term.
ComparisonOracle boxed(std::shared_ptr<const LayeredExtension> ext, long r, long k) {
  const std::size_t n = ext->dim();
  auto penalty = [r, k](const Vector& x) {
    Scalar p = 0;
    for (std::size_t i = 0; i < x.size(); ++i) p = std::max(p, Scalar(abs(x[i]) - r));
    if (k >= 0) p = std::max(p, Scalar(1 - x[static_cast<std::size_t>(k)]));
    return p;
  };
  return ComparisonOracle(n, [ext, penalty](const Vector& x, const Vector& y) {
    Scalar px = penalty(x);
    Scalar py = penalty(y);
    if (px != py) return px < py;
    return (*ext)(x) <= (*ext)(y) + 1e-9;
  });
}

Integer ball_radius_for_box(std::size_t n, long r) {
  Integer r2 = Integer(r) * Integer(r) * Integer(static_cast<unsigned long>(n));
  Integer s = sqrt(r2);
  if (s * s < r2) s += 1;
  return s;
}

}  // namespace

LowerBoundReport lower_bound_report(std::size_t n, long r, Variant variant, std::size_t trials,
                                    std::uint64_t seed) {
  LowerBoundReport rep;
  rep.n = n;
  rep.r = r;
  rep.variant = variant;
  rep.analytic_bound = analytic_bound(n, r, variant);
  if (n > 3) throw Error(ErrorCode::kUnsupportedDimension, "extensions are limited to n <= 3");
  const Scalar radius(ball_radius_for_box(n, r));

  for (std::size_t trial = 0; trial < trials; ++trial) {
    TrialRow row;
    row.seed = seed + trial;
    auto ext = std::make_shared<const LayeredExtension>(
        build_extension(sample_family(n, r, variant, row.seed)));
    ComparisonOracle plain = adversary_oracle(ext);

    std::vector<ProblemInstance> pieces;
    if (variant == Variant::kGeneral) {
      pieces.push_back(ProblemInstance::over_integers(boxed(ext, r, -1), Vector(n), radius));
    } else {
      // Evenness lets x_k >= 1, x_j = 0 (j > k) stand for the punctured box.
      for (std::size_t k = 0; k < n; ++k) {
        ProblemInstance p =
            ProblemInstance::over_integers(boxed(ext, r, static_cast<long>(k)), Vector(n), radius);
        if (k + 1 < n) {
          p.subspace_a = Matrix(n - k - 1, n);
          p.subspace_b = Vector(n - k - 1);
          for (std::size_t j = k + 1; j < n; ++j) p.subspace_a(j - k - 1, j) = 1;
        }
        pieces.push_back(std::move(p));
      }
    }
    std::optional<Vector> best;
    for (const ProblemInstance& p : pieces) {
      MinimizeResult res = minimize(p);
      row.oracle_calls += res.oracle_calls;
      row.shrink_iterations += res.total_shrink_iterations();
      row.branches += res.total_branches();
      if (!res.point) continue;
      if (!best || !plain.compare_leq(*best, *res.point)) best = res.point;
    }
    row.oracle_calls += plain.calls();
    if (best) row.argmin = *best;

    EnumerationDomain dom = EnumerationDomain::integer_ball(Vector(n), Scalar(r), Norm::kLinf);
    if (variant == Variant::kEven) dom.exclusions.push_back(Vector(n));
    ComparisonOracle check = adversary_oracle(ext);
    MinimaSets bm = brute_min(check, dom);
    row.matches_bruteforce =
        best && std::abs((*ext)(*best) - (*ext)(bm.first.front())) <= 1e-9;
    rep.rows.push_back(std::move(row));
  }
  if (!rep.rows.empty()) {
    rep.min_calls = rep.max_calls = rep.rows.front().oracle_calls;
    double sum = 0;
    for (const TrialRow& row : rep.rows) {
      rep.min_calls = std::min(rep.min_calls, row.oracle_calls);
      rep.max_calls = std::max(rep.max_calls, row.oracle_calls);
      sum += static_cast<double>(row.oracle_calls);
    }
    rep.mean_calls = sum / static_cast<double>(rep.rows.size());
  }
  return rep;
}

}  // namespace conicmin
