#include "conicmin/minimizer.hpp"

#include <cmath>

#include "conicmin/error.hpp"

namespace conicmin {

std::uint64_t MinimizeResult::total_shrink_iterations() const {
  std::uint64_t s = 0;
  for (const auto& d : per_depth) s += d.shrink_iterations;
  return s;
}

std::uint64_t MinimizeResult::total_branches() const {
  std::uint64_t s = 0;
  for (const auto& d : per_depth) s += d.branches;
  return s;
}

std::size_t minimize_dim1(const ComparisonOracle& oracle, const Progression& points) {
  if (points.count == 0) throw Error(ErrorCode::kInvalidArgument, "empty progression");
  std::size_t lo = 0;
  std::size_t hi = points.count - 1;
  // A conic function restricted to a line is nonincreasing then nondecreasing
  // with no interior plateau above the minimum, so f(m1) <= f(m2) rules out
  // everything right of m2 and f(m1) > f(m2) everything left of m1.
  while (hi - lo >= 3) {
    std::size_t third = (hi - lo) / 3;
    std::size_t m1 = lo + third;
    std::size_t m2 = hi - third;
    if (oracle.compare_leq(points.at(m1), points.at(m2))) {
      hi = m2 - 1;
    } else {
      lo = m1 + 1;
    }
  }
  std::size_t best = lo;
  Vector best_x = points.at(lo);
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    Vector x = points.at(i);
    if (!oracle.compare_leq(best_x, x)) {
      best = i;
      best_x = std::move(x);
    }
  }
  return best;
}

std::size_t minimize_dim1(const ComparisonOracle& oracle, const std::vector<Vector>& points) {
  if (points.empty()) throw Error(ErrorCode::kInvalidArgument, "empty point list");
  std::size_t lo = 0;
  std::size_t hi = points.size() - 1;
  while (hi - lo >= 3) {
    std::size_t third = (hi - lo) / 3;
    std::size_t m1 = lo + third;
    std::size_t m2 = hi - third;
    if (oracle.compare_leq(points[m1], points[m2])) {
      hi = m2 - 1;
    } else {
      lo = m1 + 1;
    }
  }
  std::size_t best = lo;
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    if (!oracle.compare_leq(points[best], points[i])) best = i;
  }
  return best;
}

namespace {

constexpr std::uint64_t kShrinkSafetyCap = 100000;

// G^{-1} = L D L^T for symmetric positive definite G^{-1}.
std::pair<Matrix, Vector> ldl(const Matrix& s) {
  const std::size_t k = s.rows();
  Matrix l = Matrix::identity(k);
  Vector d(k);
  for (std::size_t j = 0; j < k; ++j) {
    Scalar dj = s(j, j);
    for (std::size_t m = 0; m < j; ++m) dj -= l(j, m) * l(j, m) * d[m];
    d[j] = dj;
    for (std::size_t i = j + 1; i < k; ++i) {
      Scalar v = s(i, j);
      for (std::size_t m = 0; m < j; ++m) v -= l(i, m) * l(j, m) * d[m];
      l(i, j) = v / dj;
    }
  }
  return {l, d};
}

double frobenius(const Matrix& m) {
  double s = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      double v = m(i, j).get_d();
      s += v * v;
    }
  return std::sqrt(s);
}

// El(A M, a + A c) for the spheroid (M, c) given in the unit frame of E,
// rounded to doubles and inflated so the exact image stays inside.
Ellipsoid compose_and_round(const Ellipsoid& e, const Spheroid& s) {
  const std::size_t k = e.dim();
  Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double v = (s.axial - s.transverse) * s.axis[i] * s.axis[j];
      if (i == j) v += s.transverse;
      m(i, j) = from_double(v);
    }
  Matrix shape = e.shape() * m;
  Vector center = e.center() + e.shape() * Vector::from_doubles(s.center);

  Matrix rounded(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) rounded(i, j) = from_double(shape(i, j).get_d());
  Vector rcenter = Vector::from_doubles(center.to_doubles());
  Matrix rinv = invert(rounded);
  double shape_err = frobenius(rinv * shape - Matrix::identity(k));
  double center_err = std::sqrt((rinv * (center - rcenter)).squared_norm().get_d());
  double inflate = 1.0 + 1e-12 + 1.01 * (shape_err + center_err) + 1e-9;
  return Ellipsoid(from_double(inflate) * rounded, rcenter);
}

class Solver {
 public:
  Solver(const ComparisonOracle& oracle, const MinimizeParams& params,
         const MinimizeObserver& observer, Vector center, Scalar radius_sq)
      : oracle_(oracle),
        params_(params),
        observer_(observer),
        a_(std::move(center)),
        r2_(std::move(radius_sq)) {}

  std::optional<Vector> solve(const AffineLattice& s, std::size_t depth);
  std::vector<DepthStats> stats;

 private:
  DepthStats& at(std::size_t depth) {
    if (stats.size() <= depth) stats.resize(depth + 1);
    return stats[depth];
  }

  const ComparisonOracle& oracle_;
  const MinimizeParams& params_;
  const MinimizeObserver& observer_;
  Vector a_;
  Scalar r2_;
};

std::optional<Vector> Solver::solve(const AffineLattice& s, std::size_t depth) {
  if (depth > params_.max_depth) throw Error(ErrorCode::kInternal, "recursion depth exceeded");
  at(depth).subproblems++;
  const std::size_t k = s.rank();
  if (k == 0) {
    if ((s.shift - a_).squared_norm() <= r2_) return s.shift;
    return std::nullopt;
  }

  // The ball's section in coefficient space: (t - tc)^T G (t - tc) <= rs2.
  const Matrix bt = s.basis.transpose();
  const Matrix gram = bt * s.basis;
  const Matrix gram_inv = invert(gram);
  const Vector tc = gram_inv * (bt * (a_ - s.shift));
  const Scalar rs2 = r2_ - (a_ - s.point(tc)).squared_norm();
  if (sgn(rs2) < 0) return std::nullopt;
  if (sgn(rs2) == 0) {
    if (tc.is_integral()) return s.point(tc);
    return std::nullopt;
  }
  auto in_section = [&](const Vector& t) {
    Vector d = t - tc;
    return d.dot(gram * d) <= rs2;
  };

  if (k == 1) {
    auto range = integer_interval(tc[0], rs2 / gram(0, 0));
    if (!range) return std::nullopt;
    Progression line{s.point(Vector{Scalar(range->first)}), s.basis.column(0),
                     static_cast<std::size_t>(Integer(range->second - range->first + 1).get_ui())};
    std::size_t idx = minimize_dim1(oracle_, line);
    return line.at(idx);
  }

  // Rational outer approximation of the section ellipsoid.
  auto [lfac, dfac] = ldl(gram_inv);
  Vector semi(k);
  for (std::size_t i = 0; i < k; ++i) semi[i] = sqrt_upper(rs2 * dfac[i]);
  Ellipsoid e(lfac * Matrix::diagonal(semi), tc);

  Scalar c_hat = params_.c_hat;
  int backoffs = 0;
  ConeCutParams cp = ConeCutParams::for_dimension(k, c_hat);
  const double cos_phi = cp.cos_phi.get_d();
  const double sin_phi = std::sqrt(1 - cos_phi * cos_phi);
  const Scalar kk = Scalar(static_cast<unsigned long>(k * k));
  auto back_off = [&] {
    at(depth).backoffs++;
    if (++backoffs > params_.max_backoffs) {
      throw Error(ErrorCode::kShrinkViolation, "cone cut budget violated after c_hat back-off");
    }
    c_hat /= 2;
    cp = ConeCutParams::for_dimension(k, c_hat);
  };

  FlatnessCertificate flat;
  std::uint64_t iterations = 0;
  for (;;) {
    const Scalar factor = c_hat / Scalar(static_cast<unsigned long>(2 * k));
    Ellipsoid e_hat = scale_about_center(e, factor);
    flat = flatness_direction_integer(e_hat);
    if (flat.squared_width <= kk) break;
    if (++iterations > kShrinkSafetyCap) {
      throw Error(ErrorCode::kInternal, "shrink loop failed to terminate");
    }

    // Flatness guarantees a lattice point in E_hat; the nearest one in the
    // E_hat norm is it.
    const Matrix& ainv = e.inverse_shape();
    LatticePoint near = closest_vector(LatticeBasis(ainv), ainv * e.center());
    const Vector& z = near.coefficients;
    if (!e_hat.contains(z)) throw Error(ErrorCode::kInternal, "no lattice point in a wide ellipsoid");
    std::vector<double> uz = (ainv * (z - e.center())).to_doubles();
    double uz_norm = 0;
    for (double v : uz) uz_norm += v * v;
    uz_norm = std::sqrt(uz_norm);

    const double rho = cp.walk_radius();
    if (covering_ratio_on_axis(k, cos_phi, uz_norm / sin_phi + rho) > cp.shrink_factor_bound) {
      back_off();
      continue;
    }

    RotationCone cone;
    CutKind kind;
    if (in_section(z)) {
      kind = CutKind::kOracle;
      const Matrix shape = e.shape();
      const Vector center = e.center();
      ComparisonOracle frame(k, [&, shape, center](const Vector& u1, const Vector& u2) {
        return oracle_.compare_leq(s.point(center + shape * u1), s.point(center + shape * u2));
      });
      ConeCut cut = cone_cut_construct(frame, uz, rho, cp);
      cone = inscribed_rotation_cone(cut.cone);
      if (cone.cos_half_angle > cos_phi) {
        throw Error(ErrorCode::kInternal, "pyramid cone narrower than the cut angle");
      }
      cone.cos_half_angle = cos_phi;
    } else {
      // z lies outside the domain: cut along the gradient of the section's
      // quadratic, which only discards points outside the ball.
      kind = CutKind::kDomain;
      std::vector<double> axis = (e.shape().transpose() * (gram * (z - tc))).to_doubles();
      double l = 0;
      for (double v : axis) l += v * v;
      l = std::sqrt(l);
      for (double& v : axis) v /= l;
      cone = RotationCone{uz, axis, cos_phi};
    }
    Spheroid sph = covering_spheroid(std::vector<double>(k, 0.0), 1.0, cone);
    if (!(sph.volume_ratio <= cp.shrink_factor_bound)) {
      back_off();
      continue;
    }
    Ellipsoid next = compose_and_round(e, sph);
    Scalar ratio = next.volume_factor() / e.volume_factor();
    if (ratio > cp.shrink_bound_exact) {
      back_off();
      continue;
    }
    at(depth).shrink_iterations++;
    if (observer_.on_shrink) {
      ShrinkEvent ev;
      ev.depth = depth;
      ev.dim = k;
      ev.kind = kind;
      ev.slice = &s;
      ev.before = &e;
      ev.after = &next;
      ev.det_ratio = ratio;
      ev.bound = cp.shrink_bound_exact;
      ev.c_hat = c_hat;
      observer_.on_shrink(ev);
    }
    e = std::move(next);
  }

  // Branch on the hyperplanes c^T t = tau meeting E, clipped to the section.
  const Vector& c = flat.direction;
  auto range_e = integer_interval(c.dot(e.center()), (e.shape().transpose() * c).squared_norm());
  auto range_b = integer_interval(c.dot(tc), rs2 * c.dot(gram_inv * c));
  BranchEvent bev;
  bev.depth = depth;
  bev.dim = k;
  bev.slice = &s;
  bev.direction = c;
  bev.c_hat = c_hat;
  if (range_e) bev.hyperplanes_in_ellipsoid = Integer(range_e->second - range_e->first + 1).get_ui();
  std::optional<Vector> best;
  if (range_e && range_b) {
    Integer lo = std::max(range_e->first, range_b->first);
    Integer hi = std::min(range_e->second, range_b->second);
    for (Integer tau = lo; tau <= hi; ++tau) {
      auto sub = restrict_to_hyperplane(s, c, tau);
      if (!sub) continue;
      at(depth).branches++;
      bev.hyperplanes_visited++;
      auto res = solve(*sub, depth + 1);
      if (!res) continue;
      if (!best || !oracle_.compare_leq(*best, *res)) best = std::move(res);
    }
  }
  if (observer_.on_branch) observer_.on_branch(bev);
  return best;
}

}  // namespace

MinimizeResult minimize(const ProblemInstance& p, const MinimizeParams& params,
                        const MinimizeObserver& observer) {
  if (p.oracle.dim() != p.center.size()) {
    throw Error(ErrorCode::kShapeMismatch, "oracle and center dimensions differ");
  }
  if (!(sgn(params.c_hat) > 0 && params.c_hat <= 1)) {
    throw Error(ErrorCode::kInvalidArgument, "c_hat must lie in (0, 1]");
  }
  const std::uint64_t before = p.oracle.calls();
  MinimizeResult result;
  auto pre = preprocess(p);
  if (pre) {
    Solver solver(p.oracle, params, observer, p.center, p.radius * p.radius);
    result.point = solver.solve(pre->slice, 0);
    result.per_depth = std::move(solver.stats);
  }
  result.oracle_calls = p.oracle.calls() - before;
  return result;
}

}  // namespace conicmin
