#include "conicmin/cone_cut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conicmin/error.hpp"

namespace conicmin {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec axpy(const Vec& x, double alpha, const Vec& y) {  // x + alpha y
  Vec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += alpha * y[i];
  return r;
}

// Householder reflection mapping unit vector `from` to unit vector `to`.
Vec reflect(const Vec& from, const Vec& to, const Vec& v) {
  Vec w(from.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = from[i] - to[i];
  double ww = dot(w, w);
  if (ww < 1e-30) return v;
  return axpy(v, -2.0 * dot(w, v) / ww, w);
}

// n unit vectors in R^n, orthogonal to (1,...,1), pairwise at equal angles.
std::vector<Vec> centered_simplex_directions(std::size_t n) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vec s(n, -1.0 / static_cast<double>(n));
    s[i] += 1.0;
    double l = norm(s);
    for (double& x : s) x /= l;
    out.push_back(std::move(s));
  }
  return out;
}

// n + 1 unit vectors in R^n forming a regular simplex.
std::vector<Vec> regular_simplex(std::size_t n) {
  const std::size_t m = n + 1;
  Vec ones(m, 1.0 / std::sqrt(static_cast<double>(m)));
  Vec last(m, 0.0);
  last[n] = 1.0;
  std::vector<Vec> out;
  for (const auto& s : centered_simplex_directions(m)) {
    Vec r = reflect(ones, last, s);
    r.resize(n);
    double l = norm(r);
    for (double& x : r) x /= l;
    out.push_back(std::move(r));
  }
  return out;
}

// Base directions of a regular (n-1)-simplex orthogonal to unit vector h.
std::vector<Vec> base_directions(const Vec& h) {
  const std::size_t n = h.size();
  Vec ones(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<Vec> out;
  for (const auto& s : centered_simplex_directions(n)) out.push_back(reflect(ones, h, s));
  return out;
}

}  // namespace

double cut_gamma(std::size_t n, double cos_phi) {
  double nd = static_cast<double>(n);
  return (1.0 - nd * cos_phi) / (1.0 + nd);
}

double cut_beta(std::size_t n, double cos_phi) {
  double nd = static_cast<double>(n);
  double phi = std::acos(cos_phi);
  double s = std::sin(phi / 2);
  double c = std::cos(phi / 2);
  return 2.0 * std::pow(s, (nd - 1) / nd) * std::pow(c, (nd + 1) / nd) * nd *
         std::pow((nd - 1) / (nd + 1), 1.0 / (2 * nd)) / std::sqrt(nd * nd - 1);
}

double cut_beta_hat(std::size_t n, double cos_phi) {
  return 0.5 * (1.0 + cut_beta(n, cos_phi));
}

ConeCutParams ConeCutParams::for_dimension(std::size_t n, const Scalar& c_hat) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "cone cuts need dimension >= 2");
  if (!(sgn(c_hat) > 0 && c_hat <= 1)) {
    throw Error(ErrorCode::kInvalidArgument, "c_hat must lie in (0, 1]");
  }
  ConeCutParams p;
  p.dim = n;
  p.cos_phi = Scalar(1, static_cast<unsigned long>(2 * n));
  p.c_hat = c_hat;
  p.shrink_factor_bound = std::pow(cut_beta_hat(n, p.cos_phi.get_d()), static_cast<double>(n));
  Integer scaled = ceil_of(from_double(p.shrink_factor_bound) * Scalar(1000000000000L));
  p.shrink_bound_exact = Scalar(scaled, Integer(1000000000000L));
  p.shrink_bound_exact.canonicalize();
  return p;
}

ConeCut cone_cut_construct(const ComparisonOracle& oracle, const std::vector<double>& ball_center,
                           double ball_radius, const ConeCutParams& params) {
  const std::size_t n = ball_center.size();
  if (n < 2 || n != params.dim) {
    throw Error(ErrorCode::kInvalidArgument, "cone cut dimension mismatch");
  }
  if (!(ball_radius > 0)) throw Error(ErrorCode::kNonpositiveFactor, "ball radius must be positive");

  const double cf = params.face_cos();
  const double tan_phi = std::sqrt(1 - cf * cf) / cf;
  const double psi = std::atan(static_cast<double>(n - 1) * tan_phi);
  const double cos_psi = std::cos(psi);
  const double sin_psi = std::sin(psi);
  // Each pyramid step shrinks the apex radius by sin(psi); the walk must stop
  // once the apex is within radius / n of the center.
  const auto bound = static_cast<std::size_t>(
      std::ceil(std::log(static_cast<double>(n)) / -std::log(sin_psi)) + 1);
  const std::size_t cap = 10 * bound;

  ConeCut out;
  auto exact = [](const Vec& v) { return Vector::from_doubles(v); };

  Vec apex_d;
  Vector apex;
  {
    auto simplex = regular_simplex(n);
    std::vector<Vec> pts;
    for (const auto& s : simplex) pts.push_back(axpy(ball_center, ball_radius, s));
    std::size_t best = 0;
    Vector best_x = exact(pts[0]);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      Vector x = exact(pts[i]);
      if (!oracle.compare_leq(x, best_x)) {
        best = i;
        best_x = std::move(x);
      }
    }
    apex_d = pts[best];
    apex = best_x;
    out.apex_transcript.push_back(apex);
  }

  for (;;) {
    if (out.pyramids >= cap) {
      throw Error(ErrorCode::kIterationCap, "pyramid walk exceeded its iteration cap");
    }
    ++out.pyramids;
    Vec radial(n);
    for (std::size_t i = 0; i < n; ++i) radial[i] = apex_d[i] - ball_center[i];
    const double rk = norm(radial);
    if (!(rk > 0)) throw Error(ErrorCode::kInternal, "pyramid apex reached the ball center");
    Vec h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = -radial[i] / rk;
    const double edge = rk * cos_psi;

    std::vector<Vec> base_d;
    std::vector<Vector> base;
    for (const auto& d : base_directions(h)) {
      Vec v = apex_d;
      for (std::size_t i = 0; i < n; ++i) v[i] += edge * (cos_psi * h[i] + sin_psi * d[i]);
      base.push_back(exact(v));
      base_d.push_back(std::move(v));
    }

    std::size_t winner = n;  // n means the apex itself
    const Vector* current = &apex;
    for (std::size_t i = 0; i < n; ++i) {
      if (!oracle.compare_leq(base[i], *current)) {
        winner = i;
        current = &base[i];
      }
    }
    if (winner == n) {
      out.vertices.push_back(apex);
      for (const auto& b : base) out.vertices.push_back(b);
      out.cone.apex = apex;
      for (const auto& b : base) out.cone.generators.push_back(apex - b);
      return out;
    }
    apex_d = base_d[winner];
    apex = base[winner];
    out.apex_transcript.push_back(apex);
  }
}

RotationCone inscribed_rotation_cone(const ConeAtApex& cone) {
  const std::size_t n = cone.apex.size();
  if (cone.generators.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "inscribed cone needs exactly n generators");
  }
  Matrix g = Matrix::from_columns(cone.generators, n);
  Matrix dual = invert(g);  // rows are the facet normals
  Vec axis(n, 0.0);
  for (const auto& gen : cone.generators) {
    Vec d = gen.to_doubles();
    double l = norm(d);
    for (std::size_t i = 0; i < n; ++i) axis[i] += d[i] / l;
  }
  double la = norm(axis);
  for (double& x : axis) x /= la;
  double min_sin = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    Vec nu = dual.row(j).to_doubles();
    double s = dot(nu, axis) / norm(nu);
    min_sin = std::min(min_sin, s);
  }
  if (!(min_sin > 0)) throw Error(ErrorCode::kInternal, "cone axis is not interior");
  return {cone.apex.to_doubles(), axis, std::sqrt(std::max(0.0, 1 - min_sin * min_sin))};
}

double covering_ratio_on_axis(std::size_t n, double cos_phi, double t) {
  const double inf = std::numeric_limits<double>::infinity();
  if (!(t > -1 && t < 1)) return inf;
  const double nd = static_cast<double>(n);
  // End of the boundary arc of W outside the cone.
  const double s = -t * cos_phi + std::sqrt(t * t * cos_phi * cos_phi - t * t + 1);
  const double x0 = t + s * cos_phi;
  const double c = (nd * x0 - 1) / (nd + 1);
  if (!(c < 0)) return inf;
  const double a = 1 + c;
  const double denom = 1 + 2 * c - x0;
  if (!(denom > 0)) return inf;
  const double b = a * std::sqrt((1 - x0) / denom);
  return a * std::pow(b, nd - 1);
}

Spheroid covering_spheroid(const std::vector<double>& ball_center, double ball_radius,
                           const RotationCone& cone) {
  const std::size_t n = ball_center.size();
  const double inf = std::numeric_limits<double>::infinity();
  Vec p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = (cone.apex[i] - ball_center[i]) / ball_radius;
  const double cos_phi = cone.cos_half_angle;
  const double sin_phi = std::sqrt(1 - cos_phi * cos_phi);
  const double alpha = dot(p, cone.axis);
  Vec lateral = axpy(p, -alpha, cone.axis);
  // An on-axis apex this far forward keeps the shifted cone inside the given one.
  const double t = alpha + norm(lateral) * cos_phi / sin_phi;

  Spheroid s;
  s.axis = cone.axis;
  s.center = ball_center;
  s.volume_ratio = covering_ratio_on_axis(n, cos_phi, t);
  if (s.volume_ratio == inf) return s;
  const double nd = static_cast<double>(n);
  const double x0 = t + (-t * cos_phi + std::sqrt(t * t * cos_phi * cos_phi - t * t + 1)) * cos_phi;
  const double c = (nd * x0 - 1) / (nd + 1);
  const double a = 1 + c;
  const double b = a * std::sqrt((1 - x0) / (1 + 2 * c - x0));
  for (std::size_t i = 0; i < n; ++i) s.center[i] += ball_radius * c * cone.axis[i];
  s.axial = a * ball_radius;
  s.transverse = b * ball_radius;
  return s;
}

Ellipsoid covering_ellipsoid(const Vector& ball_center, const Scalar& ball_radius,
                             const ConeAtApex& cone, const ConeCutParams& params) {
  const std::size_t n = ball_center.size();
  RotationCone rc = inscribed_rotation_cone(cone);
  const double cos_phi = params.cos_phi.get_d();
  if (rc.cos_half_angle > cos_phi) {
    throw Error(ErrorCode::kInvalidArgument, "cone is narrower than the cut angle");
  }
  rc.cos_half_angle = cos_phi;
  Spheroid s = covering_spheroid(ball_center.to_doubles(), ball_radius.get_d(), rc);
  if (!(s.volume_ratio <= params.shrink_factor_bound)) {
    throw Error(ErrorCode::kShrinkViolation, "covering ellipsoid exceeds the volume budget");
  }
  const double inflate = 1 + 1e-9;
  Matrix shape(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double v = (s.axial - s.transverse) * s.axis[i] * s.axis[j];
      if (i == j) v += s.transverse;
      shape(i, j) = from_double(v * inflate);
    }
  }
  Ellipsoid e(shape, Vector::from_doubles(s.center));
  Scalar ratio = e.volume_factor();
  Scalar wvol = 1;
  for (std::size_t i = 0; i < n; ++i) wvol *= ball_radius;
  if (ratio > params.shrink_bound_exact * wvol) {
    throw Error(ErrorCode::kShrinkViolation, "covering ellipsoid exceeds the volume budget");
  }
  return e;
}

}  // namespace conicmin
