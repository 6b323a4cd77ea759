#include "conicmin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conicmin/error.hpp"
#include "conicmin/exact_lp.hpp"

namespace conicmin {

Ellipsoid::Ellipsoid(Matrix shape, Vector center)
    : shape_(std::move(shape)), center_(std::move(center)) {
  if (!shape_.is_square() || shape_.rows() != center_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "ellipsoid shape/center mismatch");
  }
  inverse_ = invert(shape_);
}

Scalar Ellipsoid::gauge_sq(const Vector& x) const {
  return (inverse_ * (x - center_)).squared_norm();
}

Scalar Ellipsoid::volume_factor() const { return abs(determinant(shape_)); }

Ellipsoid make_ball(const Vector& center, const Scalar& radius) {
  if (sgn(radius) <= 0) throw Error(ErrorCode::kNonpositiveFactor, "ball radius must be positive");
  return Ellipsoid(radius * Matrix::identity(center.size()), center);
}

Ellipsoid ellipsoid_transform(const Matrix& b, const Ellipsoid& e) {
  if (!b.is_square() || b.rows() != e.dim()) {
    throw Error(ErrorCode::kShapeMismatch, "transform dimension mismatch");
  }
  if (sgn(determinant(b)) == 0) throw Error(ErrorCode::kSingular, "transform is singular");
  return Ellipsoid(b * e.shape(), b * e.center());
}

Ellipsoid scale_about_center(const Ellipsoid& e, const Scalar& factor) {
  if (sgn(factor) <= 0) throw Error(ErrorCode::kNonpositiveFactor, "scale factor must be positive");
  return Ellipsoid(factor * e.shape(), e.center());
}

Scalar width_along(const Ellipsoid& e, const Vector& c) {
  if (c.is_zero()) throw Error(ErrorCode::kZeroDirection, "width along the zero vector");
  return 4 * (e.shape().transpose() * c).squared_norm();
}

bool cone_member(const ConeAtApex& cone, const Vector& y) {
  Vector d = y - cone.apex;
  if (d.is_zero()) return true;
  if (cone.generators.empty()) return false;
  Matrix g = Matrix::from_columns(cone.generators, d.size());
  return nonnegative_solution(g, d).has_value();
}

bool polytope_member(const VPolytope& p, const Vector& y) {
  if (p.vertices.empty()) throw Error(ErrorCode::kInvalidArgument, "empty polytope");
  const std::size_t n = y.size();
  const std::size_t k = p.vertices.size();
  Matrix a(n + 1, k);
  Vector b(n + 1);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) a(i, j) = p.vertices[j][i];
    a(n, j) = 1;
  }
  for (std::size_t i = 0; i < n; ++i) b[i] = y[i];
  b[n] = 1;
  return nonnegative_solution(a, b).has_value();
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Minimizes |sum alpha_i q_i| over sum alpha_i = 1 (no sign constraint).
bool affine_minimizer(const std::vector<std::vector<double>>& q,
                      const std::vector<std::size_t>& s, std::vector<double>& alpha) {
  const std::size_t m = s.size();
  std::vector<std::vector<double>> sys(m + 1, std::vector<double>(m + 2, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) sys[i][j] = dot(q[s[i]], q[s[j]]);
    sys[i][m] = 1.0;
    sys[m][i] = 1.0;
  }
  sys[m][m + 1] = 1.0;
  for (std::size_t c = 0; c <= m; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r <= m; ++r)
      if (std::abs(sys[r][c]) > std::abs(sys[p][c])) p = r;
    if (std::abs(sys[p][c]) < 1e-300) return false;
    std::swap(sys[p], sys[c]);
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == c) continue;
      double f = sys[r][c] / sys[c][c];
      if (f == 0.0) continue;
      for (std::size_t j = c; j <= m + 1; ++j) sys[r][j] -= f * sys[c][j];
    }
  }
  alpha.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) alpha[i] = sys[i][m + 1] / sys[i][i];
  return true;
}

}  // namespace

double polytope_distance(const std::vector<std::vector<double>>& vertices,
                         const std::vector<double>& y) {
  if (vertices.empty()) throw Error(ErrorCode::kInvalidArgument, "empty polytope");
  const std::size_t n = y.size();
  std::vector<std::vector<double>> q(vertices.size(), std::vector<double>(n));
  double scale = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t d = 0; d < n; ++d) q[i][d] = vertices[i][d] - y[d];
    double nq = dot(q[i], q[i]);
    scale = std::max(scale, nq);
    if (nq < dot(q[start], q[start])) start = i;
  }
  if (scale == 0) return 0;

  std::vector<std::size_t> s{start};
  std::vector<double> lambda{1.0};
  std::vector<double> x = q[start];
  auto recompute_x = [&] {
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t d = 0; d < n; ++d) x[d] += lambda[i] * q[s[i]][d];
  };

  for (int major = 0; major < 10000; ++major) {
    double xx = dot(x, x);
    if (xx <= 1e-26 * scale) return 0;
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q.size(); ++i) {
      double v = dot(x, q[i]);
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (xx - best <= 1e-14 * scale) break;
    if (std::find(s.begin(), s.end(), j) != s.end()) break;
    s.push_back(j);
    lambda.push_back(0.0);

    for (int minor = 0; minor < 1000; ++minor) {
      std::vector<double> alpha;
      if (!affine_minimizer(q, s, alpha)) {
        // Affinely dependent support: drop the newest point and stop.
        s.pop_back();
        lambda.pop_back();
        recompute_x();
        return std::sqrt(dot(x, x));
      }
      if (std::all_of(alpha.begin(), alpha.end(), [](double a) { return a > 1e-15; })) {
        lambda = alpha;
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (alpha[i] <= 1e-15) {
          double denom = lambda[i] - alpha[i];
          if (denom > 0) theta = std::min(theta, lambda[i] / denom);
        }
      }
      for (std::size_t i = 0; i < s.size(); ++i)
        lambda[i] = (1 - theta) * lambda[i] + theta * alpha[i];
      std::vector<std::size_t> s2;
      std::vector<double> l2;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (lambda[i] > 1e-15) {
          s2.push_back(s[i]);
          l2.push_back(lambda[i]);
        }
      }
      if (s2.size() == s.size()) {
        // Guard against a stalled step: drop the smallest weight.
        auto it = std::min_element(l2.begin(), l2.end());
        auto idx = static_cast<std::size_t>(it - l2.begin());
        s2.erase(s2.begin() + static_cast<std::ptrdiff_t>(idx));
        l2.erase(it);
      }
      double total = 0;
      for (double l : l2) total += l;
      for (double& l : l2) l /= total;
      s = std::move(s2);
      lambda = std::move(l2);
    }
    recompute_x();
  }
  return std::sqrt(dot(x, x));
}

double polytope_distance(const VPolytope& p, const std::vector<double>& y) {
  std::vector<std::vector<double>> v;
  v.reserve(p.vertices.size());
  for (const auto& vert : p.vertices) v.push_back(vert.to_doubles());
  return polytope_distance(v, y);
}

}  // namespace conicmin
