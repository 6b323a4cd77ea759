#pragma once

#include <vector>

#include "conicmin/exact.hpp"

namespace conicmin {

// El(A, a) = { a + A u : |u| <= 1 }.
class Ellipsoid {
 public:
  // Throws Error(kSingular) when the shape is singular.
  Ellipsoid(Matrix shape, Vector center);

  std::size_t dim() const { return center_.size(); }
  const Matrix& shape() const { return shape_; }
  const Vector& center() const { return center_; }
  const Matrix& inverse_shape() const { return inverse_; }

  // |A^{-1}(x - a)|^2, exact.
  Scalar gauge_sq(const Vector& x) const;
  bool contains(const Vector& x) const { return gauge_sq(x) <= 1; }
  // |det A|; the volume is this times the unit-ball volume.
  Scalar volume_factor() const;

 private:
  Matrix shape_;
  Vector center_;
  Matrix inverse_;
};

Ellipsoid make_ball(const Vector& center, const Scalar& radius);

// Image {B x : x in E} = El(B A, B a).
Ellipsoid ellipsoid_transform(const Matrix& b, const Ellipsoid& e);
// El(factor * A, a).
Ellipsoid scale_about_center(const Ellipsoid& e, const Scalar& factor);
// Squared width 4 |c^T A|^2 of E along c.
Scalar width_along(const Ellipsoid& e, const Vector& c);

struct ConeAtApex {
  Vector apex;
  std::vector<Vector> generators;
};

bool cone_member(const ConeAtApex& cone, const Vector& y);

struct VPolytope {
  std::vector<Vector> vertices;
};

bool polytope_member(const VPolytope& p, const Vector& y);

// Euclidean distance from y to conv(vertices), by Wolfe's minimum-norm-point
// method. Absolute accuracy about 1e-9 for moderately scaled inputs.
double polytope_distance(const std::vector<std::vector<double>>& vertices,
                         const std::vector<double>& y);
double polytope_distance(const VPolytope& p, const std::vector<double>& y);

}  // namespace conicmin
