#pragma once

#include <cstddef>
#include <vector>

#include "conicmin/geometry.hpp"
#include "conicmin/oracle.hpp"

namespace conicmin {

// gamma(phi) = (1 - n cos phi) / (1 + n).
double cut_gamma(std::size_t n, double cos_phi);
// Volume factor beta(phi) of the minimal ellipsoid around W \ C for a cone
// with apex at the center of W (closed form).
double cut_beta(std::size_t n, double cos_phi);
// (1 + beta) / 2.
double cut_beta_hat(std::size_t n, double cos_phi);

struct ConeCutParams {
  std::size_t dim = 2;
  Scalar cos_phi;  // cut angle cosine, 1/(2n)
  Scalar c_hat;    // apex-offset constant
  double shrink_factor_bound = 1.0;  // beta_hat(phi)^n
  Scalar shrink_bound_exact;         // shrink_factor_bound rounded up at 1e-12

  // Pyramid faces use a slightly wider angle so the rounded cone still
  // contains the rotation cone of half-angle phi.
  double face_cos() const { return cos_phi.get_d() * 255.0 / 256.0; }
  // Radius of the pyramid-walk ball in the unit frame of E.
  double walk_radius() const { return c_hat.get_d() / (16.0 * static_cast<double>(dim)); }

  static ConeCutParams for_dimension(std::size_t n, const Scalar& c_hat = Scalar(1, 2));
};

struct ConeCut {
  ConeAtApex cone;                    // apex + cone(apex - v_i)
  std::vector<Vector> vertices;       // final pyramid: apex then n base vertices
  std::vector<Vector> apex_transcript;  // simplex max vertex, then each new apex
  std::size_t pyramids = 0;
};

// Walks regular pyramids from the oracle-max vertex of a simplex inscribed in
// the ball until the apex dominates its own pyramid. Throws
// Error(kIterationCap) when the walk exceeds ten times the proven bound.
ConeCut cone_cut_construct(const ComparisonOracle& oracle,
                           const std::vector<double>& ball_center, double ball_radius,
                           const ConeCutParams& params);

struct RotationCone {
  std::vector<double> apex;
  std::vector<double> axis;  // unit
  double cos_half_angle = 0;
};

// Largest rotation cone (about the generators' mean direction) inside a
// simplicial cone with exactly n generators.
RotationCone inscribed_rotation_cone(const ConeAtApex& cone);

struct Spheroid {
  std::vector<double> center;
  std::vector<double> axis;
  double axial = 0;       // semi-axis along axis
  double transverse = 0;  // remaining semi-axes
  double volume_ratio = 0;  // vol(spheroid) / vol(W); infinity if no cover
};

// Minimal spheroid about the cone axis containing W \ C, where the cone is
// first shrunk to one with apex on the axis through W's center.
Spheroid covering_spheroid(const std::vector<double>& ball_center, double ball_radius,
                           const RotationCone& cone);
// Volume ratio for a unit ball and an on-axis apex at signed offset t.
double covering_ratio_on_axis(std::size_t n, double cos_phi, double t);

// Exact ellipsoid containing W \ C; throws Error(kShrinkViolation) when its
// volume ratio exceeds the params bound.
Ellipsoid covering_ellipsoid(const Vector& ball_center, const Scalar& ball_radius,
                             const ConeAtApex& cone, const ConeCutParams& params);

}  // namespace conicmin
