#pragma once

#include "conicmin/exact.hpp"
#include "conicmin/geometry.hpp"

namespace conicmin {

// Lattice generated by the (linearly independent) columns of a rational matrix.
// Rank zero is allowed and denotes the trivial lattice {0}.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  // Throws Error(kDegenerate) when the columns are dependent.
  explicit LatticeBasis(Matrix basis);

  static LatticeBasis integer_lattice(std::size_t n);

  const Matrix& basis() const { return basis_; }
  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t rank() const { return basis_.cols(); }
  Vector point(const Vector& coefficients) const { return basis_ * coefficients; }

 private:
  Matrix basis_;
};

struct ReducedBasis {
  LatticeBasis basis;
  Matrix transform;  // unimodular, reduced = input * transform
};

ReducedBasis lll_reduce_with_transform(const LatticeBasis& lattice,
                                       const Scalar& delta = Scalar(3, 4));
LatticeBasis lll_reduce(const LatticeBasis& lattice, const Scalar& delta = Scalar(3, 4));

struct LatticePoint {
  Vector vector;
  Vector coefficients;  // integral, with respect to the input basis
  Scalar squared_norm;  // squared length (svp) or squared distance (cvp)
};

// Shortest nonzero vector; ties go to the lexicographically smallest
// coefficient vector.
LatticePoint shortest_vector(const LatticeBasis& lattice);
// Closest lattice vector to target; same tie rule.
LatticePoint closest_vector(const LatticeBasis& lattice, const Vector& target);

inline Vector svp(const LatticeBasis& lattice) { return shortest_vector(lattice).vector; }
inline Vector cvp(const LatticeBasis& lattice, const Vector& target) {
  return closest_vector(lattice, target).vector;
}

struct FlatnessCertificate {
  Vector direction;      // integral, in lattice coefficient space, first nonzero > 0
  Scalar squared_width;  // exact
  double width() const;
};

// Minimal lattice width of E over the lattice L (rank must equal the ambient
// dimension); throws Error(kDegenerate) otherwise.
FlatnessCertificate flatness_direction(const Ellipsoid& e, const LatticeBasis& lattice);

// Same, for E given directly in lattice coefficient space (lattice Z^k).
FlatnessCertificate flatness_direction_integer(const Ellipsoid& e);

}  // namespace conicmin
