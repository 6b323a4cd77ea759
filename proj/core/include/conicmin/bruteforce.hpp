#pragma once

#include <optional>
#include <vector>

#include "conicmin/lattice.hpp"
#include "conicmin/oracle.hpp"

namespace conicmin {

enum class Norm { kL2, kLinf };

struct EnumerationDomain {
  Vector center;
  Scalar radius;
  Norm norm = Norm::kL2;
  LatticeBasis lattice;
  std::vector<Vector> exclusions;
  std::optional<std::pair<Matrix, Vector>> subspace;  // A x = b

  // center + radius * B, intersected with Z^n.
  static EnumerationDomain integer_ball(Vector center, Scalar radius, Norm norm = Norm::kL2);
  bool contains(const Vector& x) const;
};

inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;

// Every domain point, ordered lexicographically by lattice coefficients.
// Throws Error(kTooLarge) when the candidate box exceeds kEnumerationLimit.
std::vector<Vector> enumerate(const EnumerationDomain& dom);

struct MinimaSets {
  std::vector<Vector> first;
  std::vector<Vector> second;
};

// First and second minima sets in a single pass, at most three comparisons
// per point.
MinimaSets brute_min(const ComparisonOracle& oracle, const std::vector<Vector>& points);
MinimaSets brute_min(const ComparisonOracle& oracle, const EnumerationDomain& dom);

}  // namespace conicmin
