#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "conicmin/cone_cut.hpp"
#include "conicmin/geometry.hpp"
#include "conicmin/lattice.hpp"
#include "conicmin/oracle.hpp"

namespace conicmin {

// Minimize over (center + radius * B2) ∩ lattice ∩ {x : A x = b}.
struct ProblemInstance {
  ComparisonOracle oracle;
  Vector center;
  Scalar radius;
  LatticeBasis lattice;
  Matrix subspace_a;  // zero rows means no affine constraint
  Vector subspace_b;

  static ProblemInstance over_integers(ComparisonOracle oracle, Vector center, Scalar radius);
};

// Points shift + basis * t for t integral.
struct AffineLattice {
  Vector shift;
  Matrix basis;  // ambient x rank, columns independent (rank may be 0)

  std::size_t rank() const { return basis.cols(); }
  Vector point(const Vector& t) const { return shift + basis * t; }
};

struct Preprocessed {
  AffineLattice slice;  // LLL-reduced basis
  Vector center;        // orthogonal projection of the ball center onto the slice's span
  Scalar radius;
};

// nullopt when ball ∩ L ∩ H is certified empty.
std::optional<Preprocessed> preprocess(const ProblemInstance& p);

// Restricts an affine lattice to {t : c^T t = tau}; nullopt if no integral
// solution exists. The returned basis is LLL-reduced.
std::optional<AffineLattice> restrict_to_hyperplane(const AffineLattice& slice,
                                                    const Vector& c, const Integer& tau);

struct MinimizeParams {
  Scalar c_hat = Scalar(1, 2);
  int max_backoffs = 3;
  std::size_t max_depth = 64;
};

struct DepthStats {
  std::uint64_t shrink_iterations = 0;
  std::uint64_t branches = 0;     // hyperplanes actually visited
  std::uint64_t backoffs = 0;
  std::uint64_t subproblems = 0;  // slices processed at this depth
};

struct MinimizeResult {
  std::optional<Vector> point;  // nullopt: EMPTY
  std::uint64_t oracle_calls = 0;
  std::vector<DepthStats> per_depth;

  bool empty() const { return !point.has_value(); }
  std::uint64_t total_shrink_iterations() const;
  std::uint64_t total_branches() const;
};

enum class CutKind { kOracle, kDomain };

struct ShrinkEvent {
  std::size_t depth = 0;
  std::size_t dim = 0;
  CutKind kind = CutKind::kOracle;
  const AffineLattice* slice = nullptr;
  const Ellipsoid* before = nullptr;  // coefficient space of the slice
  const Ellipsoid* after = nullptr;
  Scalar det_ratio;
  Scalar bound;  // exact per-dimension budget
  Scalar c_hat;
};

struct BranchEvent {
  std::size_t depth = 0;
  std::size_t dim = 0;
  const AffineLattice* slice = nullptr;
  Vector direction;
  std::uint64_t hyperplanes_in_ellipsoid = 0;  // integers in c^T E
  std::uint64_t hyperplanes_visited = 0;       // after clipping to the ball
  Scalar c_hat;
};

struct MinimizeObserver {
  std::function<void(const ShrinkEvent&)> on_shrink;
  std::function<void(const BranchEvent&)> on_branch;
};

MinimizeResult minimize(const ProblemInstance& p, const MinimizeParams& params = {},
                        const MinimizeObserver& observer = {});

// Index of a minimum of a conic function along consecutive points of a line;
// ties go to the smallest index.
std::size_t minimize_dim1(const ComparisonOracle& oracle, const std::vector<Vector>& points);

struct Progression {
  Vector start;
  Vector step;
  std::size_t count = 0;
  Vector at(std::size_t i) const { return start + Scalar(static_cast<unsigned long>(i)) * step; }
};

std::size_t minimize_dim1(const ComparisonOracle& oracle, const Progression& points);

}  // namespace conicmin
