#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "conicmin/geometry.hpp"
#include "conicmin/oracle.hpp"

namespace conicmin {

enum class Variant { kGeneral, kEven };

const char* to_string(Variant v);
// "general" or "even"; throws Error(kParseError) otherwise.
Variant parse_variant(const std::string& text);

struct AdversaryInstance {
  std::size_t n = 1;
  long r = 1;
  Variant variant = Variant::kGeneral;
  // GENERAL: 3^n points with ranks 0..3^n-1. EVEN: the 2^n points of T and
  // their negations, ranks 0..2^n-1 shared by each pair. The origin (rank -1
  // for EVEN) is not listed.
  std::vector<Vector> points;
  std::vector<long> values;

  // Points sorted by value; ties keep the order of `points`.
  std::vector<std::size_t> order() const;
};

// Throws Error(kEmptyFamily) for EVEN with r < 2, kInvalidArgument for n < 1
// or r < 1.
AdversaryInstance sample_family(std::size_t n, long r, Variant variant, std::uint64_t seed);
// Exact family size.
Integer family_size(std::size_t n, long r, Variant variant);
// Every member; throws Error(kTooLarge) past `limit` members.
std::vector<AdversaryInstance> generate_family(std::size_t n, long r, Variant variant,
                                               std::uint64_t limit = 1'000'000);

struct RankedPoint {
  Vector point;
  long value = 0;
};

// y in C_f(R), the union over z in R of cone({x in R : f(x) <= f(z), x != z} | z).
bool cone_hull_member(const std::vector<RankedPoint>& r, const Vector& y);

struct HullCheck {
  std::size_t checked = 0;
  std::vector<std::size_t> violations;  // positions i (0-based) in the sorted sequence
  bool ok() const { return violations.empty(); }
};

// x(i) not in C_f(x(1), ..., x(i-1)) for every i >= 2; for EVEN the origin
// with value -1 joins the predecessors when `with_origin` is set.
HullCheck hull_avoidance(const AdversaryInstance& inst, bool with_origin);
// The check matching the instance's variant (with origin for EVEN).
inline HullCheck hull_avoidance(const AdversaryInstance& inst) {
  return hull_avoidance(inst, inst.variant == Variant::kEven);
}
// EVEN only: the check on T itself (no negations, no origin), which the
// family construction does satisfy.
HullCheck hull_avoidance_half_set(const AdversaryInstance& inst);

// Conic extension of h_T to the whole space, built from nested convex hulls
// of successive minima sets.
class LayeredExtension {
 public:
  std::size_t dim() const { return dim_; }
  const std::vector<VPolytope>& layers() const { return layers_; }
  const std::vector<double>& layer_values() const { return values_; }
  const std::vector<double>& layer_tau() const { return tau_; }

  double operator()(const Vector& x) const;
  // Index of the smallest layer containing x, or layers().size() if none.
  std::size_t layer_of(const Vector& x) const;

 private:
  friend LayeredExtension build_extension(const AdversaryInstance& inst);
  std::size_t dim_ = 0;
  std::vector<VPolytope> layers_;
  std::vector<std::vector<std::vector<double>>> layer_doubles_;
  std::vector<double> values_;
  std::vector<double> tau_;  // tau_[i]: max vertex distance of layer i to layer i-1
};

// Throws Error(kUnsupportedDimension) for n > 3.
LayeredExtension build_extension(const AdversaryInstance& inst);

// f(x) <= f(y) + tolerance.
ComparisonOracle adversary_oracle(std::shared_ptr<const LayeredExtension> ext,
                                  double tolerance = 1e-9);

// True when no cone(T | y), y in Y, T a subset of Y and Z, meets Z.
// Throws Error(kTooLarge) when |Y| + |Z| > 10.
bool verify_nonsingularity(const std::vector<Vector>& first_minima,
                           const std::vector<Vector>& second_minima);

// log2 of the family size.
double analytic_bound(std::size_t n, long r, Variant variant);

struct TrialRow {
  std::uint64_t seed = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t shrink_iterations = 0;
  std::uint64_t branches = 0;
  Vector argmin;
  bool matches_bruteforce = false;
};

struct LowerBoundReport {
  std::size_t n = 1;
  long r = 1;
  Variant variant = Variant::kGeneral;
  double analytic_bound = 0;
  std::vector<TrialRow> rows;
  std::uint64_t min_calls = 0;
  std::uint64_t max_calls = 0;
  double mean_calls = 0;
  bool all_match() const;
};

// Minimizes the adversary oracle of `trials` sampled instances over
// r*B_inf ∩ Z^n (minus the origin for EVEN), seeds seed, seed+1, ...
LowerBoundReport lower_bound_report(std::size_t n, long r, Variant variant, std::size_t trials,
                                    std::uint64_t seed);

}  // namespace conicmin
