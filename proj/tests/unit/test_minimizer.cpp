#include <gtest/gtest.h>

#include <random>

#include "conicmin/bruteforce.hpp"
#include "conicmin/error.hpp"
#include "conicmin/minimizer.hpp"
#include "testkit.hpp"

namespace conicmin {
namespace {

using testkit::Family;

ValueOracle sumsq(std::size_t n, Vector c = {}) {
  if (c.empty()) c = Vector(n);
  return quadratic_oracle(Matrix::identity(n), c);
}

// Value at the brute-force first minimum over the same domain.
Value brute_value(const ValueOracle& f, const ProblemInstance& p) {
  EnumerationDomain dom{p.center, p.radius, Norm::kL2, p.lattice, {}, std::nullopt};
  if (p.subspace_a.rows() > 0) dom.subspace = std::make_pair(p.subspace_a, p.subspace_b);
  MinimaSets m = brute_min(from_value_oracle(f), dom);
  EXPECT_FALSE(m.first.empty());
  return f(m.first.front());
}

TEST(Preprocess, WholeLatticeKeepsCenter) {
  auto p = ProblemInstance::over_integers(from_value_oracle(sumsq(2)), {Scalar(1, 3), 2}, 3);
  auto pre = preprocess(p);
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->slice.rank(), 2u);
  EXPECT_EQ(pre->center, (Vector{Scalar(1, 3), 2}));
}

TEST(Preprocess, LineSliceOfRadiusTwoBall) {
  auto p = ProblemInstance::over_integers(from_value_oracle(sumsq(2)), {0, 0}, 2);
  p.subspace_a = Matrix{{1, 1}};
  p.subspace_b = Vector{1};
  auto pre = preprocess(p);
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->slice.rank(), 1u);
  EXPECT_EQ(pre->center, (Vector{Scalar(1, 2), Scalar(1, 2)}));
  // Integer points on x1 + x2 = 1 within distance 2 are (0,1) and (1,0);
  // (-1,2) and (2,-1) sit at distance sqrt(5).
  EnumerationDomain dom = EnumerationDomain::integer_ball({0, 0}, 2);
  dom.subspace = std::make_pair(p.subspace_a, p.subspace_b);
  EXPECT_EQ(enumerate(dom).size(), 2u);
  auto res = minimize(p);
  ASSERT_FALSE(res.empty());
  EXPECT_TRUE(*res.point == (Vector{0, 1}) || *res.point == (Vector{1, 0}));
  for (int k = -3; k <= 3; ++k) {
    Vector x = pre->slice.point(Vector{k});
    EXPECT_EQ(x[0] + x[1], 1);
  }
}

TEST(Preprocess, NonIntegralHyperplaneIsEmpty) {
  auto p = ProblemInstance::over_integers(from_value_oracle(sumsq(2)), {0, 0}, 5);
  p.subspace_a = Matrix{{1, 0}};
  p.subspace_b = Vector{Scalar(1, 2)};
  EXPECT_FALSE(preprocess(p));
  MinimizeResult r = minimize(p);
  EXPECT_TRUE(r.empty());
}

TEST(Preprocess, FarSubspaceIsEmpty) {
  auto p = ProblemInstance::over_integers(from_value_oracle(sumsq(2)), {0, 0}, 2);
  p.subspace_a = Matrix{{1, 0}};
  p.subspace_b = Vector{3};
  EXPECT_FALSE(preprocess(p));
}

TEST(Preprocess, RejectsBadShapes) {
  auto p = ProblemInstance::over_integers(from_value_oracle(sumsq(2)), {0, 0}, 0);
  EXPECT_THROW(preprocess(p), Error);
  p.radius = 1;
  p.subspace_a = Matrix{{1, 0, 0}};
  p.subspace_b = Vector{0};
  EXPECT_THROW(preprocess(p), Error);
}

TEST(RestrictToHyperplane, Examples) {
  AffineLattice z2{Vector(2), Matrix::identity(2)};
  auto line = restrict_to_hyperplane(z2, Vector{2, 4}, Integer(6));
  ASSERT_TRUE(line);
  EXPECT_EQ(line->rank(), 1u);
  for (int k = -2; k <= 2; ++k) {
    Vector x = line->point(Vector{k});
    EXPECT_TRUE(x.is_integral());
    EXPECT_EQ(2 * x[0] + 4 * x[1], 6);
  }
  EXPECT_FALSE(restrict_to_hyperplane(z2, Vector{2, 4}, Integer(3)));
  EXPECT_THROW(restrict_to_hyperplane(z2, Vector{0, 0}, Integer(0)), Error);
  EXPECT_THROW(restrict_to_hyperplane(z2, Vector{Scalar(1, 2), 0}, Integer(0)), Error);
  // Rank one down to a single point.
  auto pt = restrict_to_hyperplane(*line, Vector{1}, Integer(0));
  ASSERT_TRUE(pt);
  EXPECT_EQ(pt->rank(), 0u);
}

TEST(MinimizeDim1, Examples) {
  ComparisonOracle dist7 = from_value_oracle(ValueOracle(1, [](const Vector& x) {
    Scalar d = x[0] - 7;
    return Value(Scalar(abs(d)));
  }));
  Progression line{Vector{0}, Vector{1}, 21};
  EXPECT_EQ(minimize_dim1(dist7, line), 7u);
  ComparisonOracle constant = from_value_oracle(ValueOracle(1, [](const Vector&) { return Value(0); }));
  EXPECT_EQ(minimize_dim1(constant, line), 0u);
  EXPECT_EQ(minimize_dim1(dist7, Progression{Vector{3}, Vector{1}, 1}), 0u);
  EXPECT_THROW(minimize_dim1(dist7, Progression{Vector{3}, Vector{1}, 0}), Error);
  std::vector<Vector> pts;
  for (int i = -5; i <= 30; i += 5) pts.push_back(Vector{i});
  EXPECT_EQ(pts[minimize_dim1(dist7, pts)], Vector{5});
}

TEST(MinimizeDim1, MatchesScanOnRandomConvexSequences) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    Scalar target = testkit::random_rational(rng, 40, 3);
    Scalar slope = Scalar(static_cast<long>(rng() % 4 + 1), 1);
    ValueOracle f(1, [=](const Vector& x) {
      Scalar d = x[0] - target;
      return Value(Scalar(slope * abs(d)));
    });
    std::size_t count = rng() % 60 + 1;
    Progression line{Vector{-20}, Vector{1}, count};
    std::size_t best = 0;
    for (std::size_t i = 1; i < count; ++i) {
      if (f(line.at(i)) < f(line.at(best))) best = i;
    }
    EXPECT_EQ(minimize_dim1(from_value_oracle(f), line), best);
  }
}

TEST(Minimize, SumOfSquaresAtOrigin) {
  auto p = ProblemInstance::over_integers(from_value_oracle(sumsq(2)), {0, 0}, 5);
  MinimizeResult r = minimize(p);
  ASSERT_FALSE(r.empty());
  EXPECT_EQ(*r.point, (Vector{0, 0}));
  EXPECT_GT(r.oracle_calls, 0u);
}

TEST(Minimize, OffLatticeTarget) {
  ValueOracle f = sumsq(2, {Scalar(3, 2), Scalar(3, 2)});
  auto p = ProblemInstance::over_integers(from_value_oracle(f), {0, 0}, 5);
  MinimizeResult r = minimize(p);
  ASSERT_FALSE(r.empty());
  EXPECT_EQ(f(*r.point), Value(Scalar(1, 2)));
}

TEST(Minimize, ConstrainedLinear) {
  // min x1 + x2 subject to x1 >= 1.
  ValueOracle obj = linear_oracle(Vector{1, 1});
  ValueOracle g = linear_oracle(Vector{-1, 0}, 1);
  ValueOracle h = constrained_reduction(obj, {g});
  auto p = ProblemInstance::over_integers(from_value_oracle(h), {0, 0}, 10);
  MinimizeResult r = minimize(p);
  ASSERT_FALSE(r.empty());
  EXPECT_GE((*r.point)[0], 1);
  EXPECT_EQ(h(*r.point), brute_value(h, p));
  EXPECT_EQ(*r.point, (Vector{1, -9}));
}

TEST(Minimize, EmptyBall) {
  auto p = ProblemInstance::over_integers(from_value_oracle(sumsq(2)), {Scalar(1, 2), Scalar(1, 2)},
                                          Scalar(1, 4));
  EXPECT_TRUE(minimize(p).empty());
}

TEST(Minimize, RejectsBadParams) {
  auto p = ProblemInstance::over_integers(from_value_oracle(sumsq(2)), {0, 0}, 3);
  MinimizeParams params;
  params.c_hat = 0;
  EXPECT_THROW(minimize(p, params), Error);
  params.c_hat = 2;
  EXPECT_THROW(minimize(p, params), Error);
  auto q = ProblemInstance::over_integers(from_value_oracle(sumsq(3)), {0, 0}, 3);
  EXPECT_THROW(minimize(q), Error);
}

TEST(Minimize, DeterministicCallCounts) {
  std::mt19937_64 rng(8);
  ValueOracle f = testkit::random_conic(rng, 2, 20, Family::kQuadratic);
  auto run = [&] {
    auto p = ProblemInstance::over_integers(from_value_oracle(f), {0, 0}, 20);
    return minimize(p);
  };
  MinimizeResult a = run(), b = run();
  EXPECT_EQ(a.oracle_calls, b.oracle_calls);
  EXPECT_EQ(*a.point, *b.point);
  EXPECT_EQ(a.total_shrink_iterations(), b.total_shrink_iterations());
}

class MinimizeMatchesBruteForce : public ::testing::TestWithParam<Family> {};

TEST_P(MinimizeMatchesBruteForce, SmallInstances) {
  std::mt19937_64 rng(100 + static_cast<int>(GetParam()));
  for (std::size_t n : {2u, 3u}) {
    for (long r = 2; r <= 5; ++r) {
      for (int iter = 0; iter < 5; ++iter) {
        ValueOracle f = testkit::random_conic(rng, n, r, GetParam());
        Vector center = testkit::random_point(rng, n, 1, 4);
        auto p = ProblemInstance::over_integers(from_value_oracle(f), center, r);
        MinimizeResult res = minimize(p);
        ASSERT_FALSE(res.empty());
        EXPECT_EQ(f(*res.point), brute_value(f, p)) << "n=" << n << " r=" << r;
        EXPECT_LE(((*res.point) - center).squared_norm(), Scalar(r * r));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Families, MinimizeMatchesBruteForce,
                         ::testing::Values(Family::kQuadratic, Family::kMaxAffine,
                                           Family::kNormImage),
                         [](const auto& info) { return std::string(testkit::family_name(info.param)); });

TEST(Minimize, SubspaceAndGeneralLattice) {
  std::mt19937_64 rng(12);
  for (int iter = 0; iter < 20; ++iter) {
    ValueOracle f = testkit::random_conic(rng, 3, 4, Family::kQuadratic);
    ProblemInstance p{from_value_oracle(f), Vector{0, 0, 0}, Scalar(5),
                      LatticeBasis(Matrix{{1, 1, 0}, {0, 2, 1}, {0, 0, 1}}), Matrix{{1, 1, 1}},
                      Vector{static_cast<long>(iter % 3)}};
    MinimizeResult res = minimize(p);
    ASSERT_FALSE(res.empty());
    const Vector& x = *res.point;
    EXPECT_EQ(x[0] + x[1] + x[2], iter % 3);
    EXPECT_EQ(f(x), brute_value(f, p));
  }
}

TEST(MinimizeInvariants, LargerRadiiTriggerShrinks) {
  std::mt19937_64 rng(21);
  std::uint64_t shrinks = 0, checked = 0;
  for (Family fam : {Family::kQuadratic, Family::kMaxAffine, Family::kNormImage}) {
    for (int iter = 0; iter < 3; ++iter) {
      ValueOracle f = testkit::random_conic(rng, 2, 14, fam);
      auto p = ProblemInstance::over_integers(from_value_oracle(f), {0, 0}, 14);
      testkit::InvariantReport rep = testkit::checked_minimize(f, p);
      EXPECT_TRUE(rep.ok()) << testkit::family_name(fam);
      ASSERT_FALSE(rep.result.empty());
      EXPECT_EQ(f(*rep.result.point), brute_value(f, p));
      shrinks += rep.shrinks;
      checked += rep.retention_checked;
    }
  }
  EXPECT_GT(shrinks, 0u);
  EXPECT_GT(checked, 0u);
}

TEST(MinimizeInvariants, BranchCountsRespectFlatnessBound) {
  std::mt19937_64 rng(22);
  for (int iter = 0; iter < 4; ++iter) {
    ValueOracle f = testkit::random_conic(rng, 3, 6, Family::kMaxAffine);
    auto p = ProblemInstance::over_integers(from_value_oracle(f), {0, 0, 0}, 6);
    testkit::InvariantReport rep = testkit::checked_minimize(f, p);
    EXPECT_TRUE(rep.ok());
    EXPECT_GT(rep.branch_events, 0u);
  }
}

TEST(MinimizeInvariants, SmallerCHatStillCorrect) {
  std::mt19937_64 rng(23);
  MinimizeParams params;
  params.c_hat = Scalar(1, 4);
  ValueOracle f = testkit::random_conic(rng, 2, 10, Family::kQuadratic);
  auto p = ProblemInstance::over_integers(from_value_oracle(f), {0, 0}, 10);
  testkit::InvariantReport rep = testkit::checked_minimize(f, p, params);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(f(*rep.result.point), brute_value(f, p));
}

}  // namespace
}  // namespace conicmin
