#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "conicmin/exact.hpp"

namespace conicmin {

// A rational scalar or a lexicographically ordered pair of values.
class Value {
 public:
  Value() : rep_(Scalar(0)) {}
  Value(Scalar s) : rep_(std::move(s)) {}  // NOLINT(google-explicit-constructor)
  Value(long s) : rep_(Scalar(s)) {}       // NOLINT(google-explicit-constructor)
  Value(int s) : rep_(Scalar(s)) {}        // NOLINT(google-explicit-constructor)

  static Value pair(Value first, Value second);

  bool is_scalar() const { return std::holds_alternative<Scalar>(rep_); }
  // Throw Error(kShapeMismatch) on the wrong alternative.
  const Scalar& scalar() const;
  const Value& first() const;
  const Value& second() const;

  // Scalar multiplication applied to every leaf.
  Value scaled(const Scalar& w) const;
  std::string to_string() const;

 private:
  using Pair = std::pair<Value, Value>;
  std::variant<Scalar, std::shared_ptr<const Pair>> rep_;
};

// -1, 0 or 1; throws Error(kShapeMismatch) if the shapes differ.
int compare(const Value& a, const Value& b);
inline bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }
inline bool operator<=(const Value& a, const Value& b) { return compare(a, b) <= 0; }
inline bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }

class ValueOracle {
 public:
  using Fn = std::function<Value(const Vector&)>;

  ValueOracle(std::size_t dim, Fn fn);

  std::size_t dim() const { return dim_; }
  Value operator()(const Vector& x) const;

 private:
  std::size_t dim_;
  Fn fn_;
};

// Answers "f(x) <= f(y)". Copies share one call counter.
class ComparisonOracle {
 public:
  using Predicate = std::function<bool(const Vector&, const Vector&)>;

  ComparisonOracle(std::size_t dim, Predicate leq);

  std::size_t dim() const { return dim_; }
  bool compare_leq(const Vector& x, const Vector& y) const;
  std::uint64_t calls() const { return counter_->load(); }

 private:
  std::size_t dim_;
  Predicate leq_;
  std::shared_ptr<std::atomic<std::uint64_t>> counter_;
};

ComparisonOracle from_value_oracle(const ValueOracle& v);

// g(x) = max_i w_i f_i(x); throws Error(kNegativeWeight).
ValueOracle combinator_max(const std::vector<ValueOracle>& fs,
                           const std::vector<Scalar>& weights);
// g(x) = f(A x + b) with A of shape f.dim() x n.
ValueOracle combinator_affine(const ValueOracle& f, const Matrix& a, const Vector& b);
// g = h o f for a nondecreasing scalar map h (given as a 1-dimensional oracle).
ValueOracle combinator_monotone(const ValueOracle& f, const ValueOracle& h);
// g(x) = (f1(x), f2(x)) in lexicographic order.
ValueOracle combinator_lex_pair(const ValueOracle& f1, const ValueOracle& f2);
// h(x) = (max(0, max_i g_i(x)), f(x)).
ValueOracle constrained_reduction(const ValueOracle& f, const std::vector<ValueOracle>& gs);

struct ConicTriple {
  Vector y;
  Vector z;
  Scalar t;
};

// Triples with f(y) <= f(z) but f(z + t(z - y)) < f(z).
std::vector<ConicTriple> is_conic_witness(const ComparisonOracle& c,
                                          const std::vector<ConicTriple>& samples);

struct Monomial {
  Scalar coef;
  std::vector<unsigned> exps;
};

class Polynomial {
 public:
  Polynomial(std::size_t vars, std::vector<Monomial> monomials);

  std::size_t vars() const { return vars_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  Scalar evaluate(const Vector& x) const;

 private:
  std::size_t vars_;
  std::vector<Monomial> monomials_;
};

ValueOracle polynomial_oracle(const Polynomial& p);
// sum_i (x_i - c_i)^2 weighted by a symmetric matrix Q: (x-c)^T Q (x-c).
ValueOracle quadratic_oracle(const Matrix& q, const Vector& center);
ValueOracle linear_oracle(const Vector& c, const Scalar& offset = Scalar(0));
ValueOracle l1_norm_oracle(std::size_t dim);
ValueOracle linf_norm_oracle(std::size_t dim);

}  // namespace conicmin
