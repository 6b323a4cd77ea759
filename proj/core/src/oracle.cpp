#include "conicmin/oracle.hpp"

#include "conicmin/error.hpp"

namespace conicmin {

Value Value::pair(Value first, Value second) {
  Value v;
  v.rep_ = std::make_shared<const Pair>(std::move(first), std::move(second));
  return v;
}

const Scalar& Value::scalar() const {
  if (!is_scalar()) throw Error(ErrorCode::kShapeMismatch, "value is a pair, not a scalar");
  return std::get<Scalar>(rep_);
}

const Value& Value::first() const {
  if (is_scalar()) throw Error(ErrorCode::kShapeMismatch, "value is a scalar, not a pair");
  return std::get<std::shared_ptr<const Pair>>(rep_)->first;
}

const Value& Value::second() const {
  if (is_scalar()) throw Error(ErrorCode::kShapeMismatch, "value is a scalar, not a pair");
  return std::get<std::shared_ptr<const Pair>>(rep_)->second;
}

Value Value::scaled(const Scalar& w) const {
  if (is_scalar()) return Value(Scalar(scalar() * w));
  return pair(first().scaled(w), second().scaled(w));
}

std::string Value::to_string() const {
  if (is_scalar()) return scalar().get_str();
  return "(" + first().to_string() + ", " + second().to_string() + ")";
}

int compare(const Value& a, const Value& b) {
  if (a.is_scalar() != b.is_scalar()) {
    throw Error(ErrorCode::kShapeMismatch, "comparing values of different shapes");
  }
  if (a.is_scalar()) {
    int c = cmp(a.scalar(), b.scalar());
    return (c > 0) - (c < 0);
  }
  int c = compare(a.first(), b.first());
  return c != 0 ? c : compare(a.second(), b.second());
}

ValueOracle::ValueOracle(std::size_t dim, Fn fn) : dim_(dim), fn_(std::move(fn)) {}

Value ValueOracle::operator()(const Vector& x) const {
  if (x.size() != dim_) throw Error(ErrorCode::kShapeMismatch, "oracle query dimension mismatch");
  return fn_(x);
}

ComparisonOracle::ComparisonOracle(std::size_t dim, Predicate leq)
    : dim_(dim),
      leq_(std::move(leq)),
      counter_(std::make_shared<std::atomic<std::uint64_t>>(0)) {}

bool ComparisonOracle::compare_leq(const Vector& x, const Vector& y) const {
  counter_->fetch_add(1, std::memory_order_relaxed);
  return leq_(x, y);
}

ComparisonOracle from_value_oracle(const ValueOracle& v) {
  return ComparisonOracle(v.dim(), [v](const Vector& x, const Vector& y) {
    return v(x) <= v(y);
  });
}

ValueOracle combinator_max(const std::vector<ValueOracle>& fs,
                           const std::vector<Scalar>& weights) {
  if (fs.empty() || fs.size() != weights.size()) {
    throw Error(ErrorCode::kShapeMismatch, "max combinator needs one weight per function");
  }
  for (const auto& w : weights) {
    if (sgn(w) < 0) throw Error(ErrorCode::kNegativeWeight, "max combinator weight is negative");
  }
  const std::size_t dim = fs.front().dim();
  for (const auto& f : fs) {
    if (f.dim() != dim) throw Error(ErrorCode::kShapeMismatch, "max combinator domain mismatch");
  }
  return ValueOracle(dim, [fs, weights](const Vector& x) {
    Value best = fs[0](x).scaled(weights[0]);
    for (std::size_t i = 1; i < fs.size(); ++i) {
      Value v = fs[i](x).scaled(weights[i]);
      if (best < v) best = v;
    }
    return best;
  });
}

ValueOracle combinator_affine(const ValueOracle& f, const Matrix& a, const Vector& b) {
  if (a.rows() != f.dim() || b.size() != f.dim()) {
    throw Error(ErrorCode::kShapeMismatch, "affine combinator shape mismatch");
  }
  return ValueOracle(a.cols(), [f, a, b](const Vector& x) { return f(a * x + b); });
}

ValueOracle combinator_monotone(const ValueOracle& f, const ValueOracle& h) {
  if (h.dim() != 1) throw Error(ErrorCode::kShapeMismatch, "monotone map must be univariate");
  return ValueOracle(f.dim(), [f, h](const Vector& x) {
    return h(Vector{f(x).scalar()});
  });
}

ValueOracle combinator_lex_pair(const ValueOracle& f1, const ValueOracle& f2) {
  if (f1.dim() != f2.dim()) throw Error(ErrorCode::kShapeMismatch, "lex pair domain mismatch");
  return ValueOracle(f1.dim(), [f1, f2](const Vector& x) { return Value::pair(f1(x), f2(x)); });
}

ValueOracle constrained_reduction(const ValueOracle& f, const std::vector<ValueOracle>& gs) {
  for (const auto& g : gs) {
    if (g.dim() != f.dim()) throw Error(ErrorCode::kShapeMismatch, "constraint domain mismatch");
  }
  return ValueOracle(f.dim(), [f, gs](const Vector& x) {
    Scalar t = 0;
    for (const auto& g : gs) {
      Scalar v = g(x).scalar();
      if (v > t) t = v;
    }
    return Value::pair(Value(t), f(x));
  });
}

std::vector<ConicTriple> is_conic_witness(const ComparisonOracle& c,
                                          const std::vector<ConicTriple>& samples) {
  std::vector<ConicTriple> violations;
  for (const auto& s : samples) {
    if (!c.compare_leq(s.y, s.z)) continue;
    Vector x = s.z + s.t * (s.z - s.y);
    if (!c.compare_leq(s.z, x)) violations.push_back(s);
  }
  return violations;
}

Polynomial::Polynomial(std::size_t vars, std::vector<Monomial> monomials)
    : vars_(vars), monomials_(std::move(monomials)) {
  for (const auto& m : monomials_) {
    if (m.exps.size() != vars_) {
      throw Error(ErrorCode::kShapeMismatch, "monomial exponent count differs from vars");
    }
  }
}

Scalar Polynomial::evaluate(const Vector& x) const {
  if (x.size() != vars_) throw Error(ErrorCode::kShapeMismatch, "polynomial arity mismatch");
  Scalar total = 0;
  for (const auto& m : monomials_) {
    Scalar term = m.coef;
    for (std::size_t i = 0; i < vars_; ++i) {
      for (unsigned e = 0; e < m.exps[i]; ++e) term *= x[i];
    }
    total += term;
  }
  return total;
}

ValueOracle polynomial_oracle(const Polynomial& p) {
  return ValueOracle(p.vars(), [p](const Vector& x) { return Value(p.evaluate(x)); });
}

ValueOracle quadratic_oracle(const Matrix& q, const Vector& center) {
  if (!q.is_square() || q.rows() != center.size()) {
    throw Error(ErrorCode::kShapeMismatch, "quadratic form shape mismatch");
  }
  return ValueOracle(center.size(), [q, center](const Vector& x) {
    Vector d = x - center;
    return Value(d.dot(q * d));
  });
}

ValueOracle linear_oracle(const Vector& c, const Scalar& offset) {
  return ValueOracle(c.size(), [c, offset](const Vector& x) { return Value(Scalar(c.dot(x) + offset)); });
}

ValueOracle l1_norm_oracle(std::size_t dim) {
  return ValueOracle(dim, [](const Vector& x) {
    Scalar s = 0;
    for (const auto& e : x) s += abs(e);
    return Value(s);
  });
}

ValueOracle linf_norm_oracle(std::size_t dim) {
  return ValueOracle(dim, [](const Vector& x) {
    Scalar s = 0;
    for (const auto& e : x) s = std::max(s, Scalar(abs(e)));
    return Value(s);
  });
}

}  // namespace conicmin
