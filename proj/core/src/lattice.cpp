#include "conicmin/lattice.hpp"

#include <cmath>

#include "conicmin/error.hpp"

namespace conicmin {

LatticeBasis::LatticeBasis(Matrix basis) : basis_(std::move(basis)) {
  if (basis_.cols() > 0 && ::conicmin::rank(basis_) != basis_.cols()) {
    throw Error(ErrorCode::kDegenerate, "lattice basis columns are linearly dependent");
  }
}

LatticeBasis LatticeBasis::integer_lattice(std::size_t n) {
  return LatticeBasis(Matrix::identity(n));
}

namespace {

struct GramSchmidt {
  std::vector<std::vector<Scalar>> mu;  // mu[i][j], j < i
  std::vector<Scalar> bstar_sq;
  std::vector<Vector> bstar;
};

GramSchmidt gram_schmidt(const std::vector<Vector>& b) {
  const std::size_t m = b.size();
  GramSchmidt g;
  g.mu.assign(m, std::vector<Scalar>(m));
  g.bstar_sq.resize(m);
  g.bstar.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    Vector v = b[i];
    for (std::size_t j = 0; j < i; ++j) {
      g.mu[i][j] = b[i].dot(g.bstar[j]) / g.bstar_sq[j];
      v -= g.mu[i][j] * g.bstar[j];
    }
    g.bstar[i] = v;
    g.bstar_sq[i] = v.squared_norm();
  }
  return g;
}

std::vector<Vector> columns_of(const Matrix& m) {
  std::vector<Vector> cols;
  cols.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return cols;
}

}  // namespace

ReducedBasis lll_reduce_with_transform(const LatticeBasis& lattice, const Scalar& delta) {
  if (!(delta > Scalar(1, 4) && delta < 1)) {
    throw Error(ErrorCode::kInvalidArgument, "lll delta must lie in (1/4, 1)");
  }
  const std::size_t m = lattice.rank();
  std::vector<Vector> b = columns_of(lattice.basis());
  std::vector<Vector> u = columns_of(Matrix::identity(m));
  if (m <= 1) {
    return {lattice, Matrix::identity(m)};
  }
  GramSchmidt g = gram_schmidt(b);
  std::size_t k = 1;
  while (k < m) {
    for (std::size_t jj = k; jj-- > 0;) {
      Integer q = round_of(g.mu[k][jj]);
      if (q == 0) continue;
      Scalar qs(q);
      b[k] -= qs * b[jj];
      u[k] -= qs * u[jj];
      for (std::size_t l = 0; l < jj; ++l) g.mu[k][l] -= qs * g.mu[jj][l];
      g.mu[k][jj] -= qs;
    }
    const Scalar& m1 = g.mu[k][k - 1];
    if (g.bstar_sq[k] >= (delta - m1 * m1) * g.bstar_sq[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      g = gram_schmidt(b);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return {LatticeBasis(Matrix::from_columns(b, lattice.ambient_dim())),
          Matrix::from_columns(u, m)};
}

LatticeBasis lll_reduce(const LatticeBasis& lattice, const Scalar& delta) {
  return lll_reduce_with_transform(lattice, delta).basis;
}

namespace {

// Fincke-Pohst enumeration over a reduced basis collecting every coefficient
// vector at the minimal value of sum_i B*_i (x_i - c_i)^2.
class Enumerator {
 public:
  Enumerator(const GramSchmidt& g, std::vector<Scalar> ystar, Scalar bound,
             bool exclude_zero)
      : g_(g),
        ystar_(std::move(ystar)),
        bound_(std::move(bound)),
        exclude_zero_(exclude_zero),
        x_(g.bstar_sq.size()) {}

  void run() {
    if (!x_.empty()) descend(x_.size() - 1, Scalar(0));
  }

  const Scalar& bound() const { return bound_; }
  const std::vector<std::vector<Integer>>& best() const { return best_; }

 private:
  void descend(std::size_t i, const Scalar& partial) {
    Scalar c = ystar_[i];
    for (std::size_t j = i + 1; j < x_.size(); ++j) c -= g_.mu[j][i] * Scalar(x_[j]);
    auto range = integer_interval(c, (bound_ - partial) / g_.bstar_sq[i]);
    if (!range) return;
    for (Integer v = range->first; v <= range->second; ++v) {
      Scalar d = Scalar(v) - c;
      Scalar level = partial + g_.bstar_sq[i] * d * d;
      if (level > bound_) continue;
      x_[i] = v;
      if (i == 0) {
        record(level);
      } else {
        descend(i - 1, level);
      }
    }
    x_[i] = 0;
  }

  void record(const Scalar& level) {
    if (exclude_zero_) {
      bool zero = true;
      for (const auto& v : x_) zero = zero && v == 0;
      if (zero) return;
    }
    if (level < bound_) {
      bound_ = level;
      best_.clear();
    }
    best_.push_back(x_);
  }

  const GramSchmidt& g_;
  std::vector<Scalar> ystar_;
  Scalar bound_;
  bool exclude_zero_;
  std::vector<Integer> x_;
  std::vector<std::vector<Integer>> best_;
};

LatticePoint pick_lex_min(const LatticeBasis& original, const Matrix& transform,
                          const std::vector<std::vector<Integer>>& candidates,
                          const Scalar& value) {
  const std::size_t m = transform.rows();
  bool have = false;
  Vector best;
  for (const auto& c : candidates) {
    Vector red(m);
    for (std::size_t i = 0; i < m; ++i) red[i] = Scalar(c[i]);
    Vector coeffs = transform * red;
    if (!have || coeffs < best) {
      best = coeffs;
      have = true;
    }
  }
  if (!have) throw Error(ErrorCode::kInternal, "lattice enumeration found no candidate");
  return {original.point(best), best, value};
}

}  // namespace

LatticePoint shortest_vector(const LatticeBasis& lattice) {
  if (lattice.rank() == 0) throw Error(ErrorCode::kInvalidArgument, "svp on a rank-0 lattice");
  ReducedBasis red = lll_reduce_with_transform(lattice);
  std::vector<Vector> b = columns_of(red.basis.basis());
  GramSchmidt g = gram_schmidt(b);
  Scalar bound = b[0].squared_norm();
  for (const auto& v : b) bound = std::min(bound, v.squared_norm());
  Enumerator e(g, std::vector<Scalar>(b.size()), bound, true);
  e.run();
  return pick_lex_min(lattice, red.transform, e.best(), e.bound());
}

LatticePoint closest_vector(const LatticeBasis& lattice, const Vector& target) {
  if (target.size() != lattice.ambient_dim()) {
    throw Error(ErrorCode::kShapeMismatch, "cvp target dimension mismatch");
  }
  const std::size_t m = lattice.rank();
  if (m == 0) {
    return {Vector(target.size()), Vector(0), target.squared_norm()};
  }
  ReducedBasis red = lll_reduce_with_transform(lattice);
  std::vector<Vector> b = columns_of(red.basis.basis());
  GramSchmidt g = gram_schmidt(b);
  std::vector<Scalar> ystar(m);
  Vector residual = target;
  for (std::size_t i = 0; i < m; ++i) {
    ystar[i] = target.dot(g.bstar[i]) / g.bstar_sq[i];
    residual -= ystar[i] * g.bstar[i];
  }
  Scalar orth = residual.squared_norm();

  // Babai's nearest plane gives the starting bound.
  std::vector<Integer> x(m);
  Scalar bound = 0;
  for (std::size_t i = m; i-- > 0;) {
    Scalar c = ystar[i];
    for (std::size_t j = i + 1; j < m; ++j) c -= g.mu[j][i] * Scalar(x[j]);
    x[i] = round_of(c);
    Scalar d = Scalar(x[i]) - c;
    bound += g.bstar_sq[i] * d * d;
  }
  Enumerator e(g, ystar, bound, false);
  e.run();
  return pick_lex_min(lattice, red.transform, e.best(), e.bound() + orth);
}

double FlatnessCertificate::width() const { return std::sqrt(squared_width.get_d()); }

FlatnessCertificate flatness_direction_integer(const Ellipsoid& e) {
  // width_c(E) = 2 |A^T c|, so the flattest c is a shortest vector of the
  // lattice generated by the rows of A.
  LatticeBasis dual(e.shape().transpose());
  LatticePoint p = shortest_vector(dual);
  Vector c = p.coefficients;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    if (sgn(c[i]) < 0) c = -c;
    break;
  }
  return {c, 4 * p.squared_norm};
}

FlatnessCertificate flatness_direction(const Ellipsoid& e, const LatticeBasis& lattice) {
  if (lattice.rank() != lattice.ambient_dim() || lattice.rank() != e.dim()) {
    throw Error(ErrorCode::kDegenerate,
                "ellipsoid is not full-dimensional in the lattice span");
  }
  Matrix binv = invert(lattice.basis());
  Ellipsoid coeff(binv * e.shape(), binv * e.center());
  return flatness_direction_integer(coeff);
}

}  // namespace conicmin
