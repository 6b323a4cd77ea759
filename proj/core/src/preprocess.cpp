#include "conicmin/error.hpp"
#include "conicmin/minimizer.hpp"

namespace conicmin {

ProblemInstance ProblemInstance::over_integers(ComparisonOracle oracle, Vector center,
                                               Scalar radius) {
  const std::size_t n = center.size();
  return ProblemInstance{std::move(oracle), std::move(center), std::move(radius),
                         LatticeBasis::integer_lattice(n), Matrix(0, n), Vector(0)};
}

namespace {

Matrix lll_basis(const Matrix& basis) {
  if (basis.cols() <= 1) return basis;
  return lll_reduce(LatticeBasis(basis)).basis();
}

// Solves H s = b for column-echelon H (from hnf) in integers.
std::optional<Vector> echelon_integer_solve(const HermiteForm& form, const Vector& b) {
  const Matrix& h = form.h;
  Vector s(h.cols());
  std::size_t pc = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    Scalar acc = 0;
    for (std::size_t l = 0; l < pc; ++l) acc += h(i, l) * s[l];
    if (pc < form.rank && sgn(h(i, pc)) != 0) {
      Scalar v = (b[i] - acc) / h(i, pc);
      if (v.get_den() != 1) return std::nullopt;
      s[pc] = v;
      ++pc;
    } else if (acc != b[i]) {
      return std::nullopt;
    }
  }
  return s;
}

}  // namespace

std::optional<Preprocessed> preprocess(const ProblemInstance& p) {
  const std::size_t n = p.center.size();
  if (p.lattice.ambient_dim() != n) {
    throw Error(ErrorCode::kShapeMismatch, "lattice and center dimensions differ");
  }
  if (sgn(p.radius) <= 0) throw Error(ErrorCode::kNonpositiveFactor, "radius must be positive");
  const Matrix& l = p.lattice.basis();

  AffineLattice slice{Vector(n), l};
  if (p.subspace_a.rows() > 0) {
    if (p.subspace_a.cols() != n || p.subspace_b.size() != p.subspace_a.rows()) {
      throw Error(ErrorCode::kShapeMismatch, "subspace constraint shape mismatch");
    }
    auto [m, rhs] = integral_rows(p.subspace_a * l, p.subspace_b);
    HermiteForm form = hnf(m);
    auto s = echelon_integer_solve(form, rhs);
    if (!s) return std::nullopt;
    slice.shift = l * (form.u * *s);
    slice.basis = l * form.u.column_block(form.rank, l.cols() - form.rank);
  }
  slice.basis = lll_basis(slice.basis);

  Vector center = slice.shift;
  if (slice.rank() > 0) {
    const Matrix& b = slice.basis;
    Matrix bt = b.transpose();
    Vector tc = invert(bt * b) * (bt * (p.center - slice.shift));
    center = slice.point(tc);
  }
  if ((p.center - center).squared_norm() > p.radius * p.radius) return std::nullopt;
  return Preprocessed{std::move(slice), std::move(center), p.radius};
}

std::optional<AffineLattice> restrict_to_hyperplane(const AffineLattice& slice,
                                                    const Vector& c, const Integer& tau) {
  const std::size_t k = slice.rank();
  if (c.size() != k || c.is_zero() || !c.is_integral()) {
    throw Error(ErrorCode::kInvalidArgument, "hyperplane normal must be a nonzero integer vector");
  }
  Matrix row(1, k);
  for (std::size_t j = 0; j < k; ++j) row(0, j) = c[j];
  HermiteForm form = hnf(row);
  Integer g = form.h(0, 0).get_num();
  if (tau % g != 0) return std::nullopt;
  Vector t0 = Scalar(Integer(tau / g)) * form.u.column(0);
  AffineLattice out{slice.point(t0), slice.basis * form.u.column_block(1, k - 1)};
  out.basis = lll_basis(out.basis);
  return out;
}

}  // namespace conicmin
