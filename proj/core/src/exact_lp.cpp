#include "conicmin/exact_lp.hpp"

#include "conicmin/error.hpp"

namespace conicmin {

std::optional<Vector> nonnegative_solution(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw Error(ErrorCode::kShapeMismatch, "lp rhs size mismatch");
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();
  if (m == 0) return Vector(k);

  // Columns: k structural, m artificial, then the right-hand side.
  const std::size_t rhs = k + m;
  Matrix t(m + 1, k + m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    Scalar sign = sgn(b[i]) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < k; ++j) t(i, j) = sign * a(i, j);
    t(i, k + i) = 1;
    t(i, rhs) = sign * b[i];
  }
  // Objective row holds the reduced costs of w = sum of artificials.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) t(m, j) += t(i, j);
  for (std::size_t i = 0; i < m; ++i) t(m, rhs) += t(i, rhs);

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = k + i;

  for (;;) {
    std::size_t enter = k;
    for (std::size_t j = 0; j < k; ++j) {
      if (sgn(t(m, j)) > 0) {
        enter = j;
        break;
      }
    }
    if (enter == k) break;
    std::size_t leave = m;
    Scalar best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t(i, enter)) <= 0) continue;
      Scalar ratio = t(i, rhs) / t(i, enter);
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur for w >= 0
    Scalar piv = t(leave, enter);
    for (std::size_t j = 0; j <= rhs; ++j) t(leave, j) /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || sgn(t(i, enter)) == 0) continue;
      Scalar f = t(i, enter);
      for (std::size_t j = 0; j <= rhs; ++j) t(i, j) -= f * t(leave, j);
    }
    basis[leave] = enter;
  }
  if (sgn(t(m, rhs)) != 0) return std::nullopt;
  Vector x(k);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < k) x[basis[i]] = t(i, rhs);
  return x;
}

}  // namespace conicmin
