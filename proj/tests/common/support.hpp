#pragma once

#include <functional>
#include <random>
#include <vector>

#include "conicmin/exact.hpp"
#include "conicmin/lattice.hpp"

namespace conicmin::testing {

inline Matrix random_integer_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                    long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline Scalar random_rational(std::mt19937_64& rng, long range, long den) {
  std::uniform_int_distribution<long> d(-range * den, range * den);
  Scalar s(d(rng), den);
  s.canonicalize();
  return s;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, long range, long den) {
  Vector v(n);
  for (auto& e : v) e = random_rational(rng, range, den);
  return v;
}

// Calls fn(t) for every integer vector with |t_i| <= bound.
template <class Fn>
void for_each_in_box(std::size_t dim, long bound, Fn&& fn) {
  Vector t(dim);
  for (auto& e : t) e = -bound;
  if (dim == 0) {
    fn(t);
    return;
  }
  for (;;) {
    fn(t);
    std::size_t i = dim;
    while (i > 0) {
      --i;
      if (t[i] < bound) {
        t[i] += 1;
        break;
      }
      t[i] = -bound;
      if (i == 0) return;
    }
  }
}

inline Matrix scalar_matrix(std::size_t n, const Scalar& s) { return s * Matrix::identity(n); }

// Exhaustive search over a coefficient box that provably contains the answer;
// ties go to the lexicographically smallest coefficients.
inline LatticePoint exhaustive_search(const LatticeBasis& l, const Vector* target) {
  const Matrix& b = l.basis();
  const std::size_t k = b.cols();
  Matrix bt = b.transpose();
  Matrix pinv = invert(bt * b) * bt;
  Vector center = target ? pinv * *target : Vector(k);
  Scalar radius2;
  if (target) {
    Vector t(k);
    for (std::size_t i = 0; i < k; ++i) t[i] = Scalar(round_of(center[i]));
    radius2 = (b * t - *target).squared_norm();
  } else {
    radius2 = b.column(0).squared_norm();
    for (std::size_t j = 1; j < k; ++j) radius2 = std::min(radius2, b.column(j).squared_norm());
  }
  // |t_i - center_i| <= |row_i(pinv)| * radius (plus the distance to span for cvp).
  std::vector<std::pair<Integer, Integer>> box;
  for (std::size_t i = 0; i < k; ++i) {
    Scalar reach = sqrt_upper(Scalar(pinv.row(i).squared_norm() * radius2));
    box.emplace_back(floor_of(Scalar(center[i] - reach)), ceil_of(Scalar(center[i] + reach)));
  }
  LatticePoint best;
  bool found = false;
  Vector t(k);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      if (!target && t.is_zero()) return;
      Vector x = b * t;
      Scalar d = target ? (x - *target).squared_norm() : x.squared_norm();
      if (!found || d < best.squared_norm || (d == best.squared_norm && t < best.coefficients)) {
        best = LatticePoint{x, t, d};
        found = true;
      }
      return;
    }
    for (Integer v = box[i].first; v <= box[i].second; ++v) {
      t[i] = Scalar(v);
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace conicmin::testing
