#include "conicmin/bruteforce.hpp"

#include <algorithm>

#include "conicmin/error.hpp"

namespace conicmin {

EnumerationDomain EnumerationDomain::integer_ball(Vector center, Scalar radius, Norm norm) {
  const std::size_t n = center.size();
  return EnumerationDomain{std::move(center), std::move(radius), norm,
                           LatticeBasis::integer_lattice(n), {}, std::nullopt};
}

bool EnumerationDomain::contains(const Vector& x) const {
  Vector d = x - center;
  if (norm == Norm::kL2) {
    if (d.squared_norm() > radius * radius) return false;
  } else {
    for (std::size_t i = 0; i < d.size(); ++i)
      if (abs(d[i]) > radius) return false;
  }
  if (subspace && !(subspace->first * x == subspace->second)) return false;
  return std::find(exclusions.begin(), exclusions.end(), x) == exclusions.end();
}

std::vector<Vector> enumerate(const EnumerationDomain& dom) {
  const std::size_t n = dom.center.size();
  if (dom.lattice.ambient_dim() != n) {
    throw Error(ErrorCode::kShapeMismatch, "lattice and center dimensions differ");
  }
  if (sgn(dom.radius) < 0) throw Error(ErrorCode::kNonpositiveFactor, "negative radius");
  const Matrix& b = dom.lattice.basis();
  const std::size_t k = b.cols();

  // Coefficient box containing the domain.
  std::vector<Integer> lo(k), hi(k);
  if (k > 0) {
    Scalar r2 = dom.radius * dom.radius;
    if (dom.norm == Norm::kLinf) r2 *= Scalar(static_cast<unsigned long>(n));
    Matrix bt = b.transpose();
    Matrix ginv = invert(bt * b);
    Vector tc = ginv * (bt * dom.center);
    for (std::size_t i = 0; i < k; ++i) {
      auto range = integer_interval(tc[i], r2 * ginv(i, i));
      if (!range) return {};
      lo[i] = range->first;
      hi[i] = range->second;
    }
  }
  double count = 1;
  for (std::size_t i = 0; i < k; ++i) count *= Integer(hi[i] - lo[i] + 1).get_d();
  if (count > static_cast<double>(kEnumerationLimit)) {
    throw Error(ErrorCode::kTooLarge, "enumeration box has " + std::to_string(count) + " points");
  }

  std::vector<Vector> out;
  Vector t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = lo[i];
  for (;;) {
    Vector x = b * t;
    if (k == 0) x = Vector(n);
    if (dom.contains(x)) out.push_back(std::move(x));
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (t[i] < hi[i]) {
        t[i] += 1;
        break;
      }
      t[i] = lo[i];
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

MinimaSets brute_min(const ComparisonOracle& oracle, const std::vector<Vector>& points) {
  MinimaSets m;
  for (const Vector& x : points) {
    if (m.first.empty()) {
      m.first.push_back(x);
      continue;
    }
    const Vector& rep1 = m.first.front();
    if (!m.second.empty()) {
      const Vector& rep2 = m.second.front();
      if (!oracle.compare_leq(x, rep2)) continue;
      if (!oracle.compare_leq(x, rep1)) {
        // rep1 < x <= rep2
        if (oracle.compare_leq(rep2, x)) {
          m.second.push_back(x);
        } else {
          m.second.assign(1, x);
        }
        continue;
      }
      if (oracle.compare_leq(rep1, x)) {
        m.first.push_back(x);
      } else {
        m.second = std::move(m.first);
        m.first.assign(1, x);
      }
      continue;
    }
    bool le = oracle.compare_leq(x, rep1);
    bool ge = oracle.compare_leq(rep1, x);
    if (le && ge) {
      m.first.push_back(x);
    } else if (le) {
      m.second = std::move(m.first);
      m.first.assign(1, x);
    } else {
      m.second.push_back(x);
    }
  }
  return m;
}

MinimaSets brute_min(const ComparisonOracle& oracle, const EnumerationDomain& dom) {
  return brute_min(oracle, enumerate(dom));
}

}  // namespace conicmin
