#include <algorithm>
#include <map>

#include "conicmin/adversary.hpp"
#include "conicmin/error.hpp"

namespace conicmin {

LayeredExtension build_extension(const AdversaryInstance& inst) {
  if (inst.n > 3) {
    throw Error(ErrorCode::kUnsupportedDimension, "extensions are limited to n <= 3");
  }
  std::map<long, std::vector<Vector>> levels;
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    levels[inst.values[i]].push_back(inst.points[i]);
  }
  if (inst.variant == Variant::kEven) levels[-1].push_back(Vector(inst.n));

  LayeredExtension ext;
  ext.dim_ = inst.n;
  std::vector<Vector> acc;
  for (auto& [value, pts] : levels) {
    acc.insert(acc.end(), pts.begin(), pts.end());
    ext.layers_.push_back(VPolytope{acc});
    std::vector<std::vector<double>> d;
    d.reserve(acc.size());
    for (const Vector& v : acc) d.push_back(v.to_doubles());
    ext.layer_doubles_.push_back(std::move(d));
    ext.values_.push_back(static_cast<double>(value));
    double tau = 0;
    if (ext.layers_.size() > 1) {
      const auto& prev = ext.layer_doubles_[ext.layer_doubles_.size() - 2];
      for (const Vector& v : pts) tau = std::max(tau, polytope_distance(prev, v.to_doubles()));
    }
    ext.tau_.push_back(tau);
  }
  return ext;
}

std::size_t LayeredExtension::layer_of(const Vector& x) const {
  // Layers are nested, so membership is monotone in the index.
  std::size_t lo = 0;
  std::size_t hi = layers_.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (polytope_member(layers_[mid], x)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

double LayeredExtension::operator()(const Vector& x) const {
  if (x.size() != dim_) throw Error(ErrorCode::kShapeMismatch, "query dimension mismatch");
  const std::size_t i = layer_of(x);
  if (i == layers_.size()) {
    return values_.back() + polytope_distance(layer_doubles_.back(), x.to_doubles());
  }
  if (i == 0) return values_[0];
  const double tau = tau_[i];
  const double t = std::min(tau, polytope_distance(layer_doubles_[i - 1], x.to_doubles()));
  return (t * values_[i] + (tau - t) * values_[i - 1]) / tau;
}

ComparisonOracle adversary_oracle(std::shared_ptr<const LayeredExtension> ext, double tolerance) {
  const std::size_t n = ext->dim();
  return ComparisonOracle(n, [ext = std::move(ext), tolerance](const Vector& x, const Vector& y) {
    return (*ext)(x) <= (*ext)(y) + tolerance;
  });
}

}  // namespace conicmin
