#include "astute/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace astute {

double KernelSpec::log_value(double u) const noexcept {
  switch (kind) {
    case KernelKind::Gaussian:
      return -u * u;
    case KernelKind::PlateauExample3: {
      const double m = std::min(std::abs(u), 0.2);
      return -m * m;
    }
    case KernelKind::InversePoly:
      return -power * std::log1p(u);
  }
  return 0.0;
}

double KernelSpec::value(double u) const noexcept { return std::exp(log_value(u)); }

void KernelSpec::validate() const {
  if (kind == KernelKind::InversePoly && !(power > 0.0)) {
    throw std::invalid_argument("kernel_power: must be > 0");
  }
  if (!(bandwidth.scale > 0.0)) throw std::invalid_argument("bandwidth: must be > 0");
}

std::string_view to_string(KernelKind kind) noexcept {
  switch (kind) {
    case KernelKind::Gaussian:
      return "gaussian";
    case KernelKind::PlateauExample3:
      return "plateau";
    case KernelKind::InversePoly:
      return "inverse_poly";
  }
  return "unknown";
}

std::optional<KernelKind> parse_kernel(std::string_view name) noexcept {
  if (name == "gaussian") return KernelKind::Gaussian;
  if (name == "plateau" || name == "plateau_example3") return KernelKind::PlateauExample3;
  if (name == "inverse_poly") return KernelKind::InversePoly;
  return std::nullopt;
}

KernelModel::KernelModel(Dataset training, KernelSpec spec, double bandwidth, Metric metric)
    : training_(std::move(training)), spec_(spec), bandwidth_(bandwidth), metric_(metric) {
  if (training_.empty()) throw std::invalid_argument("kernel: empty training set");
  if (!(bandwidth_ > 0.0)) throw std::invalid_argument("kernel: bandwidth must be > 0");
  spec_.validate();
}

void KernelModel::relative_kernel(std::span<const double> x, std::vector<double>& out) const {
  if (x.size() != training_.dim()) throw std::invalid_argument("kernel: query dimension mismatch");
  const std::size_t n = training_.size();
  out.resize(n);
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double d =
        detail::distance_unchecked(metric_, x.data(), training_.point(i).data(), x.size());
    out[i] = spec_.log_value(d / bandwidth_);
    max_log = std::max(max_log, out[i]);
  }
  for (double& v : out) v = std::exp(v - max_log);
}

WeightVector KernelModel::weights(std::span<const double> x) const {
  WeightVector w;
  relative_kernel(x, w);
  double total = 0.0;
  for (double v : w) total += v;
  for (double& v : w) v /= total;
  return w;
}

Label KernelModel::predict(std::span<const double> x) const {
  // The normalising constant is positive, so the sign of the unnormalised
  // vote decides.
  std::vector<double> k;
  relative_kernel(x, k);
  double vote = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) vote += k[i] * to_int(training_.label(i));
  return label_from_vote(vote);
}

KernelModel kernel_train(Dataset ds, const KernelSpec& spec, Metric metric) {
  if (ds.empty()) throw std::invalid_argument("kernel: empty training set");
  const double h = spec.bandwidth(ds.size(), ds.dim());
  return KernelModel(std::move(ds), spec, h, metric);
}

}  // namespace astute
