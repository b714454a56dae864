#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "astute/dataset.hpp"
#include "astute/knn.hpp"
#include "astute/rules.hpp"

namespace astute {

/// Kernel profiles K(u), u >= 0:
///   Gaussian         exp(-u^2)
///   PlateauExample3  exp(-min(u, 0.2)^2)   flat beyond 0.2
///   InversePoly      (1 + u)^(-p)          decays too slowly for robustness
enum class KernelKind { Gaussian, PlateauExample3, InversePoly };

struct KernelSpec {
  KernelKind kind = KernelKind::Gaussian;
  double power = 2.0;  // InversePoly exponent p > 0
  BandwidthRule bandwidth = BandwidthRule::power_law();

  double log_value(double u) const noexcept;
  double value(double u) const noexcept;
  void validate() const;

  bool operator==(const KernelSpec&) const = default;
};

std::string_view to_string(KernelKind kind) noexcept;
std::optional<KernelKind> parse_kernel(std::string_view name) noexcept;

/// w_i(x) = K(d(x, x_i) / h) / sum_j K(d(x, x_j) / h).
class KernelModel {
 public:
  KernelModel(Dataset training, KernelSpec spec, double bandwidth, Metric metric);

  const Dataset& training() const noexcept { return training_; }
  const KernelSpec& spec() const noexcept { return spec_; }
  double bandwidth() const noexcept { return bandwidth_; }
  Metric metric() const noexcept { return metric_; }

  WeightVector weights(std::span<const double> x) const;
  Label predict(std::span<const double> x) const;

 private:
  // Kernel values divided by their maximum (log domain), so the largest is 1.
  void relative_kernel(std::span<const double> x, std::vector<double>& out) const;

  Dataset training_;
  KernelSpec spec_;
  double bandwidth_;
  Metric metric_;
};

KernelModel kernel_train(Dataset ds, const KernelSpec& spec, Metric metric = Metric::L2);

}  // namespace astute
