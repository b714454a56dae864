#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "astute/histogram.hpp"
#include "astute/kernel.hpp"
#include "astute/knn.hpp"

namespace astute {

using Model = std::variant<KnnModel, KernelModel, HistogramModel>;

/// Any decision rule; used by the grid attack and by analytic classifiers.
using Predictor = std::function<Label(std::span<const double>)>;

enum class ClassifierFamily { Knn, Kernel, Histogram };

std::string_view to_string(ClassifierFamily family) noexcept;
std::optional<ClassifierFamily> parse_family(std::string_view name) noexcept;

struct ClassifierConfig {
  ClassifierFamily family = ClassifierFamily::Knn;
  SizeRule k = SizeRule::constant(1);                // k-NN
  Metric metric = Metric::L2;                        // k-NN and kernel distances
  KernelSpec kernel;                                 // kernel
  SizeRule histogram_threshold = SizeRule::ceil_sqrt();  // histogram k_n
  std::optional<Box> histogram_anchor;               // histogram root placement

  static ClassifierConfig knn(std::size_t k = 1, Metric metric = Metric::L2);
  static ClassifierConfig kernel_classifier(KernelSpec spec, Metric metric = Metric::L2);
  static ClassifierConfig histogram(SizeRule threshold = SizeRule::ceil_sqrt(),
                                    std::optional<Box> anchor = std::nullopt);
};

Model train(const ClassifierConfig& config, Dataset ds);

WeightVector weights(const Model& model, std::span<const double> x);
Label predict(const Model& model, std::span<const double> x);
const Dataset& training_set(const Model& model);
std::size_t model_dim(const Model& model);
ClassifierFamily family_of(const Model& model) noexcept;

/// Non-owning predictor view; the model must outlive it.
Predictor as_predictor(const Model& model);

}  // namespace astute
