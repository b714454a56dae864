#include "astute/model.hpp"

#include <utility>

namespace astute {

std::string_view to_string(ClassifierFamily family) noexcept {
  switch (family) {
    case ClassifierFamily::Knn:
      return "knn";
    case ClassifierFamily::Kernel:
      return "kernel";
    case ClassifierFamily::Histogram:
      return "histogram";
  }
  return "unknown";
}

std::optional<ClassifierFamily> parse_family(std::string_view name) noexcept {
  if (name == "knn" || name == "nn") return ClassifierFamily::Knn;
  if (name == "kernel") return ClassifierFamily::Kernel;
  if (name == "histogram") return ClassifierFamily::Histogram;
  return std::nullopt;
}

ClassifierConfig ClassifierConfig::knn(std::size_t k, Metric metric) {
  ClassifierConfig c;
  c.family = ClassifierFamily::Knn;
  c.k = SizeRule::constant(k);
  c.metric = metric;
  return c;
}

ClassifierConfig ClassifierConfig::kernel_classifier(KernelSpec spec, Metric metric) {
  ClassifierConfig c;
  c.family = ClassifierFamily::Kernel;
  c.kernel = spec;
  c.metric = metric;
  return c;
}

ClassifierConfig ClassifierConfig::histogram(SizeRule threshold, std::optional<Box> anchor) {
  ClassifierConfig c;
  c.family = ClassifierFamily::Histogram;
  c.histogram_threshold = threshold;
  c.histogram_anchor = std::move(anchor);
  return c;
}

Model train(const ClassifierConfig& config, Dataset ds) {
  switch (config.family) {
    case ClassifierFamily::Knn:
      return knn_train(std::move(ds), config.k, config.metric);
    case ClassifierFamily::Kernel:
      return kernel_train(std::move(ds), config.kernel, config.metric);
    case ClassifierFamily::Histogram:
      return histogram_train(std::move(ds), config.histogram_threshold, config.histogram_anchor);
  }
  throw std::invalid_argument("train: unknown classifier family");
}

WeightVector weights(const Model& model, std::span<const double> x) {
  return std::visit([&](const auto& m) { return m.weights(x); }, model);
}

Label predict(const Model& model, std::span<const double> x) {
  return std::visit([&](const auto& m) { return m.predict(x); }, model);
}

const Dataset& training_set(const Model& model) {
  return std::visit([](const auto& m) -> const Dataset& { return m.training(); }, model);
}

std::size_t model_dim(const Model& model) { return training_set(model).dim(); }

ClassifierFamily family_of(const Model& model) noexcept {
  return static_cast<ClassifierFamily>(model.index());
}

Predictor as_predictor(const Model& model) {
  return [&model](std::span<const double> x) { return predict(model, x); };
}

}  // namespace astute
