#include "astute/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "astute/csv.hpp"
#include "astute/parallel.hpp"
#include "astute/pruning.hpp"

namespace astute {

namespace {

// Stream-id tags; each draw kind gets its own family of streams.
constexpr std::uint64_t kTagSweepTrain = 0x7377'7472;
constexpr std::uint64_t kTagSweepTest = 0x7377'7473;
constexpr std::uint64_t kTagProbeSample = 0x7072'7361;
constexpr std::uint64_t kTagProbeQuery = 0x7072'7171;
constexpr std::uint64_t kTagProbeCandidates = 0x7072'6361;
constexpr std::uint64_t kTagBayesTest = 0x6267'7473;

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

// Sample standard deviation; 0 for a single value.
MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

void check_sizes(std::span<const std::size_t> sizes) {
  if (sizes.empty()) throw std::invalid_argument("sizes: must not be empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw std::invalid_argument("sizes: must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw std::invalid_argument("sizes: must be strictly increasing");
    }
  }
}

ScenarioSpec with_size(ScenarioSpec spec, std::size_t n) {
  spec.n = n;
  return spec;
}

ClassifierConfig anchored(ClassifierConfig config, ScenarioKind kind) {
  if (config.family == ClassifierFamily::Histogram && !config.histogram_anchor) {
    config.histogram_anchor = input_space(kind);
  }
  return config;
}

Point sample_in_ball(std::span<const double> center, double a, Metric metric, bool on_boundary,
                     RandomStream& rng) {
  const std::size_t d = center.size();
  Point c(d, 0.0);
  const std::span<double> v = c.coords();
  if (metric == Metric::Linf) {
    for (std::size_t j = 0; j < d; ++j) v[j] = rng.uniform(-a, a);
    if (on_boundary) {
      const auto axis = static_cast<std::size_t>(rng.below(d));
      v[axis] = rng.bernoulli(0.5) ? a : -a;
    }
  } else {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        v[j] = rng.normal();
        norm += v[j] * v[j];
      }
    } while (norm == 0.0);
    const double radius =
        on_boundary ? a : a * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
    const double scale = radius / std::sqrt(norm);
    for (double& x : v) x *= scale;
  }
  for (std::size_t j = 0; j < d; ++j) v[j] += center[j];
  return c;
}

double far_mass(const Model& model, std::span<const double> x, double b, Metric metric) {
  const Dataset& train = training_set(model);
  const WeightVector w = weights(model, x);
  double mass = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0.0 && distance(metric, train.point(i), x) > b) mass += w[i];
  }
  return mass;
}

double candidate_sup(const Model& model, std::span<const double> center, const ProbeConfig& cfg,
                     std::size_t n, std::size_t draw, std::size_t query) {
  RandomStream rng(cfg.seed, stream_id({kTagProbeCandidates, n, draw, query}));
  return far_weight_sup(model, center, cfg.a, cfg.b, cfg.metric, cfg.boundary_candidates,
                        cfg.interior_candidates, rng);
}

double parse_field(std::string_view token, std::size_t line) {
  try {
    return parse_real(token);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

ProbeRow summarize(std::size_t n, std::span<const double> per_draw,
                   std::span<const double> single_draw_queries) {
  ProbeRow row;
  row.n = n;
  const MeanStd s = mean_std(per_draw);
  row.estimate = s.mean;
  if (per_draw.size() > 1) {
    row.std_error = s.std / std::sqrt(static_cast<double>(per_draw.size()));
  } else {
    const MeanStd q = mean_std(single_draw_queries);
    row.std_error = q.std / std::sqrt(static_cast<double>(std::max<std::size_t>(1, single_draw_queries.size())));
  }
  return row;
}

}  // namespace

double accuracy(const Predictor& predictor, const Dataset& test) {
  if (test.empty()) throw std::invalid_argument("accuracy: empty test set");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (predictor(test.point(i)) == test.label(i)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

double accuracy(const Model& model, const Dataset& test) {
  return accuracy(as_predictor(model), test);
}

EvalReport empirical_astuteness(const Model& model, const Dataset& test,
                                const AttackBudget& budget, const AttackSettings& settings) {
  if (test.empty()) throw std::invalid_argument("empirical_astuteness: empty test set");
  budget.validate();
  std::size_t correct = 0;
  std::size_t astute = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto x = test.point(i);
    const Label y = test.label(i);
    if (predict(model, x) != y) continue;
    ++correct;
    if (!attack(model, x, y, budget, settings).witness) ++astute;
  }
  const auto n = static_cast<double>(test.size());
  EvalReport report;
  report.n_test = test.size();
  report.accuracy = static_cast<double>(correct) / n;
  report.astuteness = static_cast<double>(astute) / n;
  report.r = budget.r;
  report.method = settings.method;
  report.approximate = settings.method == AttackMethod::Grid;
  return report;
}

// ---------------------------------------------------------------------------

void SweepConfig::validate() const {
  scenario.validate();
  check_sizes(sizes);
  if (repeats == 0) throw std::invalid_argument("repeats: must be at least 1");
  if (test_size == 0) throw std::invalid_argument("test_size: must be at least 1");
  if (prune && !(prune_radius > 0.0)) throw std::invalid_argument("prune_r: must be positive");
  budget.validate();
  if (attack.method == AttackMethod::Grid && !(attack.grid_resolution > 0.0)) {
    throw std::invalid_argument("grid_resolution: must be positive");
  }
}

SweepResult convergence_sweep(const SweepConfig& config) {
  config.validate();
  const ClassifierConfig classifier =
      config.use_input_space ? anchored(config.classifier, config.scenario.kind)
                             : config.classifier;
  AttackBudget budget = config.budget;
  if (config.use_input_space && !budget.domain) budget.domain = input_space(config.scenario.kind);

  const std::size_t reps = config.repeats;
  std::vector<SweepCell> cells(config.sizes.size() * reps);
  parallel_for(cells.size(), [&](std::size_t job) {
    const std::size_t n = config.sizes[job / reps];
    const std::size_t rep = job % reps;
    RandomStream train_rng(config.seed, stream_id({kTagSweepTrain, n, rep}));
    RandomStream test_rng(config.seed, stream_id({kTagSweepTest, n, rep}));
    Dataset train = generate(with_size(config.scenario, n), train_rng);
    const Dataset test = generate(with_size(config.scenario, config.test_size), test_rng);

    SweepCell& cell = cells[job];
    cell.n = n;
    cell.repeat = rep;
    if (config.prune) {
      const PrunedSet pruned = adv_prune(train, config.prune_radius, config.prune_metric);
      cell.kept_fraction = static_cast<double>(pruned.kept.size()) / static_cast<double>(n);
      train = train.subset(pruned.kept);
    }
    const Model model = astute::train(classifier, std::move(train));
    const EvalReport report = empirical_astuteness(model, test, budget, config.attack);
    cell.accuracy = report.accuracy;
    cell.astuteness = report.astuteness;
  });

  SweepResult result;
  result.cells = cells;
  for (std::size_t s = 0; s < config.sizes.size(); ++s) {
    std::vector<double> acc;
    std::vector<double> ast;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      acc.push_back(cells[s * reps + rep].accuracy);
      ast.push_back(cells[s * reps + rep].astuteness);
    }
    const MeanStd a = mean_std(acc);
    const MeanStd b = mean_std(ast);
    result.rows.push_back({config.sizes[s], a.mean, a.std, b.mean, b.std});
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "n,accuracy_mean,accuracy_std,astuteness_mean,astuteness_std\n";
  for (const SweepRow& row : result.rows) {
    out << row.n << ',' << format_real(row.accuracy_mean) << ',' << format_real(row.accuracy_std)
        << ',' << format_real(row.astuteness_mean) << ',' << format_real(row.astuteness_std)
        << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "n,accuracy_mean,accuracy_std,astuteness_mean,astuteness_std") {
    throw ParseError(line_no, "unexpected header '" + line + "'");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 5) throw ParseError(line_no, "expected 5 fields");
    SweepRow row;
    const double n = parse_field(fields[0], line_no);
    if (!(n >= 1.0) || n != std::floor(n)) throw ParseError(line_no, "n must be a positive integer");
    row.n = static_cast<std::size_t>(n);
    row.accuracy_mean = parse_field(fields[1], line_no);
    row.accuracy_std = parse_field(fields[2], line_no);
    row.astuteness_mean = parse_field(fields[3], line_no);
    row.astuteness_std = parse_field(fields[4], line_no);
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------

void ProbeConfig::validate() const {
  scenario.validate();
  if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("a, b: need 0 < a < b");
  check_sizes(sizes);
  if (sample_draws == 0) throw std::invalid_argument("draws: must be at least 1");
  if (queries_per_sample == 0) throw std::invalid_argument("queries: must be at least 1");
  if (boundary_candidates + interior_candidates == 0) {
    throw std::invalid_argument("candidates: must be at least 1");
  }
  if (!(prune_radius > 0.0)) throw std::invalid_argument("prune_r: must be positive");
  if (gamma < 0.0) throw std::invalid_argument("gamma: must be non-negative");
  if (anchor && anchor->dim() != scenario_dimension(scenario.kind)) {
    throw std::invalid_argument("anchor: dimension does not match the scenario");
  }
}

double far_weight_sup(const Model& model, std::span<const double> center, double a, double b,
                      Metric metric, std::size_t boundary, std::size_t interior,
                      RandomStream& rng) {
  double best = far_mass(model, center, b, metric);
  for (std::size_t i = 0; i < boundary + interior; ++i) {
    const Point c = sample_in_ball(center, a, metric, i < boundary, rng);
    best = std::max(best, far_mass(model, c, b, metric));
  }
  return std::clamp(best, 0.0, 1.0);
}

ProbeResult probe_theorem1(const ProbeConfig& config) {
  config.validate();
  const ClassifierConfig classifier = anchored(config.classifier, config.scenario.kind);
  ProbeResult result;
  for (std::size_t n : config.sizes) {
    std::vector<double> per_draw(config.sample_draws);
    std::vector<std::vector<double>> per_query(config.sample_draws);
    parallel_for(config.sample_draws, [&](std::size_t s) {
      RandomStream sample_rng(config.seed, stream_id({kTagProbeSample, n, s}));
      const Model model = astute::train(classifier, generate(with_size(config.scenario, n), sample_rng));
      std::vector<double>& values = per_query[s];
      if (config.outer == ProbeOuter::Empirical) {
        const Dataset& train = training_set(model);
        for (std::size_t i = 0; i < train.size(); ++i) {
          values.push_back(candidate_sup(model, train.point(i), config, n, s, i));
        }
      } else {
        RandomStream query_rng(config.seed, stream_id({kTagProbeQuery, n, s}));
        for (std::size_t q = 0; q < config.queries_per_sample; ++q) {
          if (config.anchor) {
            values.push_back(candidate_sup(model, *config.anchor, config, n, s, q));
          } else {
            const Dataset x = generate(with_size(config.scenario, 1), query_rng);
            values.push_back(candidate_sup(model, x.point(0), config, n, s, q));
          }
        }
      }
      per_draw[s] = mean_std(values).mean;
    });
    result.rows.push_back(summarize(n, per_draw, per_query.front()));
  }
  return result;
}

ProbeResult probe_theorem4(const ProbeConfig& config) {
  config.validate();
  const ClassifierConfig classifier = anchored(config.classifier, config.scenario.kind);
  ProbeResult result;
  for (std::size_t n : config.sizes) {
    std::vector<double> per_draw(config.sample_draws);
    std::vector<std::vector<double>> per_query(config.sample_draws);
    parallel_for(config.sample_draws, [&](std::size_t s) {
      RandomStream sample_rng(config.seed, stream_id({kTagProbeSample, n, s}));
      const Dataset sample = generate(with_size(config.scenario, n), sample_rng);
      const PrunedSet pruned = adv_prune(sample, config.prune_radius, config.prune_metric);
      const Model model = astute::train(classifier, sample.subset(pruned.kept));
      const Dataset& kept = training_set(model);
      std::vector<double>& values = per_query[s];
      for (std::size_t i = 0; i < kept.size(); ++i) {
        values.push_back(candidate_sup(model, kept.point(i), config, n, s, i));
      }
      per_draw[s] = mean_std(values).mean;
    });
    result.rows.push_back(summarize(n, per_draw, per_query.front()));
  }
  return result;
}

void write_probe_csv(const ProbeResult& result, std::ostream& out) {
  out << "n,estimate,std_error\n";
  for (const ProbeRow& row : result.rows) {
    out << row.n << ',' << format_real(row.estimate) << ',' << format_real(row.std_error) << '\n';
  }
}

// ---------------------------------------------------------------------------

bool robust_1d(const Predictor& predictor, double x, double r, const Box& domain,
               std::size_t steps) {
  if (domain.dim() != 1) throw std::invalid_argument("robust_1d: domain must be 1-D");
  if (!(r > 0.0) || steps == 0) throw std::invalid_argument("robust_1d: need r > 0, steps > 0");
  const double here[1] = {x};
  const Label y = predictor(here);
  const double step = r / static_cast<double>(steps);
  const double lo = domain.lo[0];
  const double hi = domain.hi[0];
  for (std::size_t k = 0; k <= 2 * steps; ++k) {
    const double z[1] = {x - r + step * static_cast<double>(k)};
    if (z[0] < lo || z[0] > hi) continue;
    if (predictor(z) != y) return false;
  }
  return true;
}

BayesGapReport bayes_gap_demo(double r, std::size_t n, std::uint64_t seed) {
  if (!(r > 0.0)) throw std::invalid_argument("r: must be positive");
  if (n == 0) throw std::invalid_argument("n: must be positive");
  RandomStream rng(seed, stream_id({kTagBayesTest, n}));
  const Dataset test = generate({ScenarioKind::Example1, n, 0.0, r}, rng);
  const Box domain = *input_space(ScenarioKind::Example1);

  const Predictor bayes = [r](std::span<const double> x) {
    return example1_posterior(x[0], r) >= 0.5 ? Label::Positive : Label::Negative;
  };
  const Predictor constant = [](std::span<const double>) { return Label::Positive; };

  std::size_t bayes_correct = 0, bayes_astute = 0;
  std::size_t const_correct = 0, const_astute = 0, const_robust = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const double x = test.point(i)[0];
    const Label y = test.label(i);
    if (bayes(test.point(i)) == y) {
      ++bayes_correct;
      if (robust_1d(bayes, x, r, domain)) ++bayes_astute;
    }
    const bool robust = robust_1d(constant, x, r, domain);
    if (robust) ++const_robust;
    if (y == Label::Positive) {
      ++const_correct;
      if (robust) ++const_astute;
    }
  }
  const auto total = static_cast<double>(n);
  BayesGapReport report;
  report.r = r;
  report.n = n;
  report.bayes_accuracy = static_cast<double>(bayes_correct) / total;
  report.bayes_astuteness = static_cast<double>(bayes_astute) / total;
  report.constant_accuracy = static_cast<double>(const_correct) / total;
  report.constant_astuteness = static_cast<double>(const_astute) / total;
  report.constant_robustness = static_cast<double>(const_robust) / total;
  return report;
}

}  // namespace astute
