#include "commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "astute/csv.hpp"
#include "astute/evaluation.hpp"
#include "astute/pruning.hpp"
#include "astute/scenario.hpp"
#include "chart.hpp"
#include "params.hpp"
#include "report.hpp"

namespace astute::cli {

namespace {

namespace fs = std::filesystem;

// Stream ids shared by every subcommand, so `gen --seed s` reproduces the
// training set that `train-eval --seed s` draws.
constexpr std::uint64_t kTrainStream = 1;
constexpr std::uint64_t kTestStream = 2;

struct KeyInfo {
  const char* key;
  const char* help;
};

const std::vector<KeyInfo> kScenarioKeys = {
    {"scenario", "half_moons | example1 | example2 | example3"},
    {"n", "number of points to generate"},
    {"sigma", "half-moons noise standard deviation (>= 0)"},
    {"scenario_r", "Example 1 oscillation radius"},
    {"use_input_space", "restrict attacks and anchor histograms to the scenario's domain"},
};
const std::vector<KeyInfo> kClassifierKeys = {
    {"classifier", "knn | kernel | histogram"},
    {"k", "neighbours: integer >= 1 or 'sqrt'"},
    {"metric", "l2 | linf (k-NN and kernel distances)"},
    {"kernel", "gaussian | plateau | inverse_poly"},
    {"kernel_power", "inverse_poly exponent"},
    {"bandwidth", "constant kernel bandwidth (default: scale * n^(-1/(d+2)))"},
    {"bandwidth_scale", "power-law bandwidth scale"},
    {"hist_k", "histogram split threshold: integer >= 1 or 'sqrt'"},
};
const std::vector<KeyInfo> kAttackKeys = {
    {"r", "attack radius (LINF)"},
    {"method", "exact | grid"},
    {"grid_resolution", "grid oracle step"},
    {"grid_max_points", "grid oracle size cap"},
    {"tolerance", "boundary tolerance for witnesses"},
};
const std::vector<KeyInfo> kPruneKeys = {
    {"prune", "adversarially prune the training set first"},
    {"prune_r", "pruning radius"},
    {"prune_metric", "l2 | linf"},
};

std::vector<KeyInfo> join(std::initializer_list<std::vector<KeyInfo>> groups,
                          std::initializer_list<KeyInfo> extra) {
  std::vector<KeyInfo> out;
  for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

std::vector<KeyInfo> without(std::vector<KeyInfo> keys, std::string_view drop) {
  std::erase_if(keys, [&](const KeyInfo& k) { return k.key == drop; });
  return keys;
}

template <typename T>
T parse_enum(const Params& p, const std::string& key, const std::string& fallback,
             std::optional<T> (*parser)(std::string_view) noexcept) {
  const std::string name = p.text(key, fallback);
  const std::optional<T> v = parser(name);
  if (!v) throw ConfigError(key, "unknown value '" + name + "'");
  return *v;
}

SizeRule size_rule(const Params& p, const std::string& key, SizeRule fallback) {
  if (!p.has(key)) return fallback;
  if (p.text(key, "") == "sqrt") return SizeRule::ceil_sqrt();
  const std::size_t k = p.count(key, 1);
  if (k < 1) throw ConfigError(key, "must be >= 1");
  return SizeRule::constant(k);
}

ScenarioSpec scenario_spec(const Params& p, std::size_t default_n) {
  ScenarioSpec s;
  s.kind = parse_enum<ScenarioKind>(p, "scenario", "half_moons", parse_scenario);
  s.n = p.count("n", default_n);
  s.sigma = p.real("sigma", 0.0);
  if (s.sigma < 0.0) throw ConfigError("sigma", "must be >= 0");
  s.r = p.positive("scenario_r", 0.1);
  return s;
}

std::optional<Box> domain_of(const Params& p, ScenarioKind kind) {
  return p.flag("use_input_space", true) ? input_space(kind) : std::nullopt;
}

ClassifierConfig classifier_config(const Params& p, const std::optional<Box>& domain) {
  ClassifierConfig c;
  c.family = parse_enum<ClassifierFamily>(p, "classifier", "knn", parse_family);
  c.k = size_rule(p, "k", SizeRule::constant(1));
  c.metric = parse_enum<Metric>(p, "metric", "l2", parse_metric);
  c.kernel.kind = parse_enum<KernelKind>(p, "kernel", "gaussian", parse_kernel);
  c.kernel.power = p.positive("kernel_power", 2.0);
  c.kernel.bandwidth = p.has("bandwidth") ? BandwidthRule::constant(p.positive("bandwidth", 1.0))
                                          : BandwidthRule::power_law(p.positive("bandwidth_scale", 1.0));
  c.histogram_threshold = size_rule(p, "hist_k", SizeRule::ceil_sqrt());
  c.histogram_anchor = domain;
  return c;
}

AttackBudget attack_budget(const Params& p, const std::optional<Box>& domain) {
  AttackBudget b;
  b.r = p.positive("r", 0.1);
  b.tolerance = p.real("tolerance", 1e-9);
  if (b.tolerance < 0.0) throw ConfigError("tolerance", "must be >= 0");
  b.domain = domain;
  return b;
}

AttackSettings attack_settings(const Params& p) {
  AttackSettings s;
  s.method = parse_enum<AttackMethod>(p, "method", "exact", parse_attack_method);
  s.grid_resolution = p.positive("grid_resolution", 1e-3);
  s.grid_max_points = p.count("grid_max_points", kDefaultGridCap);
  return s;
}

Dataset load_or_generate(const Params& p, const std::string& path_key, const ScenarioSpec& spec,
                         std::uint64_t stream) {
  if (p.has(path_key)) return read_csv(fs::path(p.text(path_key, "")));
  RandomStream rng(p.seed("seed", 0), stream);
  return generate(spec, rng);
}

/// Writes to `out` when the key is set, otherwise to the fallback stream.
void emit(const Params& p, const std::string& key, std::ostream& fallback,
          const std::function<void(std::ostream&)>& body) {
  if (!p.has(key)) {
    body(fallback);
    return;
  }
  const fs::path path = p.text(key, "");
  std::ostringstream buf;
  body(buf);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path.string() + "'");
  file << buf.str();
  if (!file) throw std::runtime_error("failed writing '" + path.string() + "'");
}

Dataset maybe_prune(const Params& p, Dataset ds) {
  if (!p.flag("prune", false)) return ds;
  const double r = p.positive("prune_r", 0.1);
  const Metric m = parse_enum<Metric>(p, "prune_metric", "linf", parse_metric);
  const PrunedSet kept = adv_prune(ds, r, m);
  return ds.subset(kept.kept);
}

void require_exact_support(const Model& model, const AttackSettings& settings) {
  if (settings.method == AttackMethod::Exact && !supports_exact_attack(model)) {
    throw ConfigError("method",
                      "no exact attack for this model (only histograms and 2-D 1-NN with l2); "
                      "use method = grid");
  }
}

// Subcommands --------------------------------------------------------------

int cmd_gen(const Params& p, std::ostream& out) {
  const ScenarioSpec spec = scenario_spec(p, 100);
  spec.validate();
  RandomStream rng(p.seed("seed", 0), kTrainStream);
  const Dataset ds = generate(spec, rng);
  emit(p, "out", out, [&](std::ostream& o) { write_csv(ds, o); });
  return kExitOk;
}

struct Prepared {
  Model model;
  Dataset test;
  AttackBudget budget;
  AttackSettings settings;
  std::size_t n_train = 0;
};

Prepared prepare(const Params& p) {
  const ScenarioSpec spec = scenario_spec(p, 1000);
  spec.validate();
  const std::optional<Box> domain = domain_of(p, spec.kind);
  const ClassifierConfig cfg = classifier_config(p, domain);
  AttackBudget budget = attack_budget(p, domain);
  const AttackSettings settings = attack_settings(p);
  budget.validate();

  ScenarioSpec test_spec = spec;
  test_spec.n = p.count("test_size", 1000);
  if (test_spec.n == 0 && !p.has("data")) throw ConfigError("test_size", "must be >= 1");

  Dataset train_ds = maybe_prune(p, load_or_generate(p, "train", spec, kTrainStream));
  const std::size_t n_train = train_ds.size();
  Model model = train(cfg, std::move(train_ds));
  require_exact_support(model, settings);
  Dataset test = load_or_generate(p, "data", test_spec, kTestStream);
  return {std::move(model), std::move(test), budget, settings, n_train};
}

int cmd_train_eval(const Params& p, std::ostream& out) {
  const Prepared run = prepare(p);
  const EvalReport rep = empirical_astuteness(run.model, run.test, run.budget, run.settings);
  emit(p, "out", out, [&](std::ostream& o) {
    o << "n_train,n_test,accuracy,astuteness,r,method,approximate\n"
      << run.n_train << ',' << rep.n_test << ',' << format_real(rep.accuracy) << ','
      << format_real(rep.astuteness) << ',' << format_real(rep.r) << ',' << to_string(rep.method)
      << ',' << (rep.approximate ? 1 : 0) << '\n';
  });
  return kExitOk;
}

int cmd_attack(const Params& p, std::ostream& out) {
  const Prepared run = prepare(p);
  const std::vector<ReportRow> rows = attack_report(run.model, run.test, run.budget, run.settings);
  emit(p, "out", out, [&](std::ostream& o) { write_report_csv(rows, run.test.dim(), o); });
  return kExitOk;
}

int cmd_prune(const Params& p, std::ostream& out) {
  const ScenarioSpec spec = scenario_spec(p, 1000);
  spec.validate();
  const double r = p.positive("prune_r", 0.1);
  const Metric m = parse_enum<Metric>(p, "prune_metric", "linf", parse_metric);
  const Dataset ds = load_or_generate(p, "data", spec, kTrainStream);
  const PrunedSet kept = adv_prune(ds, r, m);
  emit(p, "out", out, [&](std::ostream& o) {
    o << "index\n";
    for (std::size_t i : kept.kept) o << i << '\n';
  });
  if (p.has("pruned_out")) {
    emit(p, "pruned_out", out, [&](std::ostream& o) { write_csv(ds.subset(kept.kept), o); });
  }
  if (p.has("out")) {
    out << "kept " << kept.kept.size() << " of " << ds.size() << " (matching size "
        << kept.matching_size << ")\n";
  }
  return kExitOk;
}

int cmd_sweep(const Params& p, std::ostream& out) {
  SweepConfig c;
  c.scenario = scenario_spec(p, 0);
  c.sizes = p.counts("sizes", c.sizes);
  c.repeats = p.count("repeats", c.repeats);
  c.test_size = p.count("test_size", c.test_size);
  c.use_input_space = p.flag("use_input_space", true);
  c.classifier = classifier_config(p, std::nullopt);  // the sweep anchors itself
  c.prune = p.flag("prune", false);
  c.prune_radius = p.positive("prune_r", c.prune_radius);
  c.prune_metric = parse_enum<Metric>(p, "prune_metric", "linf", parse_metric);
  c.budget = attack_budget(p, std::nullopt);
  c.attack = attack_settings(p);
  c.seed = p.seed("seed", 0);
  c.validate();
  if (c.attack.method == AttackMethod::Exact) {
    // Probe compatibility on a tiny model before spending the sweep.
    RandomStream rng(c.seed, kTrainStream);
    ScenarioSpec probe = c.scenario;
    probe.n = 4;
    require_exact_support(train(c.classifier, generate(probe, rng)), c.attack);
  }

  const SweepResult result = convergence_sweep(c);
  const fs::path dir = p.text("out_dir", ".");
  const std::string name = p.text("name", "sweep");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());

  std::ostringstream csv;
  write_sweep_csv(result, csv);
  const fs::path csv_path = dir / (name + ".csv");
  std::ofstream file(csv_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + csv_path.string() + "'");
  file << csv.str();
  file.close();
  const fs::path svg_path = dir / (name + ".svg");
  emit_chart(sweep_chart(result.rows, p.text("title", name)), svg_path);
  out << "wrote " << csv_path.string() << " and " << svg_path.string() << '\n';
  return kExitOk;
}

int cmd_probe(const Params& p, std::ostream& out) {
  ProbeConfig c;
  c.scenario = scenario_spec(p, 0);
  c.classifier = classifier_config(p, domain_of(p, c.scenario.kind));
  c.a = p.positive("a", c.a);
  c.b = p.positive("b", c.b);
  if (c.a >= c.b) throw ConfigError("a", "must be smaller than b");
  c.sizes = p.counts("sizes", c.sizes);
  c.sample_draws = p.count("draws", c.sample_draws);
  c.queries_per_sample = p.count("queries", c.queries_per_sample);
  c.boundary_candidates = p.count("boundary", c.boundary_candidates);
  c.interior_candidates = p.count("interior", c.interior_candidates);
  c.metric = parse_enum<Metric>(p, "probe_metric", "linf", parse_metric);
  if (p.has("anchor")) {
    const std::vector<double> a = p.reals("anchor");
    c.anchor = Point(std::span<const double>(a));
  }
  const std::string outer = p.text("outer", "distribution");
  if (outer == "distribution") {
    c.outer = ProbeOuter::Distribution;
  } else if (outer == "empirical") {
    c.outer = ProbeOuter::Empirical;
  } else {
    throw ConfigError("outer", "expected distribution or empirical, got '" + outer + "'");
  }
  c.prune_radius = p.positive("prune_r", c.prune_radius);
  c.prune_metric = parse_enum<Metric>(p, "prune_metric", "linf", parse_metric);
  c.gamma = p.real("gamma", 0.0);
  c.seed = p.seed("seed", 0);
  const std::size_t theorem = p.count("theorem", 1);
  if (theorem != 1 && theorem != 4) throw ConfigError("theorem", "expected 1 or 4");
  c.validate();
  const ProbeResult r = theorem == 1 ? probe_theorem1(c) : probe_theorem4(c);
  emit(p, "out", out, [&](std::ostream& o) { write_probe_csv(r, o); });
  return kExitOk;
}

int cmd_demo_example1(const Params& p, std::ostream& out) {
  const double r = p.positive("r", 0.1);
  const std::size_t n = p.count("n", 10000);
  if (n == 0) throw ConfigError("n", "must be >= 1");
  const BayesGapReport rep = bayes_gap_demo(r, n, p.seed("seed", 0));
  emit(p, "out", out, [&](std::ostream& o) {
    o << "r,n,bayes_accuracy,bayes_astuteness,constant_accuracy,constant_astuteness,"
         "constant_robustness\n"
      << format_real(rep.r) << ',' << rep.n << ',' << format_real(rep.bayes_accuracy) << ','
      << format_real(rep.bayes_astuteness) << ',' << format_real(rep.constant_accuracy) << ','
      << format_real(rep.constant_astuteness) << ',' << format_real(rep.constant_robustness)
      << '\n';
  });
  return kExitOk;
}

struct Command {
  const char* name;
  const char* description;
  std::vector<KeyInfo> keys;
  int (*body)(const Params&, std::ostream&);
};

std::vector<Command> commands() {
  const KeyInfo seed{"seed", "master seed"};
  const KeyInfo out{"out", "output file (default: stdout)"};
  const KeyInfo train{"train", "training CSV (default: generate n points)"};
  const KeyInfo data{"data", "test CSV (default: generate test_size points)"};
  const KeyInfo test_size{"test_size", "generated test points"};
  const std::vector<KeyInfo> sweep_scenario = without(kScenarioKeys, "n");
  return {
      {"gen", "Generate a labeled dataset", join({kScenarioKeys}, {seed, out}), cmd_gen},
      {"train-eval", "Train a classifier and report accuracy and astuteness",
       join({kScenarioKeys, kClassifierKeys, kAttackKeys, kPruneKeys}, {train, data, test_size, seed, out}),
       cmd_train_eval},
      {"prune", "Adversarially prune a dataset; emit kept indices",
       join({kScenarioKeys, without(kPruneKeys, "prune")},
            {{"data", "input CSV (default: generate n points)"}, seed, out,
             {"pruned_out", "write the pruned dataset here"}}),
       cmd_prune},
      {"attack", "Per-point minimal-perturbation report",
       join({kScenarioKeys, kClassifierKeys, kAttackKeys, kPruneKeys}, {train, data, test_size, seed, out}),
       cmd_attack},
      {"sweep", "Accuracy and astuteness against training size (CSV and SVG)",
       join({sweep_scenario, kClassifierKeys, kAttackKeys, kPruneKeys},
            {{"sizes", "comma-separated training sizes"},
             {"repeats", "training draws per size"},
             test_size,
             seed,
             {"out_dir", "output directory"},
             {"name", "output file stem"},
             {"title", "chart title"}}),
       cmd_sweep},
      {"probe", "Monte-Carlo estimate of the far-weight condition",
       join({sweep_scenario, kClassifierKeys},
            {{"theorem", "1 (raw sample) or 4 (pruned sample)"},
             {"a", "ball radius around the query"},
             {"b", "far threshold"},
             {"sizes", "comma-separated training sizes"},
             {"draws", "training sets per size"},
             {"queries", "queries per training set"},
             {"boundary", "boundary candidates per ball"},
             {"interior", "interior candidates per ball"},
             {"probe_metric", "l2 | linf ball shape"},
             {"anchor", "fixed query point, comma-separated"},
             {"outer", "distribution | empirical"},
             {"gamma", "robustness gap (reported only)"},
             {"prune_r", "pruning radius (theorem 4)"},
             {"prune_metric", "l2 | linf"},
             seed,
             out}),
       cmd_probe},
      {"demo-example1", "Bayes-optimal versus constant classifier on Example 1",
       {{"r", "robustness radius"}, {"n", "test points"}, seed, out}, cmd_demo_example1},
  };
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const std::vector<Command> table = commands();
  CLI::App app{"Robust non-parametric classifiers: data, pruning, attacks, sweeps and probes",
               "astute"};
  app.require_subcommand(1);

  struct Bound {
    CLI::App* sub = nullptr;
    std::string config;
    std::map<std::string, std::pair<CLI::Option*, std::string>> flags;
  };
  std::vector<Bound> bound(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    Bound& b = bound[i];
    b.sub = app.add_subcommand(table[i].name, table[i].description);
    b.sub->add_option("--config", b.config, "flat key = value file; flags override it");
    for (const KeyInfo& k : table[i].keys) {
      auto& slot = b.flags[k.key];
      slot.first = b.sub->add_option(std::string("--") + k.key, slot.second, k.help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  for (std::size_t i = 0; i < table.size(); ++i) {
    Bound& b = bound[i];
    if (!b.sub->parsed()) continue;
    try {
      std::map<std::string, std::string> values;
      if (!b.config.empty()) values = read_config_file(b.config);
      for (const auto& [key, value] : values) {
        if (!b.flags.contains(key)) {
          throw ConfigError(key, std::string("unknown key for '") + table[i].name + "'");
        }
      }
      for (const auto& [key, slot] : b.flags) {
        if (slot.first->count() > 0) values[key] = slot.second;
      }
      return table[i].body(Params(std::move(values)), out);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const std::invalid_argument& e) {
      err << "config error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitRuntime;
    }
  }
  return kExitRuntime;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"astute"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace astute::cli
