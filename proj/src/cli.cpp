#include "xorpso/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "xorpso/rank.hpp"
#include "xorpso/trace.hpp"

namespace xorpso::cli {
namespace fs = std::filesystem;
namespace {

std::string fmt_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::uint64_t parse_u64(std::string_view text, const std::string& what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError(what + ": '" + std::string(text) + "' is not a non-negative integer");
  }
  return v;
}

double parse_real(std::string_view text, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError(what + ": '" + std::string(text) + "' is not a number");
  }
  return v;
}

nlohmann::ordered_json synth_to_json(const SynthSpec& s) {
  nlohmann::ordered_json j;
  j["n_samples"] = s.n_samples;
  j["n_features"] = s.n_features;
  j["n_informative"] = s.n_informative;
  j["class_separation"] = s.class_separation;
  j["noise_std"] = s.noise_std;
  j["seed"] = s.seed;
  return j;
}

std::size_t get_count(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number_unsigned()) throw DataError("config key '" + key + "' must be a non-negative integer");
  return j.get<std::size_t>();
}

double get_real(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number()) throw DataError("config key '" + key + "' must be a number");
  return j.get<double>();
}

std::string get_string(const nlohmann::json& j, const std::string& key) {
  if (!j.is_string()) throw DataError("config key '" + key + "' must be a string");
  return j.get<std::string>();
}

void validate_run(const RunConfig& config) {
  if (config.data_path && config.synth) {
    throw DataError("both a dataset path and a synthetic spec were given; pick one");
  }
  if (!config.data_path && !config.synth) {
    throw DataError("no dataset: pass --data <file.csv> or --synth n=..,f=..,inf=..");
  }
  validate(config.baseline());
}

FeatureDataset load_source(const RunConfig& config) {
  if (config.synth) return generate_synthetic(*config.synth).data;
  return load_dataset(*config.data_path, config.label_column);
}

std::string selected_csv(const Mask& mask, const std::vector<std::string>& names) {
  std::ostringstream os;
  os << "feature_index,feature_name\n";
  for (std::size_t j : mask.indices()) os << j << ',' << names[j] << '\n';
  return os.str();
}

struct FinalStats {
  double fitness;
  double accuracy;
  double selected;
  double wall_ms;
};

FinalStats final_stats(const RunResult& r) {
  const auto& last = r.trace.back();
  return {last.gbest_fitness, last.gbest_accuracy,
          static_cast<double>(last.gbest_selected), last.elapsed_ms};
}

void print_summary(std::ostream& out, const std::string& label, double fitness,
                   double accuracy, std::size_t selected, std::size_t total) {
  out << label << ": fitness=" << std::fixed << std::setprecision(6) << fitness
      << " accuracy=" << accuracy << " selected=" << selected << '/' << total << '\n';
  out.unsetf(std::ios::floatfield);
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

std::string to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::xor_pso: return "xor";
    case OptimizerKind::baseline: return "baseline";
    case OptimizerKind::oracle: return "oracle";
  }
  return "?";
}

OptimizerKind parse_optimizer(const std::string& text) {
  if (text == "xor") return OptimizerKind::xor_pso;
  if (text == "baseline") return OptimizerKind::baseline;
  if (text == "oracle") return OptimizerKind::oracle;
  throw DataError("unknown optimizer '" + text + "' (expected xor, baseline or oracle)");
}

std::string to_string(UpdateMode mode) {
  return mode == UpdateMode::asynchronous ? "asynchronous" : "synchronous";
}

UpdateMode parse_update_mode(const std::string& text) {
  if (text == "asynchronous" || text == "async") return UpdateMode::asynchronous;
  if (text == "synchronous" || text == "sync") return UpdateMode::synchronous;
  throw DataError("unknown update mode '" + text + "' (expected asynchronous or synchronous)");
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["data"] = c.data_path ? nlohmann::ordered_json(*c.data_path) : nlohmann::ordered_json();
  j["label_column"] = c.label_column;
  j["synth"] = c.synth ? synth_to_json(*c.synth) : nlohmann::ordered_json();
  j["val_fraction"] = c.validation_fraction;
  j["optimizer"] = to_string(c.optimizer);
  j["out"] = c.out_dir;
  j["seed"] = c.pso.seed;
  j["population"] = c.pso.population;
  j["iterations"] = c.pso.iterations;
  j["w_initial"] = c.pso.w_initial;
  j["w_decay"] = c.pso.w_decay;
  j["w_period"] = c.pso.w_period;
  j["w_min"] = c.pso.w_min;
  j["threshold"] = c.pso.accuracy_threshold;
  j["knn_k"] = c.pso.knn.k;
  j["update_mode"] = to_string(c.pso.update_mode);
  j["workers"] = c.pso.workers;
  j["seeded_fraction"] = c.pso.seeding.seeded_fraction;
  j["top_m"] = c.pso.seeding.top_m;
  j["bins"] = c.pso.seeding.bins;
  j["c1"] = c.c1;
  j["c2"] = c.c2;
  j["v_clamp"] = c.v_clamp;
  j["seeds"] = c.seeds;
  return j;
}

ConfigFile run_config_from_json(const nlohmann::json& root) {
  const nlohmann::json& j =
      root.is_object() && root.contains("config") ? root.at("config") : root;
  if (!j.is_object()) throw DataError("config must be a JSON object");

  ConfigFile file;
  RunConfig& c = file.config;
  for (const auto& [key, v] : j.items()) {
    if (key == "data") {
      c.data_path = v.is_null() ? std::nullopt : std::optional(get_string(v, key));
    } else if (key == "label_column") {
      c.label_column = get_string(v, key);
    } else if (key == "synth") {
      if (v.is_null()) {
        c.synth.reset();
        continue;
      }
      if (!v.is_object()) throw DataError("config key 'synth' must be an object or null");
      SynthSpec s;
      for (const auto& [sk, sv] : v.items()) {
        if (sk == "n_samples") s.n_samples = get_count(sv, sk);
        else if (sk == "n_features") s.n_features = get_count(sv, sk);
        else if (sk == "n_informative") s.n_informative = get_count(sv, sk);
        else if (sk == "class_separation") s.class_separation = get_real(sv, sk);
        else if (sk == "noise_std") s.noise_std = get_real(sv, sk);
        else if (sk == "seed") {
          s.seed = get_count(sv, sk);
          file.synth_seed = s.seed;
        } else {
          throw DataError("unknown synth config key '" + sk + "'");
        }
      }
      c.synth = s;
    } else if (key == "val_fraction") {
      c.validation_fraction = get_real(v, key);
    } else if (key == "optimizer") {
      c.optimizer = parse_optimizer(get_string(v, key));
    } else if (key == "out") {
      c.out_dir = get_string(v, key);
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) throw DataError("config key 'seed' must be a non-negative integer");
      file.seed = v.get<std::uint64_t>();
      c.pso.seed = *file.seed;
    } else if (key == "population") {
      c.pso.population = get_count(v, key);
    } else if (key == "iterations") {
      c.pso.iterations = get_count(v, key);
    } else if (key == "w_initial") {
      c.pso.w_initial = get_real(v, key);
    } else if (key == "w_decay") {
      c.pso.w_decay = get_real(v, key);
    } else if (key == "w_period") {
      c.pso.w_period = get_count(v, key);
    } else if (key == "w_min") {
      c.pso.w_min = get_real(v, key);
    } else if (key == "threshold") {
      c.pso.accuracy_threshold = get_real(v, key);
    } else if (key == "knn_k") {
      c.pso.knn.k = static_cast<int>(get_count(v, key));
    } else if (key == "update_mode") {
      c.pso.update_mode = parse_update_mode(get_string(v, key));
    } else if (key == "workers") {
      c.pso.workers = get_count(v, key);
    } else if (key == "seeded_fraction") {
      c.pso.seeding.seeded_fraction = get_real(v, key);
    } else if (key == "top_m") {
      c.pso.seeding.top_m = get_count(v, key);
    } else if (key == "bins") {
      c.pso.seeding.bins = static_cast<int>(get_count(v, key));
    } else if (key == "c1") {
      c.c1 = get_real(v, key);
    } else if (key == "c2") {
      c.c2 = get_real(v, key);
    } else if (key == "v_clamp") {
      c.v_clamp = get_real(v, key);
    } else if (key == "seeds") {
      if (!v.is_array()) throw DataError("config key 'seeds' must be an array");
      c.seeds.clear();
      for (const auto& s : v) c.seeds.push_back(get_count(s, key));
    } else {
      throw DataError("unknown config key '" + key + "'");
    }
  }
  return file;
}

std::pair<SynthSpec, bool> parse_synth_arg(const std::string& text) {
  SynthSpec s;
  bool has_n = false, has_f = false, has_inf = false, has_seed = false;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DataError("--synth: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string_view value = std::string_view(item).substr(eq + 1);
    if (key == "n") {
      s.n_samples = parse_u64(value, "--synth n");
      has_n = true;
    } else if (key == "f") {
      s.n_features = parse_u64(value, "--synth f");
      has_f = true;
    } else if (key == "inf") {
      s.n_informative = parse_u64(value, "--synth inf");
      has_inf = true;
    } else if (key == "sep") {
      s.class_separation = parse_real(value, "--synth sep");
    } else if (key == "noise") {
      s.noise_std = parse_real(value, "--synth noise");
    } else if (key == "seed") {
      s.seed = parse_u64(value, "--synth seed");
      has_seed = true;
    } else {
      throw DataError("--synth: unknown key '" + key + "' (expected n, f, inf, sep, noise, seed)");
    }
  }
  if (!has_n || !has_f || !has_inf) throw DataError("--synth requires n=, f= and inf=");
  return {s, has_seed};
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag,
                           std::optional<std::uint64_t> file, const char* env_value) {
  if (flag) return *flag;
  if (file) return *file;
  if (env_value != nullptr && *env_value != '\0') return parse_u64(env_value, "XORPSO_SEED");
  return kDefaultSeed;
}

SplitDataset prepare_split(const RunConfig& config) {
  const FeatureDataset source = load_source(config);
  return standardize(stratified_split(source, config.validation_fraction, config.pso.seed));
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty sequence");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

int cmd_select(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_run(config);
    const SplitDataset split = prepare_split(config);
    const std::size_t n = split.train.feature_count();
    if (config.optimizer == OptimizerKind::oracle && n > kOracleMaxFeatures) {
      throw DataError("--optimizer oracle is limited to " + std::to_string(kOracleMaxFeatures) +
                      " features (2^n enumeration guard); dataset has " + std::to_string(n));
    }
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);

    TraceWriter trace(dir / "trace.jsonl");
    Mask best;
    double best_fitness = 0.0, best_accuracy = 0.0;
    switch (config.optimizer) {
      case OptimizerKind::xor_pso: {
        const auto init = initial_population(split, config.pso);
        const auto r = run_xor_pso(split, config.pso, init,
                                   [&](const IterationRecord& rec, const SwarmState&) {
                                     trace.write(rec);
                                   });
        best = r.best;
        best_fitness = r.best_fitness;
        best_accuracy = r.best_accuracy;
        break;
      }
      case OptimizerKind::baseline: {
        const auto init = initial_population(split, config.pso);
        const auto r = run_baseline_bpso(split, config.baseline(), init,
                                         [&](const IterationRecord& rec, const BaselineSwarmState&) {
                                           trace.write(rec);
                                         });
        best = r.best;
        best_fitness = r.best_fitness;
        best_accuracy = r.best_accuracy;
        break;
      }
      case OptimizerKind::oracle: {
        const auto start = std::chrono::steady_clock::now();
        const auto r = brute_force_best(split, config.pso);
        IterationRecord rec;
        rec.gbest_fitness = r.best_fitness;
        rec.gbest_accuracy = r.best_accuracy;
        rec.gbest_selected = r.best.selected_count();
        rec.inertia = inertia_at(0, config.pso);
        rec.elapsed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        trace.write(rec);
        best = r.best;
        best_fitness = r.best_fitness;
        best_accuracy = r.best_accuracy;
        break;
      }
    }
    trace.commit();

    nlohmann::ordered_json result;
    result["optimizer"] = to_string(config.optimizer);
    result["selected"] = best.indices();
    result["selected_count"] = best.selected_count();
    result["feature_count"] = n;
    result["fitness"] = best_fitness;
    result["accuracy"] = best_accuracy;
    result["seed"] = config.pso.seed;
    result["config"] = to_json(config);
    write_file_atomic(dir / "result.json", result.dump(2) + "\n");
    write_file_atomic(dir / "selected.csv", selected_csv(best, split.train.feature_names()));

    print_summary(out, to_string(config.optimizer), best_fitness, best_accuracy,
                  best.selected_count(), n);
    return 0;
  });
}

int cmd_compare(const RunConfig& config, std::span<const std::uint64_t> seeds,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_run(config);
    if (seeds.empty()) throw DataError("compare needs at least one seed");
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
      throw DataError("compare seeds must be distinct");
    }
    const SplitDataset split = prepare_split(config);
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);

    std::vector<FinalStats> xor_runs, base_runs;
    for (std::uint64_t seed : seeds) {
      PsoConfig pso = config.pso;
      pso.seed = seed;
      const auto init = initial_population(split, pso);
      const std::string suffix = "_seed" + std::to_string(seed) + ".jsonl";
      {
        TraceWriter trace(dir / ("trace_xor" + suffix));
        const auto r = run_xor_pso(split, pso, init,
                                   [&](const IterationRecord& rec, const SwarmState&) {
                                     trace.write(rec);
                                   });
        trace.commit();
        xor_runs.push_back(final_stats(r));
      }
      {
        BaselineConfig base = config.baseline();
        base.pso = pso;
        TraceWriter trace(dir / ("trace_baseline" + suffix));
        const auto r = run_baseline_bpso(split, base, init,
                                         [&](const IterationRecord& rec, const BaselineSwarmState&) {
                                           trace.write(rec);
                                         });
        trace.commit();
        base_runs.push_back(final_stats(r));
      }
    }

    std::ostringstream csv;
    csv << "optimizer,runs,median_fitness,median_accuracy,median_selected,mean_wall_ms\n";
    const auto row = [&](const std::string& name, const std::vector<FinalStats>& runs) {
      std::vector<double> f, a, s;
      double wall = 0.0;
      for (const auto& r : runs) {
        f.push_back(r.fitness);
        a.push_back(r.accuracy);
        s.push_back(r.selected);
        wall += r.wall_ms;
      }
      const double mean_wall = wall / static_cast<double>(runs.size());
      csv << name << ',' << runs.size() << ',' << fmt_double(median(f)) << ','
          << fmt_double(median(a)) << ',' << fmt_double(median(s)) << ','
          << fmt_double(mean_wall) << '\n';
      out << std::left << std::setw(9) << name << " runs=" << runs.size()
          << " median_fitness=" << fmt_double(median(f))
          << " median_accuracy=" << fmt_double(median(a))
          << " median_selected=" << fmt_double(median(s)) << " mean_wall_ms=" << std::fixed
          << std::setprecision(1) << mean_wall << '\n';
      out.unsetf(std::ios::floatfield | std::ios::adjustfield);
    };
    row("xor", xor_runs);
    row("baseline", base_runs);
    write_file_atomic(dir / "summary.csv", csv.str());
    return 0;
  });
}

int cmd_mi_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_run(config);
    const FeatureDataset data = load_source(config);
    const MiScores scores = score_features(data, config.pso.seeding.bins);
    const auto order = ranked_features(scores);
    std::ostringstream csv;
    csv << "feature_index,score_nats\n";
    for (std::size_t j : order) csv << j << ',' << fmt_double(scores.scores[j]) << '\n';
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);
    write_file_atomic(dir / "mi.csv", csv.str());
    out << "mi-report: " << order.size() << " features scored, top feature " << order.front()
        << " (" << fmt_double(scores.scores[order.front()]) << " nats)\n";
    return 0;
  });
}

int cmd_synth_gen(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!config.synth) throw DataError("synth-gen requires --synth n=..,f=..,inf=..");
    const auto synth = generate_synthetic(*config.synth);
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);
    const fs::path csv = dir / "synth.csv";
    const fs::path sidecar = dir / "synth.json";
    const fs::path csv_tmp = csv.string() + ".partial";
    save_dataset(synth.data, csv_tmp);
    fs::rename(csv_tmp, csv);
    const fs::path side_tmp = sidecar.string() + ".partial";
    save_provenance(synth.provenance, side_tmp);
    fs::rename(side_tmp, sidecar);
    out << "synth-gen: wrote " << csv.string() << " and " << sidecar.string() << '\n';
    return 0;
  });
}

namespace {

struct Flags {
  std::optional<std::string> config, data, label_column, synth, optimizer, out, update_mode;
  std::optional<std::size_t> population, iterations, w_period, top_m, workers;
  std::optional<double> w_initial, w_decay, w_min, threshold, val_fraction, seeded_fraction;
  std::optional<double> c1, c2, v_clamp;
  std::optional<int> knn_k, bins;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> seeds;
};

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "JSON run config (result.json works too); flags override it");
  app.add_option("--data", f.data, "CSV dataset with a header row");
  app.add_option("--label-column", f.label_column, "label column name or index (default: label)");
  app.add_option("--synth", f.synth, "synthetic spec, e.g. n=400,f=64,inf=8[,sep=2,noise=1,seed=7]");
  app.add_option("--optimizer", f.optimizer, "xor | baseline | oracle");
  app.add_option("--population", f.population, "swarm size (default 100)");
  app.add_option("--iterations", f.iterations, "iterations (default 100)");
  app.add_option("--w-initial", f.w_initial, "initial inertia (default 1.0)");
  app.add_option("--w-decay", f.w_decay, "inertia decrement per period (default 0.05)");
  app.add_option("--w-period", f.w_period, "iterations per inertia step (default 5)");
  app.add_option("--w-min", f.w_min, "inertia floor (default 0)");
  app.add_option("--threshold", f.threshold, "accuracy threshold of the two-phase fitness (default 0.98)");
  app.add_option("--knn-k", f.knn_k, "neighbors for the k-NN evaluator, odd (default 5)");
  app.add_option("--val-fraction", f.val_fraction, "validation share per class (default 0.2)");
  app.add_option("--seed", f.seed, "run seed (else config, else XORPSO_SEED, else 42)");
  app.add_option("--seeded-fraction", f.seeded_fraction, "share of MI-seeded particles (default 0.2)");
  app.add_option("--top-m", f.top_m, "top-MI features set in seeded particles (default features/4)");
  app.add_option("--bins", f.bins, "equal-width bins for MI (default 10)");
  app.add_option("--workers", f.workers, "parallel evaluators in synchronous mode (default 1)");
  app.add_option("--out", f.out, "output directory (default out)");
  app.add_option("--update-mode", f.update_mode, "asynchronous | synchronous");
  app.add_option("--c1", f.c1, "baseline cognitive coefficient (default 2)");
  app.add_option("--c2", f.c2, "baseline social coefficient (default 2)");
  app.add_option("--v-clamp", f.v_clamp, "baseline velocity clamp (default 4)");
}

RunConfig build_config(const Flags& f) {
  ConfigFile file;
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw DataError("cannot open config file '" + *f.config + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("config file '" + *f.config + "' is not valid JSON: " + e.what());
    }
    file = run_config_from_json(j);
  }
  RunConfig c = file.config;
  std::optional<std::uint64_t> synth_seed = file.synth_seed;

  if (f.data) {
    c.data_path = *f.data;
    c.synth.reset();
  }
  if (f.synth) {
    auto [spec, has_seed] = parse_synth_arg(*f.synth);
    c.synth = spec;
    synth_seed = has_seed ? std::optional(spec.seed) : std::nullopt;
    if (!f.data) c.data_path.reset();
  }
  if (f.label_column) c.label_column = *f.label_column;
  if (f.optimizer) c.optimizer = parse_optimizer(*f.optimizer);
  if (f.out) c.out_dir = *f.out;
  if (f.update_mode) c.pso.update_mode = parse_update_mode(*f.update_mode);
  if (f.population) c.pso.population = *f.population;
  if (f.iterations) c.pso.iterations = *f.iterations;
  if (f.w_period) c.pso.w_period = *f.w_period;
  if (f.top_m) c.pso.seeding.top_m = *f.top_m;
  if (f.workers) c.pso.workers = *f.workers;
  if (f.w_initial) c.pso.w_initial = *f.w_initial;
  if (f.w_decay) c.pso.w_decay = *f.w_decay;
  if (f.w_min) c.pso.w_min = *f.w_min;
  if (f.threshold) c.pso.accuracy_threshold = *f.threshold;
  if (f.val_fraction) c.validation_fraction = *f.val_fraction;
  if (f.seeded_fraction) c.pso.seeding.seeded_fraction = *f.seeded_fraction;
  if (f.c1) c.c1 = *f.c1;
  if (f.c2) c.c2 = *f.c2;
  if (f.v_clamp) c.v_clamp = *f.v_clamp;
  if (f.knn_k) c.pso.knn.k = *f.knn_k;
  if (f.bins) c.pso.seeding.bins = *f.bins;
  if (!f.seeds.empty()) c.seeds = f.seeds;

  c.pso.seed = resolve_seed(f.seed, file.seed, std::getenv("XORPSO_SEED"));
  if (c.synth && !synth_seed) c.synth->seed = c.pso.seed;
  return c;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wrapper feature selection with XOR binary particle swarm optimization", "xorpso"};
  app.require_subcommand(1);
  Flags flags;
  auto* select = app.add_subcommand("select", "run one optimizer and write trace, result and selection");
  auto* compare = app.add_subcommand("compare", "run XOR PSO and the baseline over several seeds");
  auto* mi = app.add_subcommand("mi-report", "write per-feature mutual information, best first");
  auto* synth = app.add_subcommand("synth-gen", "write a synthetic dataset and its provenance sidecar");
  for (auto* sub : {select, compare, mi, synth}) add_flags(*sub, flags);
  compare->add_option("--seeds", flags.seeds, "comma-separated optimizer seeds")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  RunConfig config;
  try {
    config = build_config(flags);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (select->parsed()) return cmd_select(config, out, err);
  if (compare->parsed()) {
    std::vector<std::uint64_t> seeds = config.seeds;
    if (seeds.empty()) seeds.push_back(config.pso.seed);
    return cmd_compare(config, seeds, out, err);
  }
  if (mi->parsed()) return cmd_mi_report(config, out, err);
  return cmd_synth_gen(config, out, err);
}

}  // namespace xorpso::cli
