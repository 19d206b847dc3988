#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "xorpso/data.hpp"
#include "xorpso/swarm.hpp"

namespace xorpso::cli {

enum class OptimizerKind { xor_pso, baseline, oracle };

std::string to_string(OptimizerKind kind);
OptimizerKind parse_optimizer(const std::string& text);
std::string to_string(UpdateMode mode);
UpdateMode parse_update_mode(const std::string& text);

// Everything needed to reproduce one invocation. The optimizer seed lives in
// pso.seed and also drives the train/validation split.
struct RunConfig {
  std::optional<std::string> data_path;
  std::string label_column = "label";
  std::optional<SynthSpec> synth;
  double validation_fraction = 0.2;
  OptimizerKind optimizer = OptimizerKind::xor_pso;
  std::string out_dir = "out";
  PsoConfig pso;
  double c1 = 2.0;
  double c2 = 2.0;
  double v_clamp = 4.0;
  std::vector<std::uint64_t> seeds;  // compare only; empty means {pso.seed}

  BaselineConfig baseline() const { return {pso, c1, c2, v_clamp}; }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::ordered_json to_json(const RunConfig& config);

// Parsed config file. `seed` and `synth_seed` are absent when the file did not
// set them, so the caller can apply seed precedence.
struct ConfigFile {
  RunConfig config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> synth_seed;
};

// Accepts either a bare RunConfig object or a result.json whose "config"
// member holds one. Unknown keys are rejected.
ConfigFile run_config_from_json(const nlohmann::json& j);

// "n=400,f=64,inf=8,sep=2.0,noise=1.0,seed=7"; keys other than n, f and inf
// are optional. Returns the spec and whether a seed was given.
std::pair<SynthSpec, bool> parse_synth_arg(const std::string& text);

// flag > config file > XORPSO_SEED > 42.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag,
                           std::optional<std::uint64_t> file, const char* env_value);

inline constexpr std::uint64_t kDefaultSeed = 42;

// Loads or generates the dataset, splits it with the run seed and
// standardizes with train statistics.
SplitDataset prepare_split(const RunConfig& config);

int cmd_select(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::span<const std::uint64_t> seeds,
                std::ostream& out, std::ostream& err);
int cmd_mi_report(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_synth_gen(const RunConfig& config, std::ostream& out, std::ostream& err);

// Median with the mean of the middle pair for even sizes. Empty input is an
// error.
double median(std::vector<double> values);

// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xorpso::cli
