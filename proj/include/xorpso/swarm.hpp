#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "xorpso/classify.hpp"
#include "xorpso/data.hpp"
#include "xorpso/mask.hpp"
#include "xorpso/rng.hpp"

namespace xorpso {

enum class UpdateMode {
  // gbest refreshes as soon as a particle beats it, mid-iteration.
  asynchronous,
  // gbest is frozen while the iteration moves and evaluates every particle,
  // then refreshed in particle-index order. Evaluations may run in parallel.
  synchronous,
};

struct SeedingConfig {
  double seeded_fraction = 0.2;
  std::size_t top_m = 0;  // 0 means feature_count / 4 (at least 1)
  int bins = 10;

  friend bool operator==(const SeedingConfig&, const SeedingConfig&) = default;
};

struct PsoConfig {
  std::size_t population = 100;
  std::size_t iterations = 100;
  double w_initial = 1.0;
  double w_decay = 0.05;
  std::size_t w_period = 5;
  double w_min = 0.0;
  double accuracy_threshold = 0.98;
  KnnConfig knn;
  std::uint64_t seed = 42;
  UpdateMode update_mode = UpdateMode::asynchronous;
  SeedingConfig seeding;
  // Concurrent fitness evaluators; only used in synchronous mode.
  std::size_t workers = 1;

  friend bool operator==(const PsoConfig&, const PsoConfig&) = default;
};

// Sigmoid-transfer binary PSO built on the classical continuous update.
struct BaselineConfig {
  PsoConfig pso;
  double c1 = 2.0;
  double c2 = 2.0;
  double v_clamp = 4.0;

  friend bool operator==(const BaselineConfig&, const BaselineConfig&) = default;
};

void validate(const PsoConfig& config);
void validate(const BaselineConfig& config);

struct Particle {
  Mask position;
  std::vector<Bit> velocity;  // post-threshold flip bits
  Mask pbest_position;
  double pbest_fitness = -1.0;
  double pbest_accuracy = 0.0;
};

struct BaselineParticle {
  Mask position;
  std::vector<double> velocity;  // in [-v_clamp, v_clamp]
  Mask pbest_position;
  double pbest_fitness = -1.0;
  double pbest_accuracy = 0.0;
};

template <class P>
struct BasicSwarmState {
  std::vector<P> particles;
  Mask gbest_position;
  double gbest_fitness = -1.0;
  double gbest_accuracy = 0.0;
  std::size_t iteration = 0;
  double inertia = 1.0;
};

using SwarmState = BasicSwarmState<Particle>;
using BaselineSwarmState = BasicSwarmState<BaselineParticle>;

struct IterationRecord {
  std::size_t iteration = 0;
  double gbest_fitness = 0.0;
  double gbest_accuracy = 0.0;
  std::size_t gbest_selected = 0;
  double inertia = 0.0;
  double elapsed_ms = 0.0;  // wall time since the run started

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct Evaluation {
  double accuracy = 0.0;
  double fitness = -1.0;

  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

struct RunResult {
  Mask best;
  double best_fitness = -1.0;
  double best_accuracy = 0.0;
  std::vector<IterationRecord> trace;
};

// Called once per iteration after all commits, with the post-iteration state.
template <class State>
using Observer = std::function<void(const IterationRecord&, const State&)>;

// Fitness assigned to a mask that selects nothing. Below every real fitness.
inline constexpr double kEmptyMaskFitness = -1.0;

// max(w_min, w_initial - w_decay * floor(iteration / w_period)).
double inertia_at(std::size_t iteration, const PsoConfig& config);

// 1 where a best position and the current position disagree.
inline Bit disparity(Bit best, Bit x) { return static_cast<Bit>(best ^ x); }

// One bit of the XOR velocity rule with the random factors supplied:
//   raw = w*v + r1*(pbest ^ x) + r2*(gbest ^ x);  result = raw >= 0.5.
Bit xor_velocity_bit(Bit v, Bit x, Bit pbest, Bit gbest, double w, double r1, double r2);

// Full velocity update. Draws r1 ~ U(-1,1) then r2 ~ U(0,1) for every bit in
// index order.
std::vector<Bit> xor_velocity_update(const Particle& particle, const Mask& gbest,
                                     double w, Rng& rng);

// x XOR v, bitwise.
Mask position_update(const Mask& x, std::span<const Bit> v);

// Two-phase fitness: empty selection -> kEmptyMaskFitness; accuracy below the
// threshold -> accuracy; otherwise 2 - selected/total.
double fitness(double accuracy, std::size_t selected, std::size_t total, double threshold);

Evaluation evaluate_particle(const Mask& mask, const SplitDataset& split,
                             const PsoConfig& config);

// MI-seeded starting positions scored on split.train. Uses its own stream
// derived from config.seed, separate from the optimizer's.
std::vector<Mask> initial_population(const SplitDataset& split, const PsoConfig& config);

RunResult run_xor_pso(const SplitDataset& split, const PsoConfig& config,
                      const std::vector<Mask>& initial_masks,
                      const Observer<SwarmState>& observer = {});

// Per bit: v = w*v + c1*r1*(pbest - x) + c2*r2*(gbest - x), r1, r2 ~ U(0,1),
// clamped to +-v_clamp; then x = [u < sigmoid(v)], u ~ U(0,1). Draw order per
// bit is r1, r2, u.
RunResult run_baseline_bpso(const SplitDataset& split, const BaselineConfig& config,
                            const std::vector<Mask>& initial_masks,
                            const Observer<BaselineSwarmState>& observer = {});

// Probability that the baseline selects a bit with velocity v.
double selection_probability(double v);

inline constexpr std::size_t kOracleMaxFeatures = 20;

struct OracleResult {
  Mask best;
  double best_fitness = -1.0;
  double best_accuracy = 0.0;
};

// Exhaustive search over every non-empty mask. Ties go to fewer selected
// features, then to the lexicographically smallest bit vector. Throws
// std::invalid_argument above kOracleMaxFeatures features.
OracleResult brute_force_best(const SplitDataset& split, const PsoConfig& config);

}  // namespace xorpso
