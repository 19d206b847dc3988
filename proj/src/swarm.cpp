#include "xorpso/swarm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "xorpso/rank.hpp"

namespace xorpso {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void check_masks(const SplitDataset& split, const PsoConfig& config,
                 const std::vector<Mask>& masks) {
  require(masks.size() == config.population,
          "expected " + std::to_string(config.population) + " initial masks, got " +
              std::to_string(masks.size()));
  const std::size_t n = split.train.feature_count();
  require(split.validation.feature_count() == n,
          "train and validation feature counts differ");
  for (std::size_t i = 0; i < masks.size(); ++i) {
    require(masks[i].size() == n, "initial mask " + std::to_string(i) + " has length " +
                                      std::to_string(masks[i].size()) + ", expected " +
                                      std::to_string(n));
    require(masks[i].is_binary(), "initial mask " + std::to_string(i) + " is not binary");
  }
}

// Evaluates masks[i] into out[i] for every i, spreading the work over
// `workers` threads. Each slot is written by exactly one thread.
void evaluate_all(const std::vector<const Mask*>& masks, std::vector<Evaluation>& out,
                  const SplitDataset& split, const PsoConfig& config, std::size_t workers) {
  out.resize(masks.size());
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, masks.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < masks.size(); ++i) {
      out[i] = evaluate_particle(*masks[i], split, config);
    }
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < masks.size(); i += workers) {
        out[i] = evaluate_particle(*masks[i], split, config);
      }
    });
  }
}

template <class P>
void commit_pbest(P& particle, const Evaluation& ev) {
  if (ev.fitness > particle.pbest_fitness) {
    particle.pbest_fitness = ev.fitness;
    particle.pbest_accuracy = ev.accuracy;
    particle.pbest_position = particle.position;
  }
}

template <class P>
void commit_gbest(BasicSwarmState<P>& state, const Mask& position, const Evaluation& ev) {
  if (ev.fitness > state.gbest_fitness) {
    state.gbest_fitness = ev.fitness;
    state.gbest_accuracy = ev.accuracy;
    state.gbest_position = position;
  }
}

// Shared driver for both optimizers. `make` builds a particle from a start
// mask; `move` advances one particle's velocity and position in place.
template <class P, class Make, class Move>
RunResult run_swarm(const SplitDataset& split, const PsoConfig& config,
                    const std::vector<Mask>& initial_masks, Make make, Move move,
                    const Observer<BasicSwarmState<P>>& observer) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };

  const bool sync = config.update_mode == UpdateMode::synchronous;
  const std::size_t workers = sync ? config.workers : 1;
  Rng rng(config.seed);

  BasicSwarmState<P> state;
  state.particles.reserve(initial_masks.size());
  for (const auto& m : initial_masks) state.particles.push_back(make(m));

  std::vector<const Mask*> positions(state.particles.size());
  std::vector<Evaluation> evals;
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = &state.particles[i].position;

  evaluate_all(positions, evals, split, config, workers);
  state.gbest_fitness = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < state.particles.size(); ++i) {
    auto& p = state.particles[i];
    p.pbest_position = p.position;
    p.pbest_fitness = evals[i].fitness;
    p.pbest_accuracy = evals[i].accuracy;
    commit_gbest(state, p.position, evals[i]);
  }

  RunResult result;
  result.trace.reserve(config.iterations);
  for (std::size_t t = 0; t < config.iterations; ++t) {
    const double w = inertia_at(t, config);
    state.iteration = t;
    state.inertia = w;

    if (sync) {
      for (auto& p : state.particles) move(p, state.gbest_position, w, rng);
      evaluate_all(positions, evals, split, config, workers);
      for (std::size_t i = 0; i < state.particles.size(); ++i) {
        commit_gbest(state, state.particles[i].position, evals[i]);
        commit_pbest(state.particles[i], evals[i]);
      }
    } else {
      for (auto& p : state.particles) {
        move(p, state.gbest_position, w, rng);
        const Evaluation ev = evaluate_particle(p.position, split, config);
        commit_gbest(state, p.position, ev);
        commit_pbest(p, ev);
      }
    }

    IterationRecord rec;
    rec.iteration = t;
    rec.gbest_fitness = state.gbest_fitness;
    rec.gbest_accuracy = state.gbest_accuracy;
    rec.gbest_selected = state.gbest_position.selected_count();
    rec.inertia = w;
    rec.elapsed_ms = elapsed_ms();
    result.trace.push_back(rec);
    if (observer) observer(rec, state);
  }

  result.best = state.gbest_position;
  result.best_fitness = state.gbest_fitness;
  result.best_accuracy = state.gbest_accuracy;
  return result;
}

}  // namespace

void validate(const PsoConfig& c) {
  require(c.population >= 1, "population must be at least 1");
  require(c.iterations >= 1, "iterations must be at least 1");
  require(c.w_initial > 0.0 && c.w_initial <= 1.0, "w_initial must lie in (0, 1]");
  require(c.w_decay >= 0.0, "w_decay must be non-negative");
  require(c.w_period >= 1, "w_period must be at least 1");
  require(c.w_min >= 0.0 && c.w_min <= c.w_initial, "w_min must lie in [0, w_initial]");
  require(c.accuracy_threshold > 0.0 && c.accuracy_threshold <= 1.0,
          "accuracy threshold must lie in (0, 1]");
  require(c.workers >= 1, "workers must be at least 1");
  require(c.seeding.seeded_fraction >= 0.0 && c.seeding.seeded_fraction <= 1.0,
          "seeded fraction must lie in [0, 1]");
  require(c.seeding.bins >= 2, "bin count must be at least 2");
  validate(c.knn);
}

void validate(const BaselineConfig& c) {
  validate(c.pso);
  require(c.c1 > 0.0, "c1 must be positive");
  require(c.c2 > 0.0, "c2 must be positive");
  require(c.v_clamp > 0.0, "v_clamp must be positive");
}

double inertia_at(std::size_t iteration, const PsoConfig& config) {
  const auto steps = static_cast<double>(iteration / config.w_period);
  return std::max(config.w_min, config.w_initial - config.w_decay * steps);
}

Bit xor_velocity_bit(Bit v, Bit x, Bit pbest, Bit gbest, double w, double r1, double r2) {
  const double raw = w * v + r1 * disparity(pbest, x) + r2 * disparity(gbest, x);
  return raw >= 0.5 ? 1 : 0;
}

std::vector<Bit> xor_velocity_update(const Particle& particle, const Mask& gbest, double w,
                                     Rng& rng) {
  const std::size_t n = particle.position.size();
  require(particle.velocity.size() == n && particle.pbest_position.size() == n &&
              gbest.size() == n,
          "velocity update: dimension mismatch");
  require(w >= 0.0 && w <= 1.0, "inertia must lie in [0, 1]");
  std::vector<Bit> next(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r1 = rng.uniform(-1.0, 1.0);
    const double r2 = rng.uniform01();
    next[j] = xor_velocity_bit(particle.velocity[j], particle.position[j],
                               particle.pbest_position[j], gbest[j], w, r1, r2);
  }
  return next;
}

Mask position_update(const Mask& x, std::span<const Bit> v) {
  require(x.size() == v.size(), "position update: dimension mismatch");
  Mask next = x;
  for (std::size_t j = 0; j < v.size(); ++j) next.bits[j] = static_cast<Bit>(x[j] ^ v[j]);
  return next;
}

double fitness(double accuracy, std::size_t selected, std::size_t total, double threshold) {
  if (selected == 0) return kEmptyMaskFitness;
  if (accuracy < threshold) return accuracy;
  return 2.0 - static_cast<double>(selected) / static_cast<double>(total);
}

Evaluation evaluate_particle(const Mask& mask, const SplitDataset& split,
                             const PsoConfig& config) {
  const auto accuracy = knn_accuracy(split, mask, config.knn);
  if (!accuracy) return {0.0, kEmptyMaskFitness};
  return {*accuracy, fitness(*accuracy, mask.selected_count(), mask.size(),
                             config.accuracy_threshold)};
}

std::vector<Mask> initial_population(const SplitDataset& split, const PsoConfig& config) {
  validate(config);
  const auto scores = score_features(split.train, config.seeding.bins);
  const std::size_t n = scores.scores.size();
  const std::size_t top_m =
      config.seeding.top_m != 0 ? config.seeding.top_m : std::max<std::size_t>(1, n / 4);
  Rng rng(derive_seed(config.seed, 1));
  return seed_masks(scores, config.population, config.seeding.seeded_fraction, top_m, rng);
}

RunResult run_xor_pso(const SplitDataset& split, const PsoConfig& config,
                      const std::vector<Mask>& initial_masks,
                      const Observer<SwarmState>& observer) {
  validate(config);
  check_masks(split, config, initial_masks);
  const auto make = [](const Mask& m) {
    Particle p;
    p.position = m;
    p.velocity.assign(m.size(), 0);
    return p;
  };
  const auto move = [](Particle& p, const Mask& gbest, double w, Rng& rng) {
    p.velocity = xor_velocity_update(p, gbest, w, rng);
    p.position = position_update(p.position, p.velocity);
  };
  return run_swarm<Particle>(split, config, initial_masks, make, move, observer);
}

double selection_probability(double v) { return 1.0 / (1.0 + std::exp(-v)); }

RunResult run_baseline_bpso(const SplitDataset& split, const BaselineConfig& config,
                            const std::vector<Mask>& initial_masks,
                            const Observer<BaselineSwarmState>& observer) {
  validate(config);
  check_masks(split, config.pso, initial_masks);
  const auto make = [](const Mask& m) {
    BaselineParticle p;
    p.position = m;
    p.velocity.assign(m.size(), 0.0);
    return p;
  };
  const double c1 = config.c1, c2 = config.c2, clamp = config.v_clamp;
  const auto move = [=](BaselineParticle& p, const Mask& gbest, double w, Rng& rng) {
    for (std::size_t j = 0; j < p.position.size(); ++j) {
      const double r1 = rng.uniform01();
      const double r2 = rng.uniform01();
      const double x = p.position[j];
      double v = w * p.velocity[j] + c1 * r1 * (p.pbest_position[j] - x) +
                 c2 * r2 * (gbest[j] - x);
      v = std::clamp(v, -clamp, clamp);
      p.velocity[j] = v;
      p.position.bits[j] = rng.uniform01() < selection_probability(v) ? 1 : 0;
    }
  };
  return run_swarm<BaselineParticle>(split, config.pso, initial_masks, make, move, observer);
}

OracleResult brute_force_best(const SplitDataset& split, const PsoConfig& config) {
  validate(config);
  const std::size_t n = split.train.feature_count();
  if (n > kOracleMaxFeatures) {
    throw std::invalid_argument("exhaustive oracle is limited to " +
                                std::to_string(kOracleMaxFeatures) + " features (2^" +
                                std::to_string(kOracleMaxFeatures) +
                                " enumeration guard); dataset has " + std::to_string(n));
  }
  require(n >= 1, "exhaustive oracle needs at least one feature");

  OracleResult best;
  best.best_fitness = -std::numeric_limits<double>::infinity();
  std::size_t best_count = 0;
  Mask m = Mask::zeros(n);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t code = 1; code < total; ++code) {
    for (std::size_t j = 0; j < n; ++j) m.bits[j] = static_cast<Bit>((code >> j) & 1u);
    const Evaluation ev = evaluate_particle(m, split, config);
    const std::size_t count = m.selected_count();
    bool better = ev.fitness > best.best_fitness;
    if (!better && ev.fitness == best.best_fitness) {
      better = count < best_count || (count == best_count && m < best.best);
    }
    if (better) {
      best.best = m;
      best.best_fitness = ev.fitness;
      best.best_accuracy = ev.accuracy;
      best_count = count;
    }
  }
  return best;
}

}  // namespace xorpso
