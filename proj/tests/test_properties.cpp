#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "xorpso/swarm.hpp"

using namespace xorpso;

namespace {

Bit random_bit(std::mt19937_64& gen) { return static_cast<Bit>(gen() & 1u); }

Mask random_mask(std::mt19937_64& gen, std::size_t n) {
  Mask m = Mask::zeros(n);
  for (auto& b : m.bits) b = random_bit(gen);
  return m;
}

SplitDataset instance(std::size_t features, std::uint64_t seed) {
  const auto s = generate_synthetic({160, features, 3, 2.0, 1.0, seed});
  return standardize(stratified_split(s.data, 0.25, seed));
}

}  // namespace

TEST_CASE("velocity and position stay binary") {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 40;
    Particle p;
    p.position = random_mask(gen, n);
    p.pbest_position = random_mask(gen, n);
    p.velocity = random_mask(gen, n).bits;
    const Mask gbest = random_mask(gen, n);
    Rng rng(gen());
    const double w = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
    const auto v = xor_velocity_update(p, gbest, w, rng);
    CHECK(Mask(v).is_binary());
    CHECK(position_update(p.position, v).is_binary());
  }
}

TEST_CASE("XOR position update is an involution") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 64;
    const Mask x = random_mask(gen, n);
    const Mask v = random_mask(gen, n);
    CHECK(position_update(position_update(x, v.bits), v.bits) == x);
    CHECK(position_update(x, Mask::zeros(n).bits) == x);
  }
}

TEST_CASE("consensus with zero velocity is a fixed point of the move") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 30;
    Particle p;
    p.position = random_mask(gen, n);
    p.pbest_position = p.position;
    p.velocity.assign(n, 0);
    Rng rng(gen());
    const double w = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
    const auto v = xor_velocity_update(p, p.position, w, rng);
    CHECK(v == std::vector<Bit>(n, 0));
  }
}

TEST_CASE("fitness ordering") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t total = 1 + gen() % 600;
    const double threshold = 0.5 + 0.5 * unit(gen);
    const double above = threshold + (1.0 - threshold) * unit(gen);
    const double below = threshold * unit(gen) * 0.999;
    const std::size_t a = 1 + gen() % total;
    const std::size_t b = 1 + gen() % total;

    // Any thresholded mask beats any sub-threshold mask.
    CHECK(fitness(above, a, total, threshold) > fitness(below, b, total, threshold));
    CHECK(fitness(above, total, total, threshold) >= 1.0);
    // Among thresholded masks, fewer features win regardless of accuracy.
    if (a < b) CHECK(fitness(threshold, a, total, threshold) > fitness(1.0, b, total, threshold));
    // Empty selection ranks below everything.
    CHECK(fitness(1.0, 0, total, threshold) < fitness(0.0, b, total, threshold));
  }
}

TEST_CASE("pbest and gbest never decrease") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto split = instance(12, seed);
    PsoConfig cfg;
    cfg.population = 15;
    cfg.iterations = 25;
    cfg.seed = seed;
    const auto init = initial_population(split, cfg);

    for (auto mode : {UpdateMode::asynchronous, UpdateMode::synchronous}) {
      cfg.update_mode = mode;
      std::vector<double> pbest(cfg.population, -2.0);
      double gbest = -2.0;
      run_xor_pso(split, cfg, init, [&](const IterationRecord& rec, const SwarmState& st) {
        CHECK(rec.gbest_fitness >= gbest);
        gbest = rec.gbest_fitness;
        for (std::size_t i = 0; i < st.particles.size(); ++i) {
          CHECK(st.particles[i].pbest_fitness >= pbest[i]);
          CHECK(st.particles[i].pbest_fitness <= st.gbest_fitness);
          pbest[i] = st.particles[i].pbest_fitness;
        }
      });
    }

    std::vector<double> pbest(cfg.population, -2.0);
    double gbest = -2.0;
    BaselineConfig base{cfg, 2.0, 2.0, 4.0};
    run_baseline_bpso(split, base, init, [&](const IterationRecord& rec, const BaselineSwarmState& st) {
      CHECK(rec.gbest_fitness >= gbest);
      gbest = rec.gbest_fitness;
      for (std::size_t i = 0; i < st.particles.size(); ++i) {
        CHECK(st.particles[i].pbest_fitness >= pbest[i]);
        pbest[i] = st.particles[i].pbest_fitness;
      }
    });
  }
}

TEST_CASE("trace records are consistent with the final result") {
  const auto split = instance(10, 5);
  PsoConfig cfg;
  cfg.population = 10;
  cfg.iterations = 12;
  const auto init = initial_population(split, cfg);
  const auto check = [&](const RunResult& r) {
    REQUIRE(r.trace.size() == cfg.iterations);
    for (std::size_t t = 0; t < r.trace.size(); ++t) {
      const auto& rec = r.trace[t];
      CHECK(rec.iteration == t);
      CHECK(rec.inertia == inertia_at(t, cfg));
      CHECK(rec.gbest_selected >= 1);
      CHECK(rec.gbest_selected <= 10);
      if (t > 0) CHECK(rec.elapsed_ms >= r.trace[t - 1].elapsed_ms);
    }
    CHECK(r.trace.back().gbest_fitness == r.best_fitness);
    CHECK(r.trace.back().gbest_accuracy == r.best_accuracy);
    CHECK(r.trace.back().gbest_selected == r.best.selected_count());
    // Re-evaluating the reported best reproduces its score exactly.
    CHECK(evaluate_particle(r.best, split, cfg) == Evaluation{r.best_accuracy, r.best_fitness});
  };
  check(run_xor_pso(split, cfg, init));
  check(run_baseline_bpso(split, {cfg, 2.0, 2.0, 4.0}, init));
}

TEST_CASE("no optimizer beats the exhaustive oracle") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const auto split = instance(9, seed);
    PsoConfig cfg;
    cfg.population = 12;
    cfg.iterations = 15;
    cfg.seed = seed;
    const auto oracle = brute_force_best(split, cfg);
    CHECK(evaluate_particle(oracle.best, split, cfg).fitness == oracle.best_fitness);
    const auto init = initial_population(split, cfg);
    CHECK(run_xor_pso(split, cfg, init).best_fitness <= oracle.best_fitness);
    CHECK(run_baseline_bpso(split, {cfg, 2.0, 2.0, 4.0}, init).best_fitness <= oracle.best_fitness);
  }
}
