#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "xorpso/data.hpp"
#include "xorpso/mask.hpp"
#include "xorpso/rng.hpp"

namespace xorpso {

// Per-feature mutual information with the label, in nats.
struct MiScores {
  std::vector<double> scores;
  int bin_count = 10;
};

// Equal-width binning over [min, max]. The maximum lands in the top bin and a
// constant column maps entirely to bin 0.
std::vector<int> discretize(std::span<const double> column, int bin_count);

// Empirical mutual information of two discrete sequences, natural log.
// Zero-probability cells contribute nothing. Throws std::invalid_argument on
// empty or mismatched inputs.
double mutual_information(std::span<const int> x, std::span<const int> y);

MiScores score_features(const FeatureDataset& train, int bin_count = 10);

// Feature indices by descending score; equal scores keep ascending index.
std::vector<std::size_t> ranked_features(const MiScores& scores);

// Initial swarm positions.
//
// The first round(population * seeded_fraction) masks carry the top_m
// highest-scoring features plus Bernoulli(0.1) elsewhere; the rest are
// Bernoulli(0.5) per bit. Bits are drawn in index order, masks in index
// order. Any all-zero mask gets its highest-scoring bit set.
std::vector<Mask> seed_masks(const MiScores& scores, std::size_t population,
                             double seeded_fraction, std::size_t top_m, Rng& rng);

}  // namespace xorpso
