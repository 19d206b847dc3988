#include "xorpso/rank.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace xorpso {

std::vector<int> discretize(std::span<const double> column, int bin_count) {
  if (bin_count < 2) {
    throw std::invalid_argument("bin count must be at least 2, got " +
                                std::to_string(bin_count));
  }
  std::vector<int> bins(column.size(), 0);
  if (column.empty()) return bins;
  const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  if (!(range > 0.0)) return bins;
  for (std::size_t i = 0; i < column.size(); ++i) {
    const double pos = (column[i] - lo) / range * bin_count;
    bins[i] = std::clamp(static_cast<int>(std::floor(pos)), 0, bin_count - 1);
  }
  return bins;
}

double mutual_information(std::span<const int> x, std::span<const int> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("mutual_information: length mismatch (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  }
  if (x.empty()) throw std::invalid_argument("mutual_information: empty input");

  std::map<std::pair<int, int>, std::size_t> joint;
  std::map<int, std::size_t> px, py;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ++joint[{x[i], y[i]}];
    ++px[x[i]];
    ++py[y[i]];
  }
  // p(x,y) / (p(x) p(y)) = c(x,y) n / (c(x) c(y)); exact when counts factorize.
  const auto n = static_cast<double>(x.size());
  double mi = 0.0;
  for (const auto& [cell, count] : joint) {
    const auto c = static_cast<double>(count);
    const auto cx = static_cast<double>(px[cell.first]);
    const auto cy = static_cast<double>(py[cell.second]);
    mi += (c / n) * std::log((c * n) / (cx * cy));
  }
  return std::max(0.0, mi);
}

MiScores score_features(const FeatureDataset& train, int bin_count) {
  if (train.sample_count() == 0) throw std::invalid_argument("score_features: empty dataset");
  MiScores out;
  out.bin_count = bin_count;
  out.scores.resize(train.feature_count());
  const auto labels = train.labels();
  for (std::size_t c = 0; c < train.feature_count(); ++c) {
    const auto col = train.column(c);
    const auto bins = discretize(col, bin_count);
    out.scores[c] = mutual_information(bins, labels);
  }
  return out;
}

std::vector<std::size_t> ranked_features(const MiScores& scores) {
  std::vector<std::size_t> order(scores.scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores.scores[a] > scores.scores[b];
  });
  return order;
}

std::vector<Mask> seed_masks(const MiScores& scores, std::size_t population,
                             double seeded_fraction, std::size_t top_m, Rng& rng) {
  const std::size_t n = scores.scores.size();
  if (population < 1) throw std::invalid_argument("population must be at least 1");
  if (!(seeded_fraction >= 0.0 && seeded_fraction <= 1.0)) {
    throw std::invalid_argument("seeded fraction must lie in [0, 1]");
  }
  if (n == 0) throw std::invalid_argument("seed_masks: no features");
  if (top_m < 1 || top_m > n) {
    throw std::invalid_argument("top_m must lie in [1, " + std::to_string(n) + "], got " +
                                std::to_string(top_m));
  }

  const auto order = ranked_features(scores);
  std::vector<bool> in_top(n, false);
  for (std::size_t i = 0; i < top_m; ++i) in_top[order[i]] = true;

  const auto seeded = std::min(
      population,
      static_cast<std::size_t>(std::llround(static_cast<double>(population) * seeded_fraction)));

  std::vector<Mask> masks;
  masks.reserve(population);
  for (std::size_t p = 0; p < population; ++p) {
    Mask m = Mask::zeros(n);
    if (p < seeded) {
      for (std::size_t j = 0; j < n; ++j) {
        m.bits[j] = in_top[j] ? 1 : static_cast<Bit>(rng.bernoulli(0.1));
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) m.bits[j] = static_cast<Bit>(rng.bernoulli(0.5));
    }
    if (m.empty_selection()) m.bits[order.front()] = 1;
    masks.push_back(std::move(m));
  }
  return masks;
}

}  // namespace xorpso
