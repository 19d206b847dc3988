#include "xorpso/classify.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace xorpso {

void validate(const KnnConfig& config) {
  if (config.k < 1 || config.k % 2 == 0) {
    throw std::invalid_argument("k-NN k must be a positive odd integer, got " +
                                std::to_string(config.k));
  }
}

std::optional<double> knn_accuracy(const SplitDataset& split, const Mask& mask,
                                   const KnnConfig& config) {
  const auto& train = split.train;
  const auto& val = split.validation;
  if (mask.size() != train.feature_count() || mask.size() != val.feature_count()) {
    throw std::invalid_argument("mask length " + std::to_string(mask.size()) +
                                " does not match feature count " +
                                std::to_string(train.feature_count()));
  }
  if (config.k < 1) throw std::invalid_argument("k-NN k must be positive");
  const auto k = static_cast<std::size_t>(config.k);
  if (k > train.sample_count()) {
    throw std::invalid_argument("k-NN k=" + std::to_string(k) + " exceeds training size " +
                                std::to_string(train.sample_count()));
  }

  const auto cols = mask.indices();
  if (cols.empty()) return std::nullopt;
  if (val.sample_count() == 0) return std::nullopt;

  const std::size_t n_train = train.sample_count();
  std::vector<std::pair<double, std::size_t>> dist(n_train);
  const std::size_t classes = std::max(train.class_count(), val.class_count());
  std::vector<std::size_t> votes(classes);
  const auto closer = [](const auto& a, const auto& b) { return a < b; };

  std::size_t correct = 0;
  for (std::size_t v = 0; v < val.sample_count(); ++v) {
    const auto query = val.row(v);
    for (std::size_t t = 0; t < n_train; ++t) {
      const auto ref = train.row(t);
      double sq = 0.0;
      for (std::size_t c : cols) {
        const double diff = query[c] - ref[c];
        sq += diff * diff;
      }
      // Squared distance orders neighbors exactly as Euclidean distance.
      dist[t] = {sq, t};
    }
    // (distance, row index) lexicographic order gives the stated tie-break.
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     dist.end(), closer);
    std::fill(votes.begin(), votes.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      ++votes[static_cast<std::size_t>(train.label(dist[i].second))];
    }
    // max_element returns the first maximum, i.e. the lower class index.
    const auto predicted =
        static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
    if (predicted == val.label(v)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(val.sample_count());
}

}  // namespace xorpso
