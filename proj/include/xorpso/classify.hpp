#pragma once

#include <optional>

#include "xorpso/data.hpp"
#include "xorpso/mask.hpp"

namespace xorpso {

enum class Metric { euclidean };

struct KnnConfig {
  int k = 5;
  Metric distance = Metric::euclidean;

  friend bool operator==(const KnnConfig&, const KnnConfig&) = default;
};

// Throws std::invalid_argument unless k is positive and odd.
void validate(const KnnConfig& config);

// Validation accuracy of a k-NN classifier fitted on split.train, using only
// the columns selected by mask.
//
// Neighbors are found by exact brute force. Distance ties go to the lower
// training row index and vote ties go to the lower class index, so the result
// is a pure function of the arguments.
//
// Returns nullopt when the mask selects nothing; the caller decides what an
// empty selection is worth. Throws std::invalid_argument on a mask/feature
// count mismatch or when k exceeds the training row count.
std::optional<double> knn_accuracy(const SplitDataset& split, const Mask& mask,
                                   const KnnConfig& config);

}  // namespace xorpso
