#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xorpso {

// Raised for malformed input data: unreadable files, bad cells, broken
// dataset invariants. Messages are meant for end users.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Labeled real-valued feature matrix, stored row-major.
//
// The constructor enforces the structural invariants (shape, finite values,
// non-negative labels). Source-level invariants that only make sense for a
// whole dataset (at least two samples, no empty class) are checked by
// check_source_invariants(), which the loaders and the splitter call.
class FeatureDataset {
 public:
  FeatureDataset() = default;
  FeatureDataset(std::vector<double> values, std::vector<int> labels,
                 std::size_t feature_count,
                 std::vector<std::string> feature_names = {});

  std::size_t sample_count() const { return labels_.size(); }
  std::size_t feature_count() const { return feature_count_; }

  // max(label) + 1.
  std::size_t class_count() const { return class_count_; }

  double value(std::size_t row, std::size_t col) const {
    return values_[row * feature_count_ + col];
  }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * feature_count_, feature_count_};
  }
  std::vector<double> column(std::size_t c) const;

  std::span<const double> values() const { return values_; }
  std::span<const int> labels() const { return labels_; }
  int label(std::size_t r) const { return labels_[r]; }
  const std::vector<std::string>& feature_names() const { return names_; }

  // Rows in the given order, all columns.
  FeatureDataset select_rows(std::span<const std::size_t> rows) const;
  // Columns in the given order, all rows.
  FeatureDataset select_columns(std::span<const std::size_t> cols) const;

  friend bool operator==(const FeatureDataset&, const FeatureDataset&) = default;

 private:
  std::vector<double> values_;
  std::vector<int> labels_;
  std::size_t feature_count_ = 0;
  std::size_t class_count_ = 0;
  std::vector<std::string> names_;
};

// sample_count >= 2 and every class index in [0, class_count) present.
void check_source_invariants(const FeatureDataset& dataset);

struct SplitDataset {
  FeatureDataset train;
  FeatureDataset validation;
  std::uint64_t split_seed = 0;
  double validation_fraction = 0.0;
  // Source row index of every train / validation row, ascending.
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> validation_rows;
};

struct SynthSpec {
  std::size_t n_samples = 400;
  std::size_t n_features = 64;
  std::size_t n_informative = 8;
  double class_separation = 2.0;
  double noise_std = 1.0;
  std::uint64_t seed = 0;

  friend bool operator==(const SynthSpec&, const SynthSpec&) = default;
};

// Ground truth needed to score recovery on generated data.
struct SynthProvenance {
  SynthSpec spec;
  std::vector<std::size_t> informative;  // ascending column indices
};

struct SyntheticDataset {
  FeatureDataset data;
  SynthProvenance provenance;
};

// Reads a comma-separated table with a header row. label_column is a header
// name; if no header matches and it is a plain integer, it is taken as a
// zero-based column index.
FeatureDataset load_dataset(const std::filesystem::path& path,
                            const std::string& label_column = "label");

// Writes features then a trailing `label` column. Values use the shortest
// representation that reads back bit-exact.
void save_dataset(const FeatureDataset& dataset,
                  const std::filesystem::path& path);

// Per class: max(1, floor(count * validation_fraction)) rows go to
// validation, chosen by a seeded shuffle of that class's rows. Both
// partitions keep source row order.
SplitDataset stratified_split(const FeatureDataset& dataset,
                              double validation_fraction, std::uint64_t seed);

// Z-scores every column with train mean / standard deviation and applies the
// same transform to validation. Columns that are constant on train are only
// centered.
SplitDataset standardize(const SplitDataset& split);

// Two balanced classes. Informative columns are N(+-separation/2, noise_std)
// by class; the rest are N(0, noise_std) regardless of class. Informative
// column positions are drawn from the seed.
SyntheticDataset generate_synthetic(const SynthSpec& spec);

// Sidecar JSON describing a synthetic dataset (spec + informative indices).
void save_provenance(const SynthProvenance& provenance,
                     const std::filesystem::path& path);
SynthProvenance load_provenance(const std::filesystem::path& path);

}  // namespace xorpso
