#include "xorpso/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "xorpso/rng.hpp"

namespace xorpso {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_int(std::string_view text, long long& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

FeatureDataset::FeatureDataset(std::vector<double> values,
                               std::vector<int> labels,
                               std::size_t feature_count,
                               std::vector<std::string> feature_names)
    : values_(std::move(values)),
      labels_(std::move(labels)),
      feature_count_(feature_count),
      names_(std::move(feature_names)) {
  if (feature_count_ == 0) throw DataError("dataset needs at least one feature");
  if (labels_.empty()) throw DataError("dataset needs at least one sample");
  if (values_.size() != labels_.size() * feature_count_) {
    throw DataError("feature matrix has " + std::to_string(values_.size()) +
                    " values, expected " +
                    std::to_string(labels_.size() * feature_count_));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DataError("non-finite feature value at row " +
                      std::to_string(i / feature_count_) + ", column " +
                      std::to_string(i % feature_count_));
    }
  }
  int max_label = 0;
  for (int y : labels_) {
    if (y < 0) throw DataError("negative class label " + std::to_string(y));
    max_label = std::max(max_label, y);
  }
  class_count_ = static_cast<std::size_t>(max_label) + 1;
  if (names_.empty()) {
    names_.reserve(feature_count_);
    for (std::size_t c = 0; c < feature_count_; ++c) names_.push_back("f" + std::to_string(c));
  } else if (names_.size() != feature_count_) {
    throw DataError("feature name count does not match feature count");
  }
}

std::vector<double> FeatureDataset::column(std::size_t c) const {
  std::vector<double> out(sample_count());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = value(r, c);
  return out;
}

FeatureDataset FeatureDataset::select_rows(std::span<const std::size_t> rows) const {
  std::vector<double> values;
  values.reserve(rows.size() * feature_count_);
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (std::size_t r : rows) {
    const auto src = row(r);
    values.insert(values.end(), src.begin(), src.end());
    labels.push_back(labels_[r]);
  }
  return FeatureDataset(std::move(values), std::move(labels), feature_count_, names_);
}

FeatureDataset FeatureDataset::select_columns(std::span<const std::size_t> cols) const {
  std::vector<double> values;
  values.reserve(sample_count() * cols.size());
  for (std::size_t r = 0; r < sample_count(); ++r) {
    for (std::size_t c : cols) values.push_back(value(r, c));
  }
  std::vector<std::string> names;
  for (std::size_t c : cols) names.push_back(names_[c]);
  return FeatureDataset(std::move(values), labels_, cols.size(), std::move(names));
}

void check_source_invariants(const FeatureDataset& dataset) {
  if (dataset.sample_count() < 2) {
    throw DataError("dataset needs at least 2 samples, got " +
                    std::to_string(dataset.sample_count()));
  }
  std::vector<bool> seen(dataset.class_count(), false);
  for (int y : dataset.labels()) seen[static_cast<std::size_t>(y)] = true;
  for (std::size_t c = 0; c < seen.size(); ++c) {
    if (!seen[c]) {
      throw DataError("class " + std::to_string(c) +
                      " has no samples; labels must be 0..K-1 with every class present");
    }
  }
}

FeatureDataset load_dataset(const std::filesystem::path& path,
                            const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file '" + path.string() + "'");

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    for (auto f : split_fields(line)) header.emplace_back(f);
    break;
  }
  if (header.empty()) throw DataError("'" + path.string() + "' has no header row");

  std::size_t label_idx = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == label_column) {
      label_idx = i;
      break;
    }
  }
  if (label_idx == header.size()) {
    long long idx = 0;
    if (parse_int(label_column, idx) && idx >= 0 &&
        static_cast<std::size_t>(idx) < header.size()) {
      label_idx = static_cast<std::size_t>(idx);
    } else {
      throw DataError("label column '" + label_column + "' not found in '" +
                      path.string() + "'");
    }
  }
  if (header.size() < 2) throw DataError("'" + path.string() + "' has no feature columns");

  std::vector<std::string> names;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i != label_idx) names.push_back(header[i]);
  }

  std::vector<double> values;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto where = [&] {
        return "line " + std::to_string(line_no) + ", column " +
               std::to_string(i + 1) + " ('" + header[i] + "')";
      };
      if (i == label_idx) {
        long long y = 0;
        if (!parse_int(fields[i], y) || y < 0 || y > 1'000'000) {
          throw DataError(where() + ": label '" + std::string(fields[i]) +
                          "' is not a non-negative integer");
        }
        labels.push_back(static_cast<int>(y));
      } else {
        double v = 0.0;
        if (!parse_double(fields[i], v)) {
          throw DataError(where() + ": '" + std::string(fields[i]) + "' is not a number");
        }
        if (!std::isfinite(v)) throw DataError(where() + ": non-finite value");
        values.push_back(v);
      }
    }
  }
  if (labels.size() < 2) {
    throw DataError("'" + path.string() + "' has " + std::to_string(labels.size()) +
                    " samples; at least 2 required");
  }
  const std::size_t feature_count = names.size();
  FeatureDataset ds(std::move(values), std::move(labels), feature_count, std::move(names));
  check_source_invariants(ds);
  return ds;
}

void save_dataset(const FeatureDataset& dataset, const std::filesystem::path& path) {
  std::ostringstream out;
  for (const auto& name : dataset.feature_names()) out << name << ',';
  out << "label\n";
  for (std::size_t r = 0; r < dataset.sample_count(); ++r) {
    for (double v : dataset.row(r)) out << format_double(v) << ',';
    out << dataset.label(r) << '\n';
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError("cannot write '" + path.string() + "'");
  file << out.str();
  if (!file) throw DataError("write failed for '" + path.string() + "'");
}

SplitDataset stratified_split(const FeatureDataset& dataset,
                              double validation_fraction, std::uint64_t seed) {
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw DataError("validation fraction must lie in (0, 1), got " +
                    format_double(validation_fraction));
  }
  check_source_invariants(dataset);

  std::vector<std::vector<std::size_t>> by_class(dataset.class_count());
  for (std::size_t r = 0; r < dataset.sample_count(); ++r) {
    by_class[static_cast<std::size_t>(dataset.label(r))].push_back(r);
  }

  Rng rng(seed);
  std::vector<bool> to_validation(dataset.sample_count(), false);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& rows = by_class[c];
    if (rows.size() < 2) {
      throw DataError("class " + std::to_string(c) +
                      " has a single sample; stratified split needs at least 2");
    }
    // Fisher-Yates over this class only; classes are visited in index order.
    for (std::size_t i = rows.size() - 1; i > 0; --i) {
      std::swap(rows[i], rows[rng.index(i + 1)]);
    }
    const auto take = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(static_cast<double>(rows.size()) *
                                               validation_fraction)));
    for (std::size_t i = 0; i < take; ++i) to_validation[rows[i]] = true;
  }

  SplitDataset split;
  split.split_seed = seed;
  split.validation_fraction = validation_fraction;
  for (std::size_t r = 0; r < dataset.sample_count(); ++r) {
    (to_validation[r] ? split.validation_rows : split.train_rows).push_back(r);
  }
  split.train = dataset.select_rows(split.train_rows);
  split.validation = dataset.select_rows(split.validation_rows);
  return split;
}

SplitDataset standardize(const SplitDataset& split) {
  const auto& train = split.train;
  const std::size_t n = train.sample_count();
  const std::size_t d = train.feature_count();
  std::vector<double> mean(d, 0.0), scale(d, 1.0);
  for (std::size_t c = 0; c < d; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) sum += train.value(r, c);
    mean[c] = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double dev = train.value(r, c) - mean[c];
      ss += dev * dev;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n));
    if (sd > 0.0) scale[c] = sd;
  }
  const auto apply = [&](const FeatureDataset& ds) {
    std::vector<double> values(ds.values().begin(), ds.values().end());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::size_t c = i % d;
      values[i] = (values[i] - mean[c]) / scale[c];
    }
    return FeatureDataset(std::move(values),
                          std::vector<int>(ds.labels().begin(), ds.labels().end()), d,
                          ds.feature_names());
  };
  SplitDataset out = split;
  out.train = apply(split.train);
  out.validation = apply(split.validation);
  return out;
}

SyntheticDataset generate_synthetic(const SynthSpec& spec) {
  if (spec.n_samples < 4) throw DataError("synthetic dataset needs n_samples >= 4");
  if (spec.n_features < 1) throw DataError("synthetic dataset needs n_features >= 1");
  if (spec.n_informative < 1) throw DataError("synthetic dataset needs n_informative >= 1");
  if (spec.n_informative > spec.n_features) {
    throw DataError("n_informative (" + std::to_string(spec.n_informative) +
                    ") exceeds n_features (" + std::to_string(spec.n_features) + ")");
  }
  if (!(spec.class_separation > 0.0) || !std::isfinite(spec.class_separation)) {
    throw DataError("class_separation must be positive");
  }
  if (!(spec.noise_std >= 0.0) || !std::isfinite(spec.noise_std)) {
    throw DataError("noise_std must be non-negative");
  }

  Rng rng(spec.seed);

  // Partial Fisher-Yates picks the informative column positions.
  std::vector<std::size_t> columns(spec.n_features);
  for (std::size_t c = 0; c < columns.size(); ++c) columns[c] = c;
  for (std::size_t i = 0; i < spec.n_informative; ++i) {
    std::swap(columns[i], columns[i + rng.index(spec.n_features - i)]);
  }
  std::vector<std::size_t> informative(columns.begin(),
                                       columns.begin() + static_cast<std::ptrdiff_t>(spec.n_informative));
  std::sort(informative.begin(), informative.end());
  std::vector<bool> is_informative(spec.n_features, false);
  for (std::size_t c : informative) is_informative[c] = true;

  std::vector<double> values(spec.n_samples * spec.n_features);
  std::vector<int> labels(spec.n_samples);
  const double half = spec.class_separation / 2.0;
  for (std::size_t r = 0; r < spec.n_samples; ++r) {
    const int y = static_cast<int>(r % 2);
    labels[r] = y;
    const double mean = y == 1 ? half : -half;
    for (std::size_t c = 0; c < spec.n_features; ++c) {
      const double noise = spec.noise_std * rng.normal();
      values[r * spec.n_features + c] = is_informative[c] ? mean + noise : noise;
    }
  }

  SyntheticDataset out{
      FeatureDataset(std::move(values), std::move(labels), spec.n_features),
      SynthProvenance{spec, std::move(informative)}};
  return out;
}

void save_provenance(const SynthProvenance& provenance,
                     const std::filesystem::path& path) {
  const auto& s = provenance.spec;
  nlohmann::json j = {
      {"spec",
       {{"n_samples", s.n_samples},
        {"n_features", s.n_features},
        {"n_informative", s.n_informative},
        {"class_separation", s.class_separation},
        {"noise_std", s.noise_std},
        {"seed", s.seed}}},
      {"informative", provenance.informative},
  };
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw DataError("cannot write '" + path.string() + "'");
  file << j.dump(2) << '\n';
}

SynthProvenance load_provenance(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw DataError("cannot open provenance file '" + path.string() + "'");
  try {
    const auto j = nlohmann::json::parse(file);
    SynthProvenance p;
    const auto& s = j.at("spec");
    p.spec.n_samples = s.at("n_samples").get<std::size_t>();
    p.spec.n_features = s.at("n_features").get<std::size_t>();
    p.spec.n_informative = s.at("n_informative").get<std::size_t>();
    p.spec.class_separation = s.at("class_separation").get<double>();
    p.spec.noise_std = s.at("noise_std").get<double>();
    p.spec.seed = s.at("seed").get<std::uint64_t>();
    p.informative = j.at("informative").get<std::vector<std::size_t>>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed provenance file '" + path.string() + "': " + e.what());
  }
}

}  // namespace xorpso
