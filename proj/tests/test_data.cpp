#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "test_support.hpp"
#include "xorpso/classify.hpp"
#include "xorpso/data.hpp"

using namespace xorpso;
using xorpso::testing::TempDir;
using xorpso::testing::write_text;

TEST_CASE("load_dataset parses a small table") {
  TempDir dir("load");
  write_text(dir / "d.csv", "f0,f1,label\n1.5,2,0\n-3,4e-1,1\n5,6,1\n");
  const auto ds = load_dataset(dir / "d.csv", "label");
  CHECK(ds.sample_count() == 3);
  CHECK(ds.feature_count() == 2);
  CHECK(ds.class_count() == 2);
  CHECK(ds.feature_names() == std::vector<std::string>{"f0", "f1"});
  CHECK(ds.value(0, 0) == 1.5);
  CHECK(ds.value(1, 1) == 0.4);
  CHECK(ds.label(1) == 1);
}

TEST_CASE("load_dataset removes a middle label column and keeps column order") {
  TempDir dir("order");
  write_text(dir / "d.csv", "a,y,b\n1,0,10\n2,1,20\n");
  const auto ds = load_dataset(dir / "d.csv", "y");
  CHECK(ds.feature_names() == std::vector<std::string>{"a", "b"});
  CHECK(ds.value(1, 0) == 2.0);
  CHECK(ds.value(1, 1) == 20.0);

  // Numeric selector falls back to a column index.
  const auto by_index = load_dataset(dir / "d.csv", "1");
  CHECK(by_index == ds);
}

TEST_CASE("load_dataset error paths") {
  TempDir dir("errors");

  SUBCASE("non-numeric cell names line and column") {
    write_text(dir / "d.csv", "f0,f1,label\n1,2,0\n3,abc,1\n");
    try {
      load_dataset(dir / "d.csv");
      FAIL("expected DataError");
    } catch (const DataError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("line 3") != std::string::npos);
      CHECK(msg.find("column 2") != std::string::npos);
      CHECK(msg.find("abc") != std::string::npos);
    }
  }
  SUBCASE("missing file names the path") {
    const auto p = dir / "nope.csv";
    try {
      load_dataset(p);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find(p.string()) != std::string::npos);
    }
  }
  SUBCASE("label column absent") {
    write_text(dir / "d.csv", "f0,f1\n1,2\n3,4\n");
    CHECK_THROWS_AS(load_dataset(dir / "d.csv", "label"), DataError);
  }
  SUBCASE("fewer than two samples") {
    write_text(dir / "d.csv", "f0,label\n1,0\n");
    CHECK_THROWS_AS(load_dataset(dir / "d.csv"), DataError);
  }
  SUBCASE("NaN feature") {
    write_text(dir / "d.csv", "f0,label\n1,0\nnan,1\n");
    CHECK_THROWS_AS(load_dataset(dir / "d.csv"), DataError);
  }
  SUBCASE("fractional label") {
    write_text(dir / "d.csv", "f0,label\n1,0\n2,1.5\n");
    CHECK_THROWS_AS(load_dataset(dir / "d.csv"), DataError);
  }
  SUBCASE("empty class") {
    write_text(dir / "d.csv", "f0,label\n1,0\n2,2\n");
    CHECK_THROWS_AS(load_dataset(dir / "d.csv"), DataError);
  }
  SUBCASE("ragged row") {
    write_text(dir / "d.csv", "f0,f1,label\n1,2,0\n3,1\n");
    CHECK_THROWS_AS(load_dataset(dir / "d.csv"), DataError);
  }
}

TEST_CASE("save then load reproduces values bit-exactly") {
  TempDir dir("roundtrip");
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_real_distribution<double> wide(-1e6, 1e6);
    std::uniform_real_distribution<double> tiny(-1e-300, 1e-300);
    std::vector<double> values(7 * 5);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = (i % 3 == 0) ? tiny(gen) : wide(gen);
    std::vector<int> labels{0, 1, 2, 0, 1, 2, 0};
    const FeatureDataset ds(values, labels, 5);
    save_dataset(ds, dir / "rt.csv");
    CHECK(load_dataset(dir / "rt.csv") == ds);
  }
}

TEST_CASE("stratified_split sizes per class") {
  std::vector<double> values(100);
  std::vector<int> labels(100);
  for (int i = 0; i < 100; ++i) {
    values[static_cast<std::size_t>(i)] = i;
    labels[static_cast<std::size_t>(i)] = i < 50 ? 0 : 1;
  }
  const FeatureDataset ds(values, labels, 1);
  const auto split = stratified_split(ds, 0.2, 11);
  REQUIRE(split.validation.sample_count() == 20);
  int zeros = 0;
  for (int y : split.validation.labels()) zeros += y == 0;
  CHECK(zeros == 10);
  CHECK(split.train.sample_count() == 80);

  const auto again = stratified_split(ds, 0.2, 11);
  CHECK(again.train_rows == split.train_rows);
  CHECK(again.validation_rows == split.validation_rows);
  CHECK(again.train == split.train);

  const auto other = stratified_split(ds, 0.2, 12);
  CHECK(other.validation_rows != split.validation_rows);
}

TEST_CASE("stratified_split keeps at least one validation row per class") {
  const auto ds = xorpso::testing::make_dataset({{0}, {1}, {2}, {3}}, {0, 0, 1, 1});
  const auto split = stratified_split(ds, 0.1, 1);
  CHECK(split.validation.sample_count() == 2);
  CHECK(split.train.sample_count() == 2);
}

TEST_CASE("stratified_split errors") {
  const auto ds = xorpso::testing::make_dataset({{0}, {1}, {2}}, {0, 0, 1});
  CHECK_THROWS_AS(stratified_split(ds, 0.2, 1), DataError);  // class 1 has one row
  const auto ok = xorpso::testing::make_dataset({{0}, {1}, {2}, {3}}, {0, 0, 1, 1});
  CHECK_THROWS_AS(stratified_split(ok, 0.0, 1), DataError);
  CHECK_THROWS_AS(stratified_split(ok, 1.0, 1), DataError);
  CHECK_THROWS_AS(stratified_split(ok, -0.5, 1), DataError);
}

TEST_CASE("stratified_split partitions the source (property)") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 8 + gen() % 60;
    const int classes = 2 + static_cast<int>(gen() % 3);
    const auto ds = xorpso::testing::random_dataset(gen, rows, 3, classes);
    const double fraction = 0.05 + 0.9 * std::uniform_real_distribution<double>()(gen);
    const auto split = stratified_split(ds, fraction, gen());

    CHECK(split.train.sample_count() + split.validation.sample_count() == rows);
    std::set<std::size_t> all(split.train_rows.begin(), split.train_rows.end());
    for (auto r : split.validation_rows) CHECK(all.insert(r).second);
    CHECK(all.size() == rows);

    std::multiset<int> source(ds.labels().begin(), ds.labels().end());
    std::multiset<int> joined(split.train.labels().begin(), split.train.labels().end());
    joined.insert(split.validation.labels().begin(), split.validation.labels().end());
    CHECK(source == joined);

    for (int c = 0; c < classes; ++c) {
      const auto in = [c](std::span<const int> l) { return std::count(l.begin(), l.end(), c); };
      const auto total = in(ds.labels());
      const auto expected = std::max<long>(1, static_cast<long>(std::floor(static_cast<double>(total) * fraction)));
      CHECK(in(split.validation.labels()) == expected);
      CHECK(in(split.train.labels()) >= 1);
    }
    for (std::size_t i = 0; i < split.train_rows.size(); ++i) {
      CHECK(split.train.label(i) == ds.label(split.train_rows[i]));
    }
  }
}

TEST_CASE("standardize uses train statistics") {
  const auto train = xorpso::testing::make_dataset({{1, 5}, {3, 5}, {5, 5}}, {0, 1, 0});
  const auto val = xorpso::testing::make_dataset({{3, 7}}, {1});
  const auto s = standardize(xorpso::testing::make_split(train, val));
  double mean = 0, sq = 0;
  for (std::size_t r = 0; r < 3; ++r) mean += s.train.value(r, 0);
  for (std::size_t r = 0; r < 3; ++r) sq += s.train.value(r, 0) * s.train.value(r, 0);
  CHECK(mean == doctest::Approx(0.0));
  CHECK(sq / 3 == doctest::Approx(1.0));
  CHECK(s.validation.value(0, 0) == doctest::Approx(0.0));
  // Constant on train: centered, not scaled.
  CHECK(s.train.value(0, 1) == 0.0);
  CHECK(s.validation.value(0, 1) == 2.0);
}

TEST_CASE("generate_synthetic is a pure function of its spec") {
  SynthSpec spec{120, 16, 4, 2.0, 1.0, 5};
  const auto a = generate_synthetic(spec);
  const auto b = generate_synthetic(spec);
  CHECK(a.data == b.data);
  CHECK(a.provenance.informative == b.provenance.informative);

  TempDir dir("synth");
  save_dataset(a.data, dir / "a.csv");
  save_dataset(b.data, dir / "b.csv");
  CHECK(xorpso::testing::read_text(dir / "a.csv") == xorpso::testing::read_text(dir / "b.csv"));

  spec.seed = 6;
  CHECK_FALSE(generate_synthetic(spec).data == a.data);
}

TEST_CASE("generate_synthetic layout") {
  const auto s = generate_synthetic({200, 10, 3, 2.0, 1.0, 1});
  CHECK(s.data.sample_count() == 200);
  CHECK(s.data.feature_count() == 10);
  CHECK(s.data.class_count() == 2);
  CHECK(s.provenance.informative.size() == 3);
  CHECK(std::is_sorted(s.provenance.informative.begin(), s.provenance.informative.end()));
  int ones = 0;
  for (int y : s.data.labels()) ones += y;
  CHECK(ones == 100);
}

TEST_CASE("generate_synthetic with every column informative") {
  const SynthSpec spec{40, 5, 5, 3.0, 0.0, 2};
  const auto s = generate_synthetic(spec);
  CHECK(s.provenance.informative == std::vector<std::size_t>{0, 1, 2, 3, 4});
  for (std::size_t r = 0; r < s.data.sample_count(); ++r) {
    for (std::size_t c = 0; c < 5; ++c) {
      CHECK(s.data.value(r, c) == (s.data.label(r) == 1 ? 1.5 : -1.5));
    }
  }
}

TEST_CASE("noise-free informative columns are perfectly separable") {
  const auto s = generate_synthetic({100, 12, 3, 0.5, 0.0, 9});
  const auto split = stratified_split(s.data, 0.3, 4);
  const auto mask = Mask::from_indices(12, s.provenance.informative);
  const auto acc = knn_accuracy(split, mask, KnnConfig{1});
  REQUIRE(acc);
  CHECK(*acc == 1.0);
}

TEST_CASE("informative columns carry the signal") {
  const auto s = generate_synthetic({400, 64, 8, 2.0, 1.0, 7});
  const auto split = standardize(stratified_split(s.data, 0.2, 7));
  std::vector<std::size_t> noise;
  std::set<std::size_t> inf(s.provenance.informative.begin(), s.provenance.informative.end());
  for (std::size_t c = 0; c < 64; ++c) {
    if (!inf.count(c)) noise.push_back(c);
  }
  const double full = *knn_accuracy(split, Mask::ones(64), KnnConfig{5});
  const double noise_only = *knn_accuracy(split, Mask::from_indices(64, noise), KnnConfig{5});
  const double informative_only =
      *knn_accuracy(split, Mask::from_indices(64, s.provenance.informative), KnnConfig{5});
  CHECK(full > noise_only);
  CHECK(informative_only > full);
}

TEST_CASE("generate_synthetic errors") {
  CHECK_THROWS_AS(generate_synthetic({100, 4, 5, 2.0, 1.0, 0}), DataError);
  CHECK_THROWS_AS(generate_synthetic({3, 4, 2, 2.0, 1.0, 0}), DataError);
  CHECK_THROWS_AS(generate_synthetic({100, 4, 2, 0.0, 1.0, 0}), DataError);
  CHECK_THROWS_AS(generate_synthetic({100, 4, 2, 1.0, -1.0, 0}), DataError);
}

TEST_CASE("provenance sidecar round trip") {
  TempDir dir("prov");
  const auto s = generate_synthetic({50, 9, 2, 1.25, 0.5, 123});
  save_provenance(s.provenance, dir / "p.json");
  const auto back = load_provenance(dir / "p.json");
  CHECK(back.spec == s.provenance.spec);
  CHECK(back.informative == s.provenance.informative);
}

TEST_CASE("FeatureDataset rejects malformed input") {
  CHECK_THROWS_AS(FeatureDataset({1.0, 2.0, 3.0}, {0, 1}, 2), DataError);
  CHECK_THROWS_AS(FeatureDataset({1.0, INFINITY}, {0, 1}, 1), DataError);
  CHECK_THROWS_AS(FeatureDataset({1.0, 2.0}, {0, -1}, 1), DataError);
  CHECK_THROWS_AS(FeatureDataset({}, {}, 1), DataError);
}
