#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "asofs/dataset.hpp"
#include "asofs/errors.hpp"
#include "support/synthetic.hpp"

using namespace asofs;

namespace {

Dataset parse(const std::string& text, std::string_view label = {}) {
  std::istringstream in(text);
  return parse_csv(in, label, "t");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const DataError& e) {
    return e.what();
  }
  return {};
}

} // namespace

TEST_CASE("csv with header") {
  const auto ds = parse("a,b,label\n1,2,cat\n3,4.5,dog\n-1,0,cat\n");
  CHECK(ds.instance_count() == 3);
  CHECK(ds.feature_count == 2);
  CHECK(ds.feature_names == std::vector<std::string>{"a", "b"});
  CHECK(ds.labels == std::vector<int>{0, 1, 0});
  CHECK(ds.class_names == std::vector<std::string>{"cat", "dog"});
  CHECK(ds.at(1, 1) == 4.5);
}

TEST_CASE("csv without header, label selected by index or name") {
  const auto ds = parse("5,1,2\n6,3,4\n5,5,6\n", "0");
  CHECK(ds.feature_count == 2);
  CHECK(ds.feature_names.empty());
  CHECK(ds.labels == std::vector<int>{0, 1, 0});
  CHECK(ds.at(2, 0) == 5.0);

  const auto named = parse("y,x1\r\nA,1\r\nB,2\r\n", "y");
  CHECK(named.labels == std::vector<int>{0, 1});
  CHECK(named.feature_names == std::vector<std::string>{"x1"});
}

TEST_CASE("csv errors carry row numbers") {
  CHECK(error_of("") .find("empty") != std::string::npos);
  CHECK(error_of("1,2,a\n1,2\n").find("row 2") != std::string::npos);
  CHECK(error_of("a,b,c\n1,2,x\n1,zz,y\n").find("row 3") != std::string::npos);
  CHECK(error_of("1,2,a\n1,,b\n").find("row 2") != std::string::npos);
  CHECK(error_of("1,nan,a\n1,2,b\n").find("row 1") != std::string::npos);
  CHECK_THROWS_AS(parse("a,b\n1,x\n", "missing"), ConfigError);
}

TEST_CASE("bundled wine and zoo files") {
  const auto wine = load_csv(ASOFS_DATA_DIR "/wine.csv");
  CHECK(wine.instance_count() == 178);
  CHECK(wine.feature_count == 13);
  CHECK(wine.class_count() == 3);
  const auto zoo = load_csv(ASOFS_DATA_DIR "/zoo.csv", "type");
  CHECK(zoo.instance_count() == 101);
  CHECK(zoo.feature_count == 16);
  CHECK_THROWS_AS(load_csv(ASOFS_DATA_DIR "/missing.csv"), DataError);
}

TEST_CASE("stratified split sizes") {
  Dataset one = testing::blobs(10, 1, 2, 1);
  auto s = split(one, SplitSpec{0.8, true, 3});
  CHECK(s.train.instance_count() == 8);
  CHECK(s.test.instance_count() == 2);

  Dataset two = testing::blobs(5, 2, 2, 1);
  s = split(two, SplitSpec{0.8, true, 3});
  CHECK(s.train.instance_count() == 8);
  CHECK(s.test.instance_count() == 2);
  CHECK(std::count(s.test.labels.begin(), s.test.labels.end(), 0) == 1);

  Dataset tiny = testing::blobs(1, 2, 2, 1);
  CHECK_THROWS_AS(split(tiny, SplitSpec{}), DataError);
  CHECK_THROWS_AS(split(two, SplitSpec{1.0, true, 0}), ConfigError);
}

TEST_CASE("split is a seeded partition") {
  Rng gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ds = testing::blobs(2 + gen.index(20), 1 + gen.index(5), 3, gen.next());
    const SplitSpec spec{gen.uniform(0.1, 0.95), gen.bernoulli(0.7), gen.next()};
    const auto a = split(ds, spec);
    const auto b = split(ds, spec);
    CHECK(a.train_rows == b.train_rows);
    CHECK(a.train.features == b.train.features);

    std::set<std::size_t> all(a.train_rows.begin(), a.train_rows.end());
    for (auto r : a.test_rows) CHECK(all.insert(r).second);
    CHECK(all.size() == ds.instance_count());

    if (spec.stratified) {
      for (std::size_t c = 0; c < ds.class_count(); ++c) {
        const auto total = std::count(ds.labels.begin(), ds.labels.end(), int(c));
        const auto in_train = std::count(a.train.labels.begin(), a.train.labels.end(), int(c));
        CHECK(std::abs(double(in_train) - spec.train_fraction * double(total)) <= 1.0);
      }
    }
  }
}

TEST_CASE("min-max normalization from train statistics") {
  Dataset train;
  train.feature_count = 2;
  train.features = {2, 7, 4, 7, 6, 7};
  train.labels = {0, 0, 0};
  train.class_names = {"a"};
  Dataset test = train;
  test.features = {8, 1};
  test.labels = {0};

  const auto [tr, te] = normalize(train, test);
  CHECK(tr.features == std::vector<double>{0, 0, 0.5, 0, 1, 0});
  CHECK(te.features == std::vector<double>{1.5, 0});

  const auto ds = testing::blobs(10, 3, 4, 2);
  const auto parts = split(ds, SplitSpec{});
  const auto [ntr, nte] = normalize(parts.train, parts.test);
  for (double v : ntr.features) CHECK((v >= 0.0 && v <= 1.0));
}
