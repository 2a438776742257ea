#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "gbnl/error.hpp"
#include "gbnl/learn/cross_validate.hpp"
#include "gbnl/learn/gbdt.hpp"
#include "gbnl/learn/metrics.hpp"
#include "gbnl/learn/rng.hpp"
#include "gbnl/learn/standardize.hpp"

using namespace gbnl;
using namespace gbnl::learn;

namespace {

struct Synthetic {
  Matrix x;
  std::vector<double> y;
};

/// y = 2 x0 - x1 + 0.5 x2 over uniform features; extra columns are noise.
Synthetic linear_data(std::size_t n, std::size_t p, std::uint64_t seed) {
  Rng rng(seed);
  Synthetic s{Matrix(n, p), std::vector<double>(n)};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < p; ++c) s.x(r, c) = static_cast<double>(rng.below(1000)) / 100.0;
    s.y[r] = 2 * s.x(r, 0) - s.x(r, 1) + 0.5 * s.x(r, 2);
  }
  return s;
}

double population_std(std::span<const double> v) {
  const double m = shifted_mean(v);
  double acc = 0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

GbdtConfig small_config(std::size_t stages) {
  GbdtConfig c;
  c.n_estimators = stages;
  return c;
}

}  // namespace

TEST_CASE("unit conversion") {
  CHECK(std::abs(to_delta_g(11.0, LabelUnit::kPkd) - -14.996) < 1e-3);
  CHECK(std::abs(to_delta_g(11.0, "pkd") - -14.996) < 1e-3);
  CHECK(to_delta_g(-9.5, "dg_kcal_per_mol") == -9.5);
  CHECK_THROWS_AS(to_delta_g(1.0, "kd"), Error);
}

TEST_CASE("pearson and rmse hand cases") {
  std::vector<double> a{0, 1, 2}, b{0, 2, 4}, c{2, 1, 0};
  CHECK(*pearson(a, b) == doctest::Approx(1.0));
  CHECK(*pearson(a, c) == doctest::Approx(-1.0));
  CHECK(rmse(a, b) == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(rmse(a, a) == 0.0);
  std::vector<double> flat{3, 3, 3};
  CHECK_FALSE(pearson(a, flat).has_value());
  std::vector<double> shifted{10, 13, 16};
  CHECK(*pearson(a, shifted) == doctest::Approx(*pearson(a, b)));
  CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{1}), Error);
  CHECK_THROWS_AS(pearson(a, std::vector<double>{1, 2}), Error);
}

TEST_CASE("standardizer") {
  Matrix x(3, 3);
  const double v[3][3] = {{1, 5, 0}, {2, 5, 0}, {3, 5, 0}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) x(r, c) = v[r][c];
  auto s = standardize_fit(x);
  CHECK(s.means == std::vector<double>{2, 5, 0});
  CHECK(s.stds[0] == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(s.stds[1] == 0.0);
  auto z = s.apply(x);
  CHECK(z(0, 0) == doctest::Approx(-std::sqrt(1.5)));
  CHECK(z(1, 0) == 0.0);
  for (int r = 0; r < 3; ++r) {
    CHECK(z(r, 1) == 0.0);
    CHECK(z(r, 2) == 0.0);
  }
  CHECK(standardize_apply(x, s) == z);
  Matrix bad(1, 1, NAN);
  CHECK_THROWS_AS(standardize_fit(bad), Error);
}

TEST_CASE("config validation") {
  GbdtConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.features_per_split(3829) == 62);
  CHECK(c.features_per_split(4) == 2);
  CHECK(c.features_per_split(1) == 1);
  c.subsample = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = GbdtConfig{};
  c.learning_rate = -1;
  CHECK_THROWS_AS(c.validate(), Error);
  c = GbdtConfig{};
  c.max_features = 5;
  CHECK(parse_config(serialize(c)) == c);
  CHECK(parse_config(serialize(GbdtConfig{})) == GbdtConfig{});
}

TEST_CASE("constant target") {
  Matrix x(6, 2);
  for (std::size_t r = 0; r < 6; ++r) x(r, 0) = static_cast<double>(r);
  std::vector<double> y(6, -7.25);
  auto model = gbdt_train(x, y, small_config(50));
  for (double p : model.predict(x)) CHECK(p == -7.25);
}

TEST_CASE("noiseless synthetic overfit") {
  auto data = linear_data(50, 3, 5);
  auto model = gbdt_train(data.x, data.y, small_config(2000));
  CHECK(rmse(model.predict(data.x), data.y) < 0.05 * population_std(data.y));
}

TEST_CASE("staged training error is monotone without subsampling") {
  auto data = linear_data(40, 4, 9);
  GbdtConfig c = small_config(200);
  c.subsample = 1.0;
  c.max_features = 4;
  auto model = gbdt_train(data.x, data.y, c);
  auto mse = model.staged_mse(data.x, data.y);
  REQUIRE(mse.size() == 201);
  for (std::size_t k = 1; k < mse.size(); ++k) CHECK(mse[k] <= mse[k - 1] + 1e-12);
  for (const auto& tree : model.trees()) CHECK(tree.depth() <= c.max_depth);
}

TEST_CASE("determinism and seeds") {
  auto data = linear_data(60, 8, 11);
  auto c = small_config(100);
  auto a = gbdt_train(data.x, data.y, c);
  auto b = gbdt_train(data.x, data.y, c);
  CHECK(a == b);
  c.seed = 1;
  auto other = gbdt_train(data.x, data.y, c);
  CHECK_FALSE(other == a);
}

TEST_CASE("model file round-trips exactly") {
  auto data = linear_data(30, 5, 13);
  auto pipeline = train_pipeline(data.x, data.y, small_config(40), {"a", "b", "c", "d", "e"});
  const auto text = serialize(pipeline);
  auto back = parse_pipeline(text);
  CHECK(back == pipeline);
  CHECK(serialize(back) == text);
  CHECK(back.predict(data.x) == pipeline.predict(data.x));
  CHECK_THROWS_AS(parse_pipeline("{}"), Error);
}

TEST_CASE("invalid training input") {
  Matrix x(3, 1);
  CHECK_THROWS_AS(gbdt_train(x, std::vector<double>{1, 2}, small_config(3)), Error);
  try {
    gbdt_train(x, std::vector<double>{1, NAN, 2}, small_config(3));
    FAIL("expected numeric failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNumeric);
  }
}

TEST_CASE("folds partition the rows") {
  auto folds = assign_folds(23, 10, 4);
  REQUIRE(folds.size() == 10);
  std::set<std::size_t> all;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    CHECK(folds[f].size() == (f < 3 ? 3u : 2u));
    all.insert(folds[f].begin(), folds[f].end());
  }
  CHECK(all.size() == 23);
  CHECK(assign_folds(23, 10, 4) == folds);
  CHECK_FALSE(assign_folds(23, 10, 5) == folds);
  CHECK_THROWS_AS(assign_folds(5, 10, 0), Error);
  CHECK(default_seeds().size() == 20);
  CHECK(default_seeds().back() == 19);
}

TEST_CASE("perfect predictor gives R_p 1") {
  auto data = linear_data(30, 3, 17);
  FoldTrainer oracle = [&](const Matrix&, std::span<const double>, std::uint64_t) -> Predictor {
    return [&](const Matrix& rows) {
      std::vector<double> out;
      for (std::size_t r = 0; r < rows.rows(); ++r) out.push_back(2 * rows(r, 0) - rows(r, 1) + 0.5 * rows(r, 2));
      return out;
    };
  };
  CvOptions opt;
  opt.seeds = {0, 1, 2};
  auto report = cross_validate(data.x, data.y, opt, oracle);
  CHECK(report.pearson_r == doctest::Approx(1.0));
  CHECK(report.rmse == doctest::Approx(0.0));
  CHECK(report.per_seed.size() == 3);
}

TEST_CASE("no test row reaches its fold's training set") {
  const std::size_t n = 37;
  Matrix x(n, 1);
  std::vector<double> y(n);
  for (std::size_t r = 0; r < n; ++r) {
    x(r, 0) = static_cast<double>(r);
    y[r] = static_cast<double>((r * 7) % 5);
  }
  std::size_t overlaps = 0;
  FoldTrainer spy = [&](const Matrix& train, std::span<const double>, std::uint64_t) -> Predictor {
    std::set<double> seen(train.data().begin(), train.data().end());
    return [seen, &overlaps](const Matrix& rows) {
      for (double v : rows.data()) overlaps += seen.count(v);
      return std::vector<double>(rows.rows(), 0.0);
    };
  };
  CvOptions opt;
  opt.seeds = {3, 4};
  opt.jobs = 2;
  auto report = cross_validate(x, y, opt, spy);
  CHECK(overlaps == 0);
  for (const auto& s : report.per_seed) CHECK(std::isnan(s.pearson_r));
}

TEST_CASE("gbdt folds standardize on their own training rows") {
  auto data = linear_data(24, 3, 19);
  auto config = small_config(30);
  CvOptions opt;
  opt.n_folds = 4;
  opt.seeds = {7};
  auto report = cross_validate(data.x, data.y, opt, gbdt_trainer(config));
  const auto folds = assign_folds(24, 4, 7);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<std::size_t> train;
    for (std::size_t g = 0; g < folds.size(); ++g) {
      if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(train.begin(), train.end());
    std::vector<double> ty;
    for (auto r : train) ty.push_back(data.y[r]);
    auto fold_config = config;
    fold_config.seed = fold_seed(7, f);
    auto pipeline = train_pipeline(data.x.select_rows(train), ty, fold_config);
    auto pred = pipeline.predict(data.x.select_rows(folds[f]));
    for (std::size_t k = 0; k < folds[f].size(); ++k) {
      CHECK(report.per_seed[0].predictions[folds[f][k]] == pred[k]);
      CHECK(report.per_seed[0].fold_of_row[folds[f][k]] == f);
    }
  }
}
