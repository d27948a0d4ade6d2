#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "lolpred/error.hpp"
#include "lolpred/forest.hpp"
#include "lolpred/logistic.hpp"
#include "lolpred/model.hpp"
#include "lolpred/naive_bayes.hpp"
#include "lolpred/rng.hpp"
#include "lolpred/tree.hpp"
#include "test_util.hpp"

using namespace lolpred;
using namespace testutil;

namespace {

// Central-difference gradient of the logistic loss, the oracle for the
// analytic gradient.
Eigen::VectorXd numeric_gradient(const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& wb, double l2) {
  const double h = 1e-6;
  Eigen::VectorXd g(wb.size());
  for (Eigen::Index j = 0; j < wb.size(); ++j) {
    Eigen::VectorXd hi = wb, lo = wb;
    hi(j) += h;
    lo(j) -= h;
    g(j) = (logistic_loss_and_gradient(X, y, hi, l2).first -
            logistic_loss_and_gradient(X, y, lo, l2).first) /
           (2 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("logistic gradient matches finite differences") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rng = make_rng(seed, 0xabc);
    const Eigen::MatrixXd X = random_features(rng, 24, 6);
    const Eigen::VectorXd y = noisy_labels(rng, X);
    std::normal_distribution<double> gauss(0.0, 0.8);
    Eigen::VectorXd wb(7);
    for (Eigen::Index j = 0; j < wb.size(); ++j) wb(j) = gauss(rng);
    for (double l2 : {0.0, 0.1}) {
      const Eigen::VectorXd analytic =
          logistic_loss_and_gradient(X, y, wb, l2).second;
      const Eigen::VectorXd numeric = numeric_gradient(X, y, wb, l2);
      const double rel = (analytic - numeric).norm() /
                         std::max(1e-12, numeric.norm());
      CAPTURE(seed);
      CAPTURE(l2);
      CHECK(rel < 1e-4);
    }
  }
}

TEST_CASE("l2 penalty excludes the bias") {
  auto rng = make_rng(3, 0xabc);
  const Eigen::MatrixXd X = random_features(rng, 16, 4);
  const Eigen::VectorXd y = noisy_labels(rng, X);
  Eigen::VectorXd wb = Eigen::VectorXd::Zero(5);
  wb(4) = 2.0;  // bias only; weights zero
  const auto [loss0, g0] = logistic_loss_and_gradient(X, y, wb, 0.0);
  const auto [loss1, g1] = logistic_loss_and_gradient(X, y, wb, 10.0);
  CHECK(loss0 == doctest::Approx(loss1));  // no weight norm to penalize
  CHECK(g0(4) == doctest::Approx(g1(4)));
}

TEST_CASE("zero training epochs predict exactly one half") {
  auto rng = make_rng(4, 0xabc);
  const Eigen::MatrixXd X = random_features(rng, 30, 5);
  const Eigen::VectorXd y = noisy_labels(rng, X);
  LogisticParams p;
  p.epochs = 0;
  const auto m = fit_logistic(p, X, y);
  m->set_schema(gen_schema(X.cols()));
  const Eigen::VectorXd proba = m->predict_proba(X);
  for (Eigen::Index i = 0; i < proba.size(); ++i)
    CHECK(proba(i) == doctest::Approx(0.5));
}

TEST_CASE("logistic separates a linearly separable problem") {
  Eigen::MatrixXd X(40, 2);
  Eigen::VectorXd y(40);
  auto rng = make_rng(5, 0xabc);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const bool pos = i % 2 == 0;
    X(i, 0) = unit(rng) + (pos ? 2.0 : -2.0);
    X(i, 1) = unit(rng);
    y(i) = pos ? 1.0 : 0.0;
  }
  LogisticParams p;
  p.epochs = 2000;
  p.lr = 0.5;
  p.l2_lambda = 0.0;
  const auto m = fit_logistic(p, X, y);
  m->set_schema(gen_schema(X.cols()));
  const Eigen::VectorXd proba = m->predict_proba(X);
  for (int i = 0; i < 40; ++i) CHECK((proba(i) > 0.5) == (y(i) > 0.5));
}

TEST_CASE("naive Bayes closed-form moments and midpoint behavior") {
  // Two unit-variance classes at ±2 on one feature; symmetric priors.
  Eigen::MatrixXd X(200, 1);
  Eigen::VectorXd y(200);
  auto rng = make_rng(6, 0xabc);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 200; ++i) {
    const bool pos = i % 2 == 0;
    X(i, 0) = gauss(rng) + (pos ? 2.0 : -2.0);
    y(i) = pos ? 1.0 : 0.0;
  }
  const auto m = fit_naive_bayes(X, y);
  m->set_schema(gen_schema(X.cols()));

  // Oracle: per-class sample mean / population variance.
  double sum_p = 0, sum_n = 0;
  int cnt_p = 0, cnt_n = 0;
  for (int i = 0; i < 200; ++i) {
    if (y(i) > 0.5) {
      sum_p += X(i, 0);
      ++cnt_p;
    } else {
      sum_n += X(i, 0);
      ++cnt_n;
    }
  }
  const double mean_p = sum_p / cnt_p, mean_n = sum_n / cnt_n;
  double ss_p = 0, ss_n = 0;
  for (int i = 0; i < 200; ++i) {
    if (y(i) > 0.5)
      ss_p += (X(i, 0) - mean_p) * (X(i, 0) - mean_p);
    else
      ss_n += (X(i, 0) - mean_n) * (X(i, 0) - mean_n);
  }
  CHECK(m->mean_pos(0) == doctest::Approx(mean_p).epsilon(1e-12));
  CHECK(m->mean_neg(0) == doctest::Approx(mean_n).epsilon(1e-12));
  // Variances carry smoothing, so compare with a tolerance above it.
  CHECK(m->var_pos(0) == doctest::Approx(ss_p / cnt_p).epsilon(1e-3));
  CHECK(m->var_neg(0) == doctest::Approx(ss_n / cnt_n).epsilon(1e-3));
  CHECK(m->log_prior_pos == doctest::Approx(std::log(0.5)));

  // At the midpoint of the two class means the posterior is near one half.
  Eigen::MatrixXd mid(1, 1);
  mid(0, 0) = (mean_p + mean_n) / 2.0;
  const double p_mid = m->predict_proba(mid)(0);
  CHECK(p_mid > 0.45);
  CHECK(p_mid < 0.55);
  // Deep in each class the posterior saturates the right way.
  mid(0, 0) = 4.0;
  CHECK(m->predict_proba(mid)(0) > 0.95);
  mid(0, 0) = -4.0;
  CHECK(m->predict_proba(mid)(0) < 0.05);
}

TEST_CASE("CART memorizes training data with unlimited depth") {
  auto rng = make_rng(7, 0xabc);
  const Eigen::MatrixXd X = random_features(rng, 60, 5);
  const Eigen::VectorXd y = noisy_labels(rng, X);
  CartParams p;
  p.max_depth = 64;
  p.min_samples_leaf = 1;
  const auto m = fit_cart(p, X, y);
  m->set_schema(gen_schema(X.cols()));
  const Eigen::VectorXd proba = m->predict_proba(X);
  for (int i = 0; i < 60; ++i) {
    CAPTURE(i);
    CHECK((proba(i) > 0.5) == (y(i) > 0.5));
  }
}

TEST_CASE("CART split ties break toward the lowest feature index") {
  // Two identical columns perfectly separating y: the split must use col 0.
  Eigen::MatrixXd X(8, 2);
  Eigen::VectorXd y(8);
  for (int i = 0; i < 8; ++i) {
    X(i, 0) = i < 4 ? 0.0 : 1.0;
    X(i, 1) = X(i, 0);
    y(i) = X(i, 0);
  }
  CartParams p;
  p.min_samples_leaf = 1;
  const Tree tree = build_cart(X, y, FeatureTable::all_rows(8), p, 0, nullptr,
                               nullptr);
  REQUIRE(!tree.empty());
  CHECK(tree.nodes[0].feature == 0);
}

TEST_CASE("min_samples_leaf=n forces a single leaf") {
  auto rng = make_rng(8, 0xabc);
  const Eigen::MatrixXd X = random_features(rng, 20, 3);
  const Eigen::VectorXd y = noisy_labels(rng, X);
  CartParams p;
  p.min_samples_leaf = 20;
  const auto m = fit_cart(p, X, y);
  REQUIRE(m->tree.nodes.size() == 1);
  CHECK(m->tree.nodes[0].feature == -1);
  CHECK(m->tree.nodes[0].value == doctest::Approx(y.mean()));
}

TEST_CASE("bagging equals a random forest without feature subsampling") {
  auto rng = make_rng(9, 0xabc);
  const Eigen::MatrixXd X = random_features(rng, 80, 6);
  const Eigen::VectorXd y = noisy_labels(rng, X);
  ForestParams p;
  p.n_trees = 12;
  p.max_depth = 6;
  p.feature_subsample = FeatureSubsample::None;
  const auto bag = fit_forest(p, Family::Bagging, 42, X, y);
  const auto rf_none = fit_forest(p, Family::RandomForest, 42, X, y);
  bag->set_schema(gen_schema(X.cols()));
  rf_none->set_schema(gen_schema(X.cols()));
  CHECK(bag->family() == Family::Bagging);
  CHECK(rf_none->family() == Family::RandomForest);
  const Eigen::VectorXd pa = bag->predict_proba(X);
  const Eigen::VectorXd pb = rf_none->predict_proba(X);
  CHECK(pa == pb);  // bit-for-bit

  // Sqrt subsampling changes the ensemble.
  p.feature_subsample = FeatureSubsample::Sqrt;
  const auto rf = fit_forest(p, Family::RandomForest, 42, X, y);
  rf->set_schema(gen_schema(X.cols()));
  CHECK(rf->predict_proba(X) != pa);
}

TEST_CASE("refitting with the same seed is bit-identical") {
  const FeatureTable table = synth_table(51, 30);
  const auto rows = FeatureTable::all_rows(table.rows());
  for (const char* preset : {"logistic", "nb", "cart", "rf", "gb", "mlp"}) {
    CAPTURE(preset);
    const LearnerSpec spec = LearnerSpec::preset(preset, 77);
    const auto a = fit(spec, table, rows);
    const auto b = fit(spec, table, rows);
    const Eigen::VectorXd pa = a->predict_proba(table.inputs);
    const Eigen::VectorXd pb = b->predict_proba(table.inputs);
    CHECK(pa == pb);
  }
}

TEST_CASE("tree-family importances are normalized; others are unsupported") {
  const FeatureTable table = synth_table(52, 30);
  const auto rows = FeatureTable::all_rows(table.rows());
  for (const char* preset : {"cart", "rf", "bagging", "gb"}) {
    CAPTURE(preset);
    const auto m = fit(LearnerSpec::preset(preset, 1), table, rows);
    const auto imp = m->feature_importance();
    REQUIRE(!imp.empty());
    double total = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& [name, value] : imp) {
      CHECK(value >= 0.0);
      CHECK(value <= prev);
      prev = value;
      total += value;
    }
    CHECK(total == doctest::Approx(1.0));
  }
  const auto logit = fit(LearnerSpec::preset("logistic", 1), table, rows);
  CHECK_THROWS_AS(logit->feature_importance(), Error);
}

TEST_CASE("single-class training sets are rejected where priors matter") {
  const FeatureTable table = synth_table(53, 20);
  // Keep only blue-win rows.
  std::vector<int> pos_rows;
  for (Eigen::Index i = 0; i < table.rows(); ++i)
    if (table.labels(i) > 0.5) pos_rows.push_back(static_cast<int>(i));
  REQUIRE(pos_rows.size() >= 4);
  for (const char* preset : {"logistic", "nb", "mlp"}) {
    CAPTURE(preset);
    try {
      fit(LearnerSpec::preset(preset, 0), table, pos_rows);
      FAIL_CHECK("expected SINGLE_CLASS");
    } catch (const Error& e) {
      CHECK(e.code() == errc::single_class);
    }
  }
  // Trees and boosting tolerate constant labels.
  for (const char* preset : {"cart", "gb"}) {
    CAPTURE(preset);
    const auto m = fit(LearnerSpec::preset(preset, 0), table, pos_rows);
    const double p = m->predict_proba(table.inputs)(pos_rows[0]);
    CHECK(p > 0.9);
  }
}

TEST_CASE("non-finite features are rejected") {
  FeatureTable table = synth_table(54, 10);
  table.inputs(3, 5) = std::numeric_limits<double>::quiet_NaN();
  try {
    fit(LearnerSpec::preset("logistic", 0), table,
        FeatureTable::all_rows(table.rows()));
    FAIL("expected NONFINITE_FEATURE");
  } catch (const Error& e) {
    CHECK(e.code() == errc::nonfinite_feature);
  }
}

TEST_CASE("model files round-trip predictions bit-identically") {
  const FeatureTable table = synth_table(55, 25);
  const auto rows = FeatureTable::all_rows(table.rows());
  TempDir dir("models");
  for (const char* preset :
       {"logistic", "nb", "cart", "bagging", "rf", "gb", "xgb-style",
        "lgbm-style", "mlp"}) {
    CAPTURE(preset);
    const auto m = fit(LearnerSpec::preset(preset, 9), table, rows);
    const auto path = dir.path() / (std::string(preset) + ".json");
    save_model(*m, path);
    const auto back = load_model(path);
    CHECK(back->family() == m->family());
    CHECK(back->schema() == m->schema());
    const Eigen::VectorXd pa = m->predict_proba(table.inputs);
    const Eigen::VectorXd pb = back->predict_proba(table.inputs);
    CHECK(pa == pb);
    // Serialization is canonical: dumping the loaded model reproduces the file.
    CHECK(model_to_json(*back) == model_to_json(*m));
  }
}

TEST_CASE("model file version and structure guards") {
  const FeatureTable table = synth_table(56, 10);
  const auto m =
      fit(LearnerSpec::preset("logistic", 2), table,
          FeatureTable::all_rows(table.rows()));
  const std::string text = model_to_json(*m);

  SUBCASE("future format version") {
    std::string future = text;
    const auto pos = future.find("\"format_version\": 1");
    REQUIRE(pos != std::string::npos);
    future.replace(pos, 19, "\"format_version\": 2");
    try {
      model_from_json(future);
      FAIL_CHECK("expected VERSION_UNSUPPORTED");
    } catch (const Error& e) {
      CHECK(e.code() == errc::version_unsupported);
    }
  }

  SUBCASE("truncated file") {
    try {
      model_from_json(text.substr(0, text.size() / 2));
      FAIL_CHECK("expected CORRUPT");
    } catch (const Error& e) {
      CHECK(e.code() == errc::corrupt);
    }
  }

  SUBCASE("unknown family") {
    std::string bad = text;
    const auto pos = bad.find("\"logistic\"");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 10, "\"perceptron\"");
    try {
      model_from_json(bad);
      FAIL_CHECK("expected CORRUPT");
    } catch (const Error& e) {
      CHECK(e.code() == errc::corrupt);
    }
  }

  SUBCASE("missing parameters") {
    std::string bad = text;
    const auto pos = bad.find("\"parameters\"");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 12, "\"parameterz\"");
    CHECK_THROWS_AS(model_from_json(bad), Error);
  }
}

TEST_CASE("predicting with the wrong column count raises SCHEMA_MISMATCH") {
  const FeatureTable table = synth_table(57, 10);
  const auto m =
      fit(LearnerSpec::preset("nb", 0), table,
          FeatureTable::all_rows(table.rows()));
  Eigen::MatrixXd wrong(2, 7);
  wrong.setZero();
  try {
    m->predict_proba(wrong);
    FAIL("expected SCHEMA_MISMATCH");
  } catch (const Error& e) {
    CHECK(e.code() == errc::schema_mismatch);
  }
}

TEST_CASE("probabilities are clamped away from 0 and 1") {
  // A perfectly separable one-feature problem drives CART leaves to pure
  // class fractions; the clamp keeps log-loss finite.
  Eigen::MatrixXd X(10, 1);
  Eigen::VectorXd y(10);
  for (int i = 0; i < 10; ++i) {
    X(i, 0) = i;
    y(i) = i < 5 ? 0.0 : 1.0;
  }
  CartParams p;
  p.min_samples_leaf = 1;
  const auto m = fit_cart(p, X, y);
  m->set_schema(gen_schema(X.cols()));
  const Eigen::VectorXd proba = m->predict_proba(X);
  for (int i = 0; i < 10; ++i) {
    CHECK(proba(i) >= kProbaClamp);
    CHECK(proba(i) <= 1.0 - kProbaClamp);
  }
}
