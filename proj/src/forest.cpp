#include "lolpred/forest.hpp"

#include <cmath>
#include <random>

#include "lolpred/error.hpp"
#include "lolpred/rng.hpp"

namespace lolpred {

std::unique_ptr<ForestModel> fit_forest(const ForestParams& p, Family family,
                                        std::uint64_t seed,
                                        const Eigen::MatrixXd& X,
                                        const Eigen::VectorXd& y) {
  const int n = static_cast<int>(X.rows());
  const int d = static_cast<int>(X.cols());

  int mtry = 0;
  if (p.feature_subsample == FeatureSubsample::Sqrt) {
    mtry = static_cast<int>(std::lround(std::sqrt(static_cast<double>(d))));
    mtry = std::max(1, std::min(mtry, d));
  }

  CartParams tree_params{p.max_depth, p.min_samples_leaf};

  auto model = std::make_unique<ForestModel>();
  model->family_ = family;
  model->trees.reserve(static_cast<std::size_t>(p.n_trees));
  Eigen::VectorXd imp = Eigen::VectorXd::Zero(d);

  std::vector<int> sample(static_cast<std::size_t>(n));
  for (int t = 0; t < p.n_trees; ++t) {
    // Per-tree stream: the bootstrap and any feature sampling share one
    // generator, so trees are independent of fitting order.
    auto rng = make_rng(seed, static_cast<std::uint64_t>(t));
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int& s : sample) s = pick(rng);
    model->trees.push_back(build_cart(X, y, sample, tree_params, mtry, &rng, &imp));
  }

  const double total = imp.sum();
  model->importances = total > 0.0 ? Eigen::VectorXd(imp / total) : imp;
  return model;
}

Eigen::VectorXd ForestModel::raw_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(inputs.rows());
  for (const Tree& t : trees) {
    for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
      out[i] += t.predict_row(inputs.row(i));
    }
  }
  return out / static_cast<double>(trees.size());
}

std::vector<std::pair<std::string, double>> ForestModel::feature_importance() const {
  return sorted_importance(schema_, importances);
}

}  // namespace lolpred
