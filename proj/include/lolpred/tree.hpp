#pragma once

#include <memory>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "lolpred/learner_spec.hpp"
#include "lolpred/model.hpp"

namespace lolpred {

// Flat node array; nodes[0] is the root. Routing rule: x[feature] <= threshold
// goes left. feature == -1 marks a leaf carrying `value` (class fraction for
// CART, additive log-odds step for boosting).
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct Tree {
  std::vector<TreeNode> nodes;

  double predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
  bool empty() const { return nodes.empty(); }
};

// Gini-impurity CART over the rows given. `mtry` > 0 samples that many
// candidate features per node from `rng` (random-forest style); mtry == 0
// considers every feature and never touches the generator, which is what
// makes bagging and an unsubsampled forest coincide. Split gain ties break
// toward the lowest feature index, then the lowest threshold. When
// `importance` is non-null, weighted impurity decreases are accumulated into
// it (size = n features, un-normalized).
Tree build_cart(const Eigen::Ref<const Eigen::MatrixXd>& X,
                const Eigen::Ref<const Eigen::VectorXd>& y,
                const std::vector<int>& rows, const CartParams& params,
                int mtry, std::mt19937_64* rng, Eigen::VectorXd* importance);

// Pairs importances with schema names, descending.
std::vector<std::pair<std::string, double>> sorted_importance(
    const std::vector<std::string>& schema, const Eigen::VectorXd& importances);

class CartModel : public Model {
 public:
  Family family() const override { return Family::Cart; }
  std::vector<std::pair<std::string, double>> feature_importance() const override;

  Tree tree;
  Eigen::VectorXd importances;  // normalized to sum 1 (all-zero if no splits)

 protected:
  Eigen::VectorXd raw_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const override;
};

std::unique_ptr<CartModel> fit_cart(const CartParams& p, const Eigen::MatrixXd& X,
                                    const Eigen::VectorXd& y);

}  // namespace lolpred
