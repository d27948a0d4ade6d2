#pragma once

#include <cstdint>
#include <memory>

#include <Eigen/Core>

#include "lolpred/learner_spec.hpp"
#include "lolpred/tree.hpp"

namespace lolpred {

// Bootstrap-aggregated CART ensemble. Family reports Bagging when fitted
// without feature subsampling via the bagging preset, RandomForest otherwise;
// identical hyperparameters and seeds produce identical ensembles either way.
class ForestModel : public Model {
 public:
  Family family() const override { return family_; }
  std::vector<std::pair<std::string, double>> feature_importance() const override;

  Family family_ = Family::RandomForest;
  std::vector<Tree> trees;
  Eigen::VectorXd importances;  // normalized to sum 1

 protected:
  Eigen::VectorXd raw_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const override;
};

std::unique_ptr<ForestModel> fit_forest(const ForestParams& p, Family family,
                                        std::uint64_t seed,
                                        const Eigen::MatrixXd& X,
                                        const Eigen::VectorXd& y);

}  // namespace lolpred
