#pragma once

#include <memory>

#include <Eigen/Core>

#include "lolpred/model.hpp"

namespace lolpred {

class NaiveBayesModel : public Model {
 public:
  Family family() const override { return Family::GaussianNB; }

  double log_prior_pos = 0.0;
  double log_prior_neg = 0.0;
  Eigen::VectorXd mean_pos, mean_neg;
  Eigen::VectorXd var_pos, var_neg;  // smoothing already applied

 protected:
  Eigen::VectorXd raw_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const override;
};

std::unique_ptr<NaiveBayesModel> fit_naive_bayes(const Eigen::MatrixXd& X,
                                                 const Eigen::VectorXd& y);

}  // namespace lolpred
