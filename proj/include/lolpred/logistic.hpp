#pragma once

#include <memory>
#include <utility>

#include <Eigen/Core>

#include "lolpred/learner_spec.hpp"
#include "lolpred/model.hpp"
#include "lolpred/stats.hpp"

namespace lolpred {

class LogisticModel : public Model {
 public:
  Family family() const override { return Family::Logistic; }

  // Fitted state; read-only once fit returns.
  Eigen::VectorXd weights;
  double bias = 0.0;
  Scaler scaler;

 protected:
  Eigen::VectorXd raw_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const override;
};

// Mean cross-entropy plus (l2/2)·‖w‖² — bias excluded — and its gradient
// with respect to wb = [w; b]. The analytic gradient here is what the
// finite-difference checks exercise.
std::pair<double, Eigen::VectorXd> logistic_loss_and_gradient(
    const Eigen::Ref<const Eigen::MatrixXd>& X,
    const Eigen::Ref<const Eigen::VectorXd>& y,
    const Eigen::Ref<const Eigen::VectorXd>& wb, double l2_lambda);

std::unique_ptr<LogisticModel> fit_logistic(const LogisticParams& p,
                                            const Eigen::MatrixXd& X,
                                            const Eigen::VectorXd& y);

}  // namespace lolpred
