#include "lolpred/naive_bayes.hpp"

#include <cmath>

#include "lolpred/error.hpp"

namespace lolpred {

namespace {
constexpr double kVarSmoothingFactor = 1e-9;
constexpr double kVarFloor = 1e-12;  // keeps densities finite on degenerate data
}  // namespace

std::unique_ptr<NaiveBayesModel> fit_naive_bayes(const Eigen::MatrixXd& X,
                                                 const Eigen::VectorXd& y) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();

  const double n_pos = y.sum();
  const double n_neg = static_cast<double>(n) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0) {
    throw Error(errc::single_class, "gaussian naive bayes needs both outcomes");
  }

  auto model = std::make_unique<NaiveBayesModel>();
  model->log_prior_pos = std::log(n_pos / static_cast<double>(n));
  model->log_prior_neg = std::log(n_neg / static_cast<double>(n));
  model->mean_pos.setZero(d);
  model->mean_neg.setZero(d);
  model->var_pos.setZero(d);
  model->var_neg.setZero(d);

  for (Eigen::Index i = 0; i < n; ++i) {
    if (y[i] > 0.5) {
      model->mean_pos += X.row(i).transpose();
    } else {
      model->mean_neg += X.row(i).transpose();
    }
  }
  model->mean_pos /= n_pos;
  model->mean_neg /= n_neg;

  for (Eigen::Index i = 0; i < n; ++i) {
    if (y[i] > 0.5) {
      const Eigen::VectorXd dev = X.row(i).transpose() - model->mean_pos;
      model->var_pos += dev.cwiseProduct(dev);
    } else {
      const Eigen::VectorXd dev = X.row(i).transpose() - model->mean_neg;
      model->var_neg += dev.cwiseProduct(dev);
    }
  }
  model->var_pos /= n_pos;
  model->var_neg /= n_neg;

  // Smoothing scale follows the largest overall feature variance.
  const Eigen::VectorXd overall_mean = X.colwise().mean();
  double max_var = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double var =
        (X.col(j).array() - overall_mean[j]).square().sum() / static_cast<double>(n);
    max_var = std::max(max_var, var);
  }
  const double eps = std::max(kVarSmoothingFactor * max_var, kVarFloor);
  model->var_pos.array() += eps;
  model->var_neg.array() += eps;
  return model;
}

Eigen::VectorXd NaiveBayesModel::raw_proba(
    const Eigen::Ref<const Eigen::MatrixXd>& inputs) const {
  const Eigen::Index n = inputs.rows();
  Eigen::VectorXd out(n);

  const Eigen::ArrayXd log_norm_pos = var_pos.array().log();
  const Eigen::ArrayXd log_norm_neg = var_neg.array().log();

  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::ArrayXd x = inputs.row(i).transpose().array();
    const double lp_pos =
        log_prior_pos - 0.5 * (log_norm_pos + (x - mean_pos.array()).square() / var_pos.array()).sum();
    const double lp_neg =
        log_prior_neg - 0.5 * (log_norm_neg + (x - mean_neg.array()).square() / var_neg.array()).sum();
    // Shared Gaussian constants cancel in the posterior ratio.
    const double m = std::max(lp_pos, lp_neg);
    const double z_pos = std::exp(lp_pos - m);
    const double z_neg = std::exp(lp_neg - m);
    out[i] = z_pos / (z_pos + z_neg);
  }
  return out;
}

}  // namespace lolpred
