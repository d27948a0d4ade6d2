#include "lolpred/logistic.hpp"

#include <cmath>

#include "lolpred/error.hpp"

namespace lolpred {

namespace {

Eigen::ArrayXd sigmoid(const Eigen::ArrayXd& z) {
  // Split by sign to avoid overflow in exp.
  Eigen::ArrayXd out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double v = z[i];
    if (v >= 0.0) {
      out[i] = 1.0 / (1.0 + std::exp(-v));
    } else {
      const double e = std::exp(v);
      out[i] = e / (1.0 + e);
    }
  }
  return out;
}

}  // namespace

std::pair<double, Eigen::VectorXd> logistic_loss_and_gradient(
    const Eigen::Ref<const Eigen::MatrixXd>& X,
    const Eigen::Ref<const Eigen::VectorXd>& y,
    const Eigen::Ref<const Eigen::VectorXd>& wb, double l2_lambda) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (wb.size() != d + 1) {
    throw Error(errc::length_mismatch, "wb must hold d weights plus the bias");
  }
  if (n == 0) throw Error(errc::empty_input, "no rows");

  const auto w = wb.head(d);
  const double b = wb[d];

  const Eigen::ArrayXd z = (X * w).array() + b;
  const Eigen::ArrayXd p = sigmoid(z);

  // Numerically stable cross-entropy: log(1+e^z) - y z, branch-free via
  // max(z,0) + log1p(e^{-|z|}).
  double loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double zi = z[i];
    loss += std::max(zi, 0.0) + std::log1p(std::exp(-std::abs(zi))) - y[i] * zi;
  }
  loss /= static_cast<double>(n);
  loss += 0.5 * l2_lambda * w.squaredNorm();

  Eigen::VectorXd grad(d + 1);
  const Eigen::VectorXd resid = (p - y.array()).matrix();
  grad.head(d) = X.transpose() * resid / static_cast<double>(n) + l2_lambda * w;
  grad[d] = resid.sum() / static_cast<double>(n);
  return {loss, std::move(grad)};
}

std::unique_ptr<LogisticModel> fit_logistic(const LogisticParams& p,
                                            const Eigen::MatrixXd& X,
                                            const Eigen::VectorXd& y) {
  auto model = std::make_unique<LogisticModel>();
  model->scaler = Scaler::fit(X);
  const Eigen::MatrixXd Xs = model->scaler.apply(X);

  Eigen::VectorXd wb = Eigen::VectorXd::Zero(X.cols() + 1);
  for (int epoch = 0; epoch < p.epochs; ++epoch) {
    auto [loss, grad] = logistic_loss_and_gradient(Xs, y, wb, p.l2_lambda);
    if (!std::isfinite(loss)) {
      throw Error(errc::diverged, "nonfinite logistic loss at epoch " + std::to_string(epoch));
    }
    wb -= p.lr * grad;
  }
  if (!wb.allFinite()) throw Error(errc::diverged, "nonfinite logistic weights");

  model->weights = wb.head(X.cols());
  model->bias = wb[X.cols()];
  return model;
}

Eigen::VectorXd LogisticModel::raw_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const {
  const Eigen::MatrixXd Xs = scaler.apply(inputs);
  return sigmoid(((Xs * weights).array() + bias)).matrix();
}

}  // namespace lolpred
