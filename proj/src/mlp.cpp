#include "lolpred/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lolpred/error.hpp"
#include "lolpred/rng.hpp"

namespace lolpred {

namespace {

// Activations per layer for a batch; column = sample.
struct ForwardPass {
  std::vector<Eigen::MatrixXd> a;  // a[0] = inputs, a.back() = 1 × n probabilities
};

ForwardPass run_forward(const MlpNetwork& net, const Eigen::MatrixXd& Xt) {
  ForwardPass fp;
  fp.a.reserve(net.weights.size() + 1);
  fp.a.push_back(Xt);
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    Eigen::MatrixXd z = net.weights[l] * fp.a.back();
    z.colwise() += net.biases[l];
    if (l + 1 < net.weights.size()) {
      fp.a.push_back(z.cwiseMax(0.0));  // ReLU
    } else {
      Eigen::MatrixXd p(z.rows(), z.cols());
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        const double v = z.data()[i];
        p.data()[i] = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v))
                               : std::exp(v) / (1.0 + std::exp(v));
      }
      fp.a.push_back(std::move(p));
    }
  }
  return fp;
}

}  // namespace

MlpNetwork MlpNetwork::init(int n_inputs, const std::vector<int>& hidden_sizes,
                            std::uint64_t seed) {
  MlpNetwork net;
  auto rng = make_rng(seed, /*stream=*/0x6d6c70);  // distinct stream per purpose
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<int> sizes;
  sizes.push_back(n_inputs);
  sizes.insert(sizes.end(), hidden_sizes.begin(), hidden_sizes.end());
  sizes.push_back(1);

  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const int fan_in = sizes[l];
    const int fan_out = sizes[l + 1];
    const double scale = std::sqrt(2.0 / static_cast<double>(fan_in));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = scale * normal(rng);
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return net;
}

Eigen::VectorXd MlpNetwork::forward(const Eigen::Ref<const Eigen::MatrixXd>& X) const {
  const ForwardPass fp = run_forward(*this, X.transpose());
  return fp.a.back().row(0).transpose();
}

double MlpNetwork::loss(const Eigen::Ref<const Eigen::MatrixXd>& X,
                        const Eigen::Ref<const Eigen::VectorXd>& y) const {
  const Eigen::ArrayXd p = forward(X).array().max(kProbaClamp).min(1.0 - kProbaClamp);
  const Eigen::ArrayXd ya = y.array();
  return -(ya * p.log() + (1.0 - ya) * (1.0 - p).log()).mean();
}

void MlpNetwork::gradients(const Eigen::Ref<const Eigen::MatrixXd>& X,
                           const Eigen::Ref<const Eigen::VectorXd>& y,
                           std::vector<Eigen::MatrixXd>& grad_w,
                           std::vector<Eigen::VectorXd>& grad_b) const {
  const Eigen::Index n = X.rows();
  const std::size_t L = weights.size();
  const ForwardPass fp = run_forward(*this, X.transpose());

  grad_w.resize(L);
  grad_b.resize(L);

  // Output delta of mean cross-entropy through the sigmoid: (p − y)/n.
  Eigen::MatrixXd delta =
      (fp.a.back().row(0).transpose().array() - y.array()).matrix().transpose() /
      static_cast<double>(n);

  for (std::size_t l = L; l-- > 0;) {
    grad_w[l] = delta * fp.a[l].transpose();
    grad_b[l] = delta.rowwise().sum();
    if (l > 0) {
      Eigen::MatrixXd back = weights[l].transpose() * delta;
      // ReLU gate: zero where the pre-activation was non-positive.
      delta = (fp.a[l].array() > 0.0).select(back, Eigen::MatrixXd::Zero(back.rows(), back.cols()));
    }
  }
}

std::unique_ptr<MlpModel> fit_mlp(const MlpParams& p, std::uint64_t seed,
                                  const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  auto model = std::make_unique<MlpModel>();
  model->scaler = Scaler::fit(X);
  const Eigen::MatrixXd Xs = model->scaler.apply(X);
  const int n = static_cast<int>(Xs.rows());

  model->net = MlpNetwork::init(static_cast<int>(Xs.cols()), p.hidden_sizes, seed);
  auto shuffle_rng = make_rng(seed, /*stream=*/0x736677);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<Eigen::MatrixXd> gw;
  std::vector<Eigen::VectorXd> gb;

  for (int epoch = 0; epoch < p.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    for (int start = 0; start < n; start += p.batch_size) {
      const int len = std::min(p.batch_size, n - start);
      Eigen::MatrixXd xb(len, Xs.cols());
      Eigen::VectorXd yb(len);
      for (int i = 0; i < len; ++i) {
        xb.row(i) = Xs.row(order[static_cast<std::size_t>(start + i)]);
        yb[i] = y[order[static_cast<std::size_t>(start + i)]];
      }
      model->net.gradients(xb, yb, gw, gb);
      for (std::size_t l = 0; l < model->net.weights.size(); ++l) {
        model->net.weights[l] -= p.lr * gw[l];
        model->net.biases[l] -= p.lr * gb[l];
      }
    }
    const double epoch_loss = model->net.loss(Xs, y);
    if (!std::isfinite(epoch_loss)) {
      throw Error(errc::diverged, "nonfinite mlp loss at epoch " + std::to_string(epoch));
    }
  }
  return model;
}

Eigen::VectorXd MlpModel::raw_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const {
  return net.forward(scaler.apply(inputs));
}

}  // namespace lolpred
