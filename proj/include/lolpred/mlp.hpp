#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "lolpred/learner_spec.hpp"
#include "lolpred/model.hpp"
#include "lolpred/stats.hpp"

namespace lolpred {

// Fully-connected net: ReLU hidden layers, logistic output, mean
// cross-entropy loss. Weights are public so gradient checks can nudge them.
struct MlpNetwork {
  std::vector<Eigen::MatrixXd> weights;  // weights[l]: fan_out × fan_in
  std::vector<Eigen::VectorXd> biases;

  // He-normal initialization, deterministic per seed.
  static MlpNetwork init(int n_inputs, const std::vector<int>& hidden_sizes,
                         std::uint64_t seed);

  Eigen::VectorXd forward(const Eigen::Ref<const Eigen::MatrixXd>& X) const;
  double loss(const Eigen::Ref<const Eigen::MatrixXd>& X,
              const Eigen::Ref<const Eigen::VectorXd>& y) const;
  // Backprop gradients of the mean cross-entropy over the batch; shapes
  // mirror weights/biases.
  void gradients(const Eigen::Ref<const Eigen::MatrixXd>& X,
                 const Eigen::Ref<const Eigen::VectorXd>& y,
                 std::vector<Eigen::MatrixXd>& grad_w,
                 std::vector<Eigen::VectorXd>& grad_b) const;
};

class MlpModel : public Model {
 public:
  Family family() const override { return Family::Mlp; }

  MlpNetwork net;
  Scaler scaler;

 protected:
  Eigen::VectorXd raw_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const override;
};

std::unique_ptr<MlpModel> fit_mlp(const MlpParams& p, std::uint64_t seed,
                                  const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

}  // namespace lolpred
