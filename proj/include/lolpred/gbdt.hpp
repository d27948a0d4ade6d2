#pragma once

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "lolpred/learner_spec.hpp"
#include "lolpred/tree.hpp"

namespace lolpred {

// Candidate thresholds for one feature, planned once per training set.
// Every distinct value gets its own bin while they fit within max_bins
// (edges at midpoints between neighbours — this is why a wide histogram
// reproduces exact search); beyond that, equal-frequency quantiles.
std::vector<double> plan_bin_edges(std::vector<double> values, int max_bins);

// Per-bin statistics for one feature at one node. Bin b covers values in
// (edges[b-1], edges[b]]; the last bin is open above. Splitting "at edge b"
// sends bins 0..b left.
struct ColumnHistogram {
  std::vector<double> edges;
  std::vector<double> grad_sum;
  std::vector<double> hess_sum;
  std::vector<int> count;
};

ColumnHistogram build_histogram(const Eigen::Ref<const Eigen::VectorXd>& column,
                                const Eigen::Ref<const Eigen::VectorXd>& gradients,
                                const Eigen::Ref<const Eigen::VectorXd>& hessians,
                                int max_bins);

// valid == false means no boundary produced positive gain and the node
// stays a leaf.
struct SplitDecision {
  bool valid = false;
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

// Scans every bin boundary of every feature; gain follows the second-order
// objective ½[G_L²/(H_L+λ) + G_R²/(H_R+λ) − G²/(H+λ)], and both children
// must carry at least min_child_weight hessian mass. Ties break toward the
// lowest feature index, then the lowest threshold.
SplitDecision best_split(const std::vector<ColumnHistogram>& node_stats,
                         double l2_lambda, double min_child_weight);

class GbdtModel : public Model {
 public:
  Family family() const override { return Family::Gbdt; }
  std::vector<std::pair<std::string, double>> feature_importance() const override;

  // Per-round mean logistic deviance on the training rows, recorded after
  // each boosting round.
  const std::vector<double>& train_deviance() const { return train_deviance_; }

  double base_score = 0.0;       // initial log-odds
  std::vector<Tree> trees;       // leaf values carry the learning rate
  Eigen::VectorXd importances;   // gain-weighted, normalized to sum 1
  std::vector<double> train_deviance_;

 protected:
  Eigen::VectorXd raw_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const override;
};

std::unique_ptr<GbdtModel> fit_gbdt(const GbdtParams& p, const Eigen::MatrixXd& X,
                                    const Eigen::VectorXd& y);

}  // namespace lolpred
