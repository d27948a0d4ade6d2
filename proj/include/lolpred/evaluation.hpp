#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lolpred/dataset.hpp"
#include "lolpred/learner_spec.hpp"

namespace lolpred {

struct FoldPlan {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<int> assignment;  // position -> fold id in [0, k)
};

// Stratified k-fold with match grouping: rows sharing a match_id always land
// in the same fold, and per-class group counts per fold differ by at most
// one. Deterministic per seed. Throws CLASS_TOO_SMALL when either class has
// fewer than k matches.
FoldPlan stratified_kfold(const Eigen::VectorXd& labels,
                          const std::vector<std::string>& match_ids, int k,
                          std::uint64_t seed);

struct ConfusionMetrics {
  double accuracy = 0.0;
  double precision = 0.0;  // meaningless when !precision_defined
  double recall = 0.0;
  double f1 = 0.0;  // meaningless when !f1_defined
  bool precision_defined = true;
  bool f1_defined = true;
};

// Positive class = blue win; inputs are hard 0/1 calls. Precision (and with
// it F1) is reported as explicitly undefined when nothing was predicted
// positive. Throws EMPTY and LENGTH_MISMATCH.
ConfusionMetrics confusion_metrics(const std::vector<int>& predictions,
                                   const std::vector<int>& labels);

// Mann–Whitney AUC via rank-sum with midranks for ties, O(n log n).
// Throws SINGLE_CLASS and LENGTH_MISMATCH.
double auc_roc(const Eigen::Ref<const Eigen::VectorXd>& scores,
               const Eigen::Ref<const Eigen::VectorXd>& labels);

struct MetricsReport {
  int k = 0;
  std::vector<ConfusionMetrics> folds;
  std::vector<double> fold_auc;

  // Means over folds; precision and f1 average only the defined folds.
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double auc = 0.0;
  int undefined_precision_folds = 0;
};

// Fits on each fold's train rows (scaler and model see nothing else) and
// scores the held-out rows at threshold 0.5. `pet` restricts the table to
// one observation level; nullopt uses every row.
MetricsReport cross_validate(const LearnerSpec& spec, const FeatureTable& table,
                             std::optional<double> pet, int k, std::uint64_t seed);

struct NamedSpec {
  std::string name;
  LearnerSpec spec;
};

struct MatrixCell {
  std::string name;
  double pet = 0.0;
  MetricsReport report;
};

struct MetricsMatrix {
  std::vector<std::string> names;
  std::vector<double> pets;
  std::vector<MatrixCell> cells;  // name-major, pets ascending within
};

MetricsMatrix metrics_matrix(const std::vector<NamedSpec>& specs,
                             const FeatureTable& table,
                             const std::vector<double>& pet_levels, int k,
                             std::uint64_t seed);

}  // namespace lolpred
