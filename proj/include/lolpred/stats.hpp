#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "lolpred/dataset.hpp"

namespace lolpred {

// Product-moment correlation, population normalization (the choice cancels
// in the ratio). Throws LENGTH_MISMATCH and CONSTANT_COLUMN.
double pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
               const Eigen::Ref<const Eigen::VectorXd>& y);

struct CorrelationEntry {
  std::string feature;
  double r = 0.0;       // meaningless when !defined
  bool defined = true;  // false for zero-variance columns
};

// Feature-versus-victory correlations for one pet, sorted by r descending;
// undefined entries sink to the bottom.
struct CorrelationReport {
  double pet = 0.0;
  std::vector<CorrelationEntry> entries;
};

// Correlates every feature column (not pet) with the blue-win label among
// rows at `pet`. When `include_red_first_blood` is set, a derived
// redFirstBlood indicator column is added for reporting parity; it is never
// part of a training table. Throws NO_ROWS_FOR_PET when fewer than two rows
// match.
CorrelationReport correlation_report(const FeatureTable& table, double pet,
                                     bool include_red_first_blood = true);

// Column-wise standardization fitted on a training subset. Binary and
// zero-variance columns pass through untouched.
class Scaler {
 public:
  Scaler() = default;

  // Throws EMPTY_FIT_SET.
  static Scaler fit(const Eigen::Ref<const Eigen::MatrixXd>& inputs,
                    const std::vector<int>& rows);
  static Scaler fit(const Eigen::Ref<const Eigen::MatrixXd>& inputs);

  // Returns a standardized copy; never consults statistics outside the rows
  // the scaler was fitted on.
  Eigen::MatrixXd apply(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const;

  Eigen::Index cols() const { return mean_.size(); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::VectorXd& stddev() const { return std_; }
  const std::vector<bool>& passthrough() const { return passthrough_; }

  // Serialization support for model files.
  static Scaler from_parts(Eigen::VectorXd mean, Eigen::VectorXd stddev,
                           std::vector<bool> passthrough);

 private:
  Eigen::VectorXd mean_;
  Eigen::VectorXd std_;
  std::vector<bool> passthrough_;
};

}  // namespace lolpred
