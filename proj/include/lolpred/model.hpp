#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "lolpred/dataset.hpp"
#include "lolpred/learner_spec.hpp"

namespace lolpred {

constexpr int kModelFormatVersion = 1;
constexpr double kProbaClamp = 1e-12;

// A fitted, immutable predictor. predict_proba is a pure function of
// (model, input) and safe for unlimited concurrent callers.
class Model {
 public:
  virtual ~Model() = default;

  virtual Family family() const = 0;

  // P(blue win) per row, clamped to [kProbaClamp, 1 - kProbaClamp].
  // Throws SCHEMA_MISMATCH when the column count differs from the schema.
  Eigen::VectorXd predict_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const;
  double predict_proba(const FeatureVector& x) const;

  // Normalized impurity-decrease importances, sorted descending.
  // Throws UNSUPPORTED_FAMILY for non-tree models.
  virtual std::vector<std::pair<std::string, double>> feature_importance() const;

  const std::vector<std::string>& schema() const { return schema_; }
  void set_schema(std::vector<std::string> names) { schema_ = std::move(names); }

 protected:
  virtual Eigen::VectorXd raw_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const = 0;

  std::vector<std::string> schema_;
};

// Fits one model on the given rows only. Deterministic given
// (spec, table, rows) including spec.seed.
// Throws SINGLE_CLASS (logistic / naive Bayes / mlp need both classes),
// NONFINITE_FEATURE, DIVERGED, INVALID_ARGUMENT.
std::unique_ptr<Model> fit(const LearnerSpec& spec, const FeatureTable& table,
                           const std::vector<int>& rows);

// Single-document JSON model files; load(save(m)) predicts bit-identically.
std::string model_to_json(const Model& m);
std::unique_ptr<Model> model_from_json(const std::string& text);
void save_model(const Model& m, const std::filesystem::path& path);
std::unique_ptr<Model> load_model(const std::filesystem::path& path);

}  // namespace lolpred
