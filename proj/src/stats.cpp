#include "lolpred/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lolpred/error.hpp"

namespace lolpred {

double pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
               const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) {
    throw Error(errc::length_mismatch, "pearson inputs differ in length");
  }
  if (x.size() < 2) {
    throw Error(errc::length_mismatch, "pearson needs at least two samples");
  }
  const Eigen::ArrayXd xc = x.array() - x.mean();
  const Eigen::ArrayXd yc = y.array() - y.mean();
  const double sxx = (xc * xc).sum();
  const double syy = (yc * yc).sum();
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(errc::constant_column, "zero variance input");
  }
  return (xc * yc).sum() / std::sqrt(sxx * syy);
}

CorrelationReport correlation_report(const FeatureTable& table, double pet,
                                     bool include_red_first_blood) {
  const std::vector<int> rows = table.rows_at_pet(pet);
  if (rows.size() < 2) {
    throw Error(errc::no_rows_for_pet, "need at least two rows at this pet");
  }

  Eigen::VectorXd label(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    label(static_cast<Eigen::Index>(i)) = table.labels(rows[i]);
  }

  CorrelationReport report;
  report.pet = pet;

  auto add_entry = [&](const std::string& name, const Eigen::VectorXd& column) {
    CorrelationEntry entry;
    entry.feature = name;
    try {
      entry.r = pearson(column, label);
    } catch (const Error& e) {
      if (e.code() != errc::constant_column) throw;
      entry.defined = false;  // reported, not dropped
      entry.r = 0.0;
    }
    report.entries.push_back(std::move(entry));
  };

  Eigen::VectorXd column(static_cast<Eigen::Index>(rows.size()));
  for (int f = 0; f < kNumFeatures; ++f) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      column(static_cast<Eigen::Index>(i)) = table.inputs(rows[i], 1 + f);
    }
    add_entry(feature_names()[static_cast<std::size_t>(f)], column);
  }

  if (include_red_first_blood) {
    // Derived mirror of blueFirstBlood: red took the earliest kill in the
    // slice. A slice with no kills has neither indicator set; with kills,
    // exactly one side has it.
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double blue_fb = table.inputs(rows[i], 1 + feat::kBlueFirstBlood);
      const double any_kill =
          table.inputs(rows[i], 1 + feat::kBlueChampionKill) +
          table.inputs(rows[i], 1 + feat::kRedChampionKill);
      column(static_cast<Eigen::Index>(i)) =
          (blue_fb == 0.0 && any_kill > 0.0) ? 1.0 : 0.0;
    }
    add_entry("redFirstBlood", column);
  }

  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const CorrelationEntry& a, const CorrelationEntry& b) {
                     if (a.defined != b.defined) return a.defined;
                     return a.r > b.r;
                   });
  return report;
}

Scaler Scaler::fit(const Eigen::Ref<const Eigen::MatrixXd>& inputs,
                   const std::vector<int>& rows) {
  if (rows.empty()) throw Error(errc::empty_fit_set, "scaler fit on zero rows");

  const Eigen::Index d = inputs.cols();
  const double n = static_cast<double>(rows.size());

  Scaler s;
  s.mean_.resize(d);
  s.std_.resize(d);
  s.passthrough_.assign(static_cast<std::size_t>(d), false);

  for (Eigen::Index j = 0; j < d; ++j) {
    double sum = 0.0;
    bool binary = true;
    for (int r : rows) {
      const double v = inputs(r, j);
      sum += v;
      binary = binary && (v == 0.0 || v == 1.0);
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (int r : rows) {
      const double dev = inputs(r, j) - mean;
      ss += dev * dev;
    }
    const double sd = std::sqrt(ss / n);  // population
    if (binary || sd == 0.0) {
      s.passthrough_[static_cast<std::size_t>(j)] = true;
      s.mean_(j) = 0.0;
      s.std_(j) = 1.0;
    } else {
      s.mean_(j) = mean;
      s.std_(j) = sd;
    }
  }
  return s;
}

Scaler Scaler::fit(const Eigen::Ref<const Eigen::MatrixXd>& inputs) {
  std::vector<int> rows(static_cast<std::size_t>(inputs.rows()));
  std::iota(rows.begin(), rows.end(), 0);
  return fit(inputs, rows);
}

Eigen::MatrixXd Scaler::apply(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const {
  if (inputs.cols() != mean_.size()) {
    throw Error(errc::schema_mismatch, "scaler fitted on a different column count");
  }
  Eigen::MatrixXd out = inputs;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    if (passthrough_[static_cast<std::size_t>(j)]) continue;
    out.col(j) = (out.col(j).array() - mean_(j)) / std_(j);
  }
  return out;
}

Scaler Scaler::from_parts(Eigen::VectorXd mean, Eigen::VectorXd stddev,
                          std::vector<bool> passthrough) {
  Scaler s;
  s.mean_ = std::move(mean);
  s.std_ = std::move(stddev);
  s.passthrough_ = std::move(passthrough);
  return s;
}

}  // namespace lolpred
