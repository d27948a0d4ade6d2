#include "lolpred/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "lolpred/error.hpp"
#include "lolpred/model.hpp"
#include "lolpred/rng.hpp"

namespace lolpred {

FoldPlan stratified_kfold(const Eigen::VectorXd& labels,
                          const std::vector<std::string>& match_ids, int k,
                          std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(labels.size());
  if (match_ids.size() != n) {
    throw Error(errc::length_mismatch, "labels and match ids differ in length");
  }
  if (n == 0) throw Error(errc::empty_input, "no rows to fold");
  if (k < 2) throw Error(errc::invalid_argument, "k must be at least 2");

  // Groups in first-appearance order; a match's rows share one outcome.
  std::map<std::string, int> group_of;
  std::vector<std::vector<int>> group_rows;
  std::vector<int> group_label;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = group_of.try_emplace(match_ids[i], static_cast<int>(group_rows.size()));
    if (inserted) {
      group_rows.emplace_back();
      group_label.push_back(labels[static_cast<Eigen::Index>(i)] > 0.5 ? 1 : 0);
    }
    group_rows[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
  }

  std::vector<int> pos_groups, neg_groups;
  for (std::size_t g = 0; g < group_rows.size(); ++g) {
    (group_label[g] == 1 ? pos_groups : neg_groups).push_back(static_cast<int>(g));
  }
  if (pos_groups.size() < static_cast<std::size_t>(k) ||
      neg_groups.size() < static_cast<std::size_t>(k)) {
    throw Error(errc::class_too_small,
                "need at least k=" + std::to_string(k) + " matches per class, have " +
                    std::to_string(pos_groups.size()) + " positive / " +
                    std::to_string(neg_groups.size()) + " negative");
  }

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignment.assign(n, -1);

  int cls = 0;
  for (auto* groups : {&pos_groups, &neg_groups}) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(cls++));
    std::shuffle(groups->begin(), groups->end(), rng);
    for (std::size_t i = 0; i < groups->size(); ++i) {
      const int fold = static_cast<int>(i % static_cast<std::size_t>(k));
      for (int row : group_rows[static_cast<std::size_t>((*groups)[i])]) {
        plan.assignment[static_cast<std::size_t>(row)] = fold;
      }
    }
  }
  return plan;
}

ConfusionMetrics confusion_metrics(const std::vector<int>& predictions,
                                   const std::vector<int>& labels) {
  if (predictions.size() != labels.size()) {
    throw Error(errc::length_mismatch, "predictions and labels differ in length");
  }
  if (predictions.empty()) throw Error(errc::empty, "no predictions to score");

  double tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const bool p = predictions[i] != 0;
    const bool a = labels[i] != 0;
    if (p && a) ++tp;
    else if (p && !a) ++fp;
    else if (!p && a) ++fn;
    else ++tn;
  }

  ConfusionMetrics m;
  m.accuracy = (tp + tn) / static_cast<double>(predictions.size());
  m.recall = (tp + fn) > 0 ? tp / (tp + fn) : 0.0;
  if (tp + fp > 0) {
    m.precision = tp / (tp + fp);
  } else {
    m.precision_defined = false;
  }
  if (m.precision_defined && m.precision + m.recall > 0.0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  } else {
    m.f1_defined = false;
  }
  return m;
}

double auc_roc(const Eigen::Ref<const Eigen::VectorXd>& scores,
               const Eigen::Ref<const Eigen::VectorXd>& labels) {
  const Eigen::Index n = scores.size();
  if (labels.size() != n) {
    throw Error(errc::length_mismatch, "scores and labels differ in length");
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return scores[a] < scores[b]; });

  double rank_sum_pos = 0.0;
  double n_pos = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    // Midrank for the tie run [i, j], 1-based ranks.
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) {
      if (labels[order[t]] > 0.5) {
        rank_sum_pos += midrank;
        n_pos += 1.0;
      }
    }
    i = j + 1;
  }

  const double n_neg = static_cast<double>(n) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0) {
    throw Error(errc::single_class, "auc needs both outcomes");
  }
  return (rank_sum_pos - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

MetricsReport cross_validate(const LearnerSpec& spec, const FeatureTable& table,
                             std::optional<double> pet, int k, std::uint64_t seed) {
  std::vector<int> rows =
      pet ? table.rows_at_pet(*pet) : FeatureTable::all_rows(table.rows());
  if (rows.empty()) {
    throw Error(errc::no_rows_for_pet,
                pet ? "no rows at pet " + std::to_string(*pet) : "empty table");
  }

  Eigen::VectorXd labels(static_cast<Eigen::Index>(rows.size()));
  std::vector<std::string> ids;
  ids.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    labels[static_cast<Eigen::Index>(i)] = table.labels[rows[i]];
    ids.push_back(table.match_ids[static_cast<std::size_t>(rows[i])]);
  }
  const FoldPlan plan = stratified_kfold(labels, ids, k, seed);

  MetricsReport report;
  report.k = k;

  for (int fold = 0; fold < k; ++fold) {
    std::vector<int> train, test;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      (plan.assignment[i] == fold ? test : train).push_back(rows[i]);
    }

    const auto model = fit(spec, table, train);

    Eigen::MatrixXd test_inputs(static_cast<Eigen::Index>(test.size()), table.inputs.cols());
    std::vector<int> test_labels(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) {
      test_inputs.row(static_cast<Eigen::Index>(i)) = table.inputs.row(test[i]);
      test_labels[i] = table.labels[test[i]] > 0.5 ? 1 : 0;
    }
    const Eigen::VectorXd proba = model->predict_proba(test_inputs);

    std::vector<int> calls(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) {
      calls[i] = proba[static_cast<Eigen::Index>(i)] >= 0.5 ? 1 : 0;
    }

    Eigen::VectorXd label_vec(static_cast<Eigen::Index>(test.size()));
    for (std::size_t i = 0; i < test.size(); ++i) {
      label_vec[static_cast<Eigen::Index>(i)] = test_labels[i];
    }

    report.folds.push_back(confusion_metrics(calls, test_labels));
    report.fold_auc.push_back(auc_roc(proba, label_vec));
  }

  double acc = 0.0, rec = 0.0, auc = 0.0, prec = 0.0, f1 = 0.0;
  int prec_n = 0, f1_n = 0;
  for (int fold = 0; fold < k; ++fold) {
    const ConfusionMetrics& m = report.folds[static_cast<std::size_t>(fold)];
    acc += m.accuracy;
    rec += m.recall;
    auc += report.fold_auc[static_cast<std::size_t>(fold)];
    if (m.precision_defined) {
      prec += m.precision;
      ++prec_n;
    } else {
      ++report.undefined_precision_folds;
    }
    if (m.f1_defined) {
      f1 += m.f1;
      ++f1_n;
    }
  }
  report.accuracy = acc / k;
  report.recall = rec / k;
  report.auc = auc / k;
  report.precision = prec_n > 0 ? prec / prec_n : std::nan("");
  report.f1 = f1_n > 0 ? f1 / f1_n : std::nan("");
  return report;
}

MetricsMatrix metrics_matrix(const std::vector<NamedSpec>& specs,
                             const FeatureTable& table,
                             const std::vector<double>& pet_levels, int k,
                             std::uint64_t seed) {
  if (specs.empty() || pet_levels.empty()) {
    throw Error(errc::invalid_argument, "metrics matrix needs specs and pet levels");
  }
  MetricsMatrix matrix;
  matrix.pets = pet_levels;
  for (const NamedSpec& ns : specs) {
    matrix.names.push_back(ns.name);
    for (double pet : pet_levels) {
      MatrixCell cell;
      cell.name = ns.name;
      cell.pet = pet;
      cell.report = cross_validate(ns.spec, table, pet, k, seed);
      matrix.cells.push_back(std::move(cell));
    }
  }
  return matrix;
}

}  // namespace lolpred
