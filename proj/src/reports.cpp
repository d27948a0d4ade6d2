#include "lolpred/reports.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "lolpred/error.hpp"

namespace lolpred {

namespace {

void append_number(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

std::string fixed4(double v) {
  if (std::isnan(v)) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string pet_label(double pet) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g%%", pet * 100.0);
  return buf;
}

nlohmann::json spec_params_json(const LearnerSpec& spec) {
  nlohmann::json j;
  switch (spec.family) {
    case Family::Gbdt:
      j["n_rounds"] = spec.gbdt.n_rounds;
      j["learning_rate"] = spec.gbdt.learning_rate;
      j["growth"] = spec.gbdt.growth == Growth::LeafWise ? "leaf_wise" : "level_wise";
      j["split"] = spec.gbdt.split == SplitMode::Histogram ? "histogram" : "exact";
      j["max_bins"] = spec.gbdt.max_bins;
      j["gradient_order"] = spec.gbdt.gradient_order == GradientOrder::Second ? 2 : 1;
      j["l2_lambda"] = spec.gbdt.l2_lambda;
      j["max_leaves"] = spec.gbdt.max_leaves;
      j["min_child_weight"] = spec.gbdt.min_child_weight;
      break;
    case Family::RandomForest:
    case Family::Bagging:
      j["n_trees"] = spec.forest.n_trees;
      j["max_depth"] = spec.forest.max_depth;
      j["min_samples_leaf"] = spec.forest.min_samples_leaf;
      j["feature_subsample"] =
          spec.forest.feature_subsample == FeatureSubsample::Sqrt ? "sqrt" : "none";
      break;
    case Family::Logistic:
      j["lr"] = spec.logistic.lr;
      j["l2_lambda"] = spec.logistic.l2_lambda;
      j["epochs"] = spec.logistic.epochs;
      break;
    case Family::Cart:
      j["max_depth"] = spec.cart.max_depth;
      j["min_samples_leaf"] = spec.cart.min_samples_leaf;
      break;
    case Family::Mlp:
      j["hidden_sizes"] = spec.mlp.hidden_sizes;
      j["lr"] = spec.mlp.lr;
      j["epochs"] = spec.mlp.epochs;
      j["batch_size"] = spec.mlp.batch_size;
      break;
    case Family::GaussianNB:
      break;
  }
  return j;
}

}  // namespace

std::string correlations_to_csv(const std::vector<CorrelationReport>& reports) {
  std::string out = "pet,feature,r\n";
  for (const CorrelationReport& rep : reports) {
    for (const CorrelationEntry& e : rep.entries) {
      append_number(out, rep.pet);
      out += ',';
      out += e.feature;
      out += ',';
      if (e.defined) {
        append_number(out, e.r);
      } else {
        out += "undefined";
      }
      out += '\n';
    }
  }
  return out;
}

std::string correlations_to_markdown(const std::vector<CorrelationReport>& reports) {
  std::string out = "## Feature correlations with blue victory\n";
  for (const CorrelationReport& rep : reports) {
    out += "\n### Elapsed time " + pet_label(rep.pet) + "\n\n";
    out += "| feature | r |\n|---|---|\n";
    for (const CorrelationEntry& e : rep.entries) {
      out += "| " + e.feature + " | " + (e.defined ? fixed4(e.r) : "zero variance") + " |\n";
    }
  }
  return out;
}

std::string metrics_matrix_to_csv(const MetricsMatrix& matrix) {
  std::string out = "model,pet,metric,value\n";
  const auto emit = [&out](const std::string& name, double pet, const char* metric,
                           double value) {
    out += name;
    out += ',';
    append_number(out, pet);
    out += ',';
    out += metric;
    out += ',';
    append_number(out, value);
    out += '\n';
  };
  for (const MatrixCell& c : matrix.cells) {
    emit(c.name, c.pet, "accuracy", c.report.accuracy);
    emit(c.name, c.pet, "precision", c.report.precision);
    emit(c.name, c.pet, "recall", c.report.recall);
    emit(c.name, c.pet, "f1", c.report.f1);
    emit(c.name, c.pet, "auc_roc", c.report.auc);
    emit(c.name, c.pet, "undefined_precision_folds",
         static_cast<double>(c.report.undefined_precision_folds));
  }
  return out;
}

std::string metrics_matrix_to_markdown(const MetricsMatrix& matrix) {
  std::string out = "## Model evaluation by elapsed time\n";
  for (double pet : matrix.pets) {
    out += "\n### Elapsed time " + pet_label(pet) + "\n\n";
    out += "| model | accuracy | precision | recall | f1 | auc-roc |\n";
    out += "|---|---|---|---|---|---|\n";
    for (const MatrixCell& c : matrix.cells) {
      if (c.pet != pet) continue;
      out += "| " + c.name + " | " + fixed4(c.report.accuracy) + " | " +
             fixed4(c.report.precision) + " | " + fixed4(c.report.recall) + " | " +
             fixed4(c.report.f1) + " | " + fixed4(c.report.auc) + " |\n";
    }
  }

  out += "\n### Average accuracy across elapsed time\n\n| model |";
  for (double pet : matrix.pets) out += " " + pet_label(pet) + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < matrix.pets.size(); ++i) out += "---|";
  out += '\n';
  for (const std::string& name : matrix.names) {
    out += "| " + name + " |";
    for (double pet : matrix.pets) {
      for (const MatrixCell& c : matrix.cells) {
        if (c.name == name && c.pet == pet) {
          out += " " + fixed4(c.report.accuracy) + " |";
          break;
        }
      }
    }
    out += '\n';
  }
  return out;
}

std::string accuracy_series_to_csv(const MetricsMatrix& matrix) {
  std::string out = "model,pet,accuracy\n";
  for (const std::string& name : matrix.names) {
    for (const MatrixCell& c : matrix.cells) {
      if (c.name != name) continue;
      out += name;
      out += ',';
      append_number(out, c.pet);
      out += ',';
      append_number(out, c.report.accuracy);
      out += '\n';
    }
  }
  return out;
}

std::string trials_to_json(const SearchResult& result) {
  nlohmann::json doc;
  doc["best_trial"] = result.best.index;
  doc["best_accuracy"] = result.best.mean_accuracy;
  nlohmann::json trials = nlohmann::json::array();
  for (const TrialResult& t : result.trials) {
    nlohmann::json jt;
    jt["trial"] = t.index;
    jt["family"] = family_name(t.spec.family);
    jt["params"] = spec_params_json(t.spec);
    jt["mean_accuracy"] = t.mean_accuracy;
    jt["mean_auc"] = t.report.auc;
    trials.push_back(std::move(jt));
  }
  doc["trials"] = std::move(trials);
  return doc.dump(2) + "\n";
}

std::string tuning_to_markdown(const std::string& family_label, double pet,
                               const SearchResult& result) {
  std::string out = "## Random search — " + family_label + " at elapsed time " +
                    pet_label(pet) + "\n\n";
  out += "Best trial " + std::to_string(result.best.index) + " of " +
         std::to_string(result.trials.size()) + ": accuracy " +
         fixed4(result.best.mean_accuracy) + "\n\n";
  out += "| trial | accuracy | auc-roc | parameters |\n|---|---|---|---|\n";
  for (const TrialResult& t : result.trials) {
    out += "| " + std::to_string(t.index) + " | " + fixed4(t.mean_accuracy) + " | " +
           fixed4(t.report.auc) + " | `" + spec_params_json(t.spec).dump() + "` |\n";
  }
  return out;
}

}  // namespace lolpred
