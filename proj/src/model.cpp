#include "lolpred/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lolpred/error.hpp"
#include "lolpred/features.hpp"
#include "lolpred/forest.hpp"
#include "lolpred/gbdt.hpp"
#include "lolpred/logistic.hpp"
#include "lolpred/mlp.hpp"
#include "lolpred/naive_bayes.hpp"
#include "lolpred/stats.hpp"
#include "lolpred/tree.hpp"

namespace lolpred {

using nlohmann::json;

Eigen::VectorXd Model::predict_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const {
  if (inputs.cols() != static_cast<Eigen::Index>(schema_.size())) {
    throw Error(errc::schema_mismatch,
                "model expects " + std::to_string(schema_.size()) + " inputs, got " +
                    std::to_string(inputs.cols()));
  }
  Eigen::VectorXd p = raw_proba(inputs);
  return p.cwiseMax(kProbaClamp).cwiseMin(1.0 - kProbaClamp);
}

double Model::predict_proba(const FeatureVector& x) const {
  Eigen::MatrixXd row = x.as_inputs().transpose();
  return predict_proba(Eigen::Ref<const Eigen::MatrixXd>(row))[0];
}

std::vector<std::pair<std::string, double>> Model::feature_importance() const {
  throw Error(errc::unsupported_family,
              std::string("feature importance is tree-only; this model is ") +
                  family_name(family()));
}

std::unique_ptr<Model> fit(const LearnerSpec& spec, const FeatureTable& table,
                           const std::vector<int>& rows) {
  spec.validate();
  if (rows.empty()) throw Error(errc::empty_fit_set, "fit on zero rows");
  if (rows.size() < 2) throw Error(errc::invalid_argument, "fit needs at least two rows");

  const Eigen::Index n_table = table.rows();
  Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), table.inputs.cols());
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int r = rows[i];
    if (r < 0 || r >= n_table) {
      throw Error(errc::invalid_argument, "row index " + std::to_string(r) + " out of range");
    }
    X.row(static_cast<Eigen::Index>(i)) = table.inputs.row(r);
    y[static_cast<Eigen::Index>(i)] = table.labels[r];
  }
  if (!X.allFinite()) {
    throw Error(errc::nonfinite_feature, "training rows contain non-finite values");
  }

  const bool has_pos = (y.array() > 0.5).any();
  const bool has_neg = (y.array() < 0.5).any();
  const bool needs_both = spec.family == Family::Logistic ||
                          spec.family == Family::GaussianNB || spec.family == Family::Mlp;
  if (needs_both && (!has_pos || !has_neg)) {
    throw Error(errc::single_class, std::string(family_name(spec.family)) +
                                        " requires both outcomes in the fit rows");
  }

  std::unique_ptr<Model> model;
  switch (spec.family) {
    case Family::Logistic:
      model = fit_logistic(spec.logistic, X, y);
      break;
    case Family::GaussianNB:
      model = fit_naive_bayes(X, y);
      break;
    case Family::Cart:
      model = fit_cart(spec.cart, X, y);
      break;
    case Family::Bagging:
    case Family::RandomForest:
      model = fit_forest(spec.forest, spec.family, spec.seed, X, y);
      break;
    case Family::Gbdt:
      model = fit_gbdt(spec.gbdt, X, y);
      break;
    case Family::Mlp:
      model = fit_mlp(spec.mlp, spec.seed, X, y);
      break;
  }

  if (table.inputs.cols() == kNumModelInputs) {
    model->set_schema(model_input_names());
  } else {
    std::vector<std::string> names;
    for (Eigen::Index j = 0; j < table.inputs.cols(); ++j) {
      names.push_back("x" + std::to_string(j));
    }
    model->set_schema(std::move(names));
  }
  return model;
}

namespace {

json vec_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vec_from_json(const json& a) {
  if (!a.is_array()) throw Error(errc::corrupt, "expected a numeric array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw Error(errc::corrupt, "expected a numeric array");
    v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
  }
  return v;
}

json scaler_to_json(const Scaler& s) {
  json j;
  j["mean"] = vec_to_json(s.mean());
  j["stddev"] = vec_to_json(s.stddev());
  j["passthrough"] = s.passthrough();
  return j;
}

Scaler scaler_from_json(const json& j) {
  Eigen::VectorXd mean = vec_from_json(j.at("mean"));
  Eigen::VectorXd stddev = vec_from_json(j.at("stddev"));
  auto passthrough = j.at("passthrough").get<std::vector<bool>>();
  if (mean.size() != stddev.size() ||
      passthrough.size() != static_cast<std::size_t>(mean.size())) {
    throw Error(errc::corrupt, "scaler parts disagree in size");
  }
  for (Eigen::Index i = 0; i < stddev.size(); ++i) {
    if (!(stddev[i] > 0.0)) throw Error(errc::corrupt, "scaler stddev must be positive");
  }
  return Scaler::from_parts(std::move(mean), std::move(stddev), std::move(passthrough));
}

json tree_to_json(const Tree& t) {
  json nodes = json::array();
  for (const TreeNode& n : t.nodes) {
    nodes.push_back(json{{"f", n.feature},
                         {"t", n.threshold},
                         {"l", n.left},
                         {"r", n.right},
                         {"v", n.value}});
  }
  return nodes;
}

Tree tree_from_json(const json& a) {
  Tree t;
  for (const json& jn : a) {
    TreeNode n;
    n.feature = jn.at("f").get<int>();
    n.threshold = jn.at("t").get<double>();
    n.left = jn.at("l").get<int>();
    n.right = jn.at("r").get<int>();
    n.value = jn.at("v").get<double>();
    t.nodes.push_back(n);
  }
  if (t.nodes.empty()) throw Error(errc::corrupt, "empty tree");
  return t;
}

json params_to_json(const Model& m) {
  json p;
  switch (m.family()) {
    case Family::Logistic: {
      const auto& lm = dynamic_cast<const LogisticModel&>(m);
      p["weights"] = vec_to_json(lm.weights);
      p["bias"] = lm.bias;
      p["scaler"] = scaler_to_json(lm.scaler);
      break;
    }
    case Family::GaussianNB: {
      const auto& nb = dynamic_cast<const NaiveBayesModel&>(m);
      p["log_prior_pos"] = nb.log_prior_pos;
      p["log_prior_neg"] = nb.log_prior_neg;
      p["mean_pos"] = vec_to_json(nb.mean_pos);
      p["mean_neg"] = vec_to_json(nb.mean_neg);
      p["var_pos"] = vec_to_json(nb.var_pos);
      p["var_neg"] = vec_to_json(nb.var_neg);
      break;
    }
    case Family::Cart: {
      const auto& cm = dynamic_cast<const CartModel&>(m);
      p["nodes"] = tree_to_json(cm.tree);
      p["importances"] = vec_to_json(cm.importances);
      break;
    }
    case Family::Bagging:
    case Family::RandomForest: {
      const auto& fm = dynamic_cast<const ForestModel&>(m);
      json trees = json::array();
      for (const Tree& t : fm.trees) trees.push_back(tree_to_json(t));
      p["trees"] = std::move(trees);
      p["importances"] = vec_to_json(fm.importances);
      break;
    }
    case Family::Gbdt: {
      const auto& gm = dynamic_cast<const GbdtModel&>(m);
      p["base_score"] = gm.base_score;
      json trees = json::array();
      for (const Tree& t : gm.trees) trees.push_back(tree_to_json(t));
      p["trees"] = std::move(trees);
      p["importances"] = vec_to_json(gm.importances);
      break;
    }
    case Family::Mlp: {
      const auto& mm = dynamic_cast<const MlpModel&>(m);
      json ws = json::array();
      json bs = json::array();
      for (const Eigen::MatrixXd& w : mm.net.weights) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < w.rows(); ++i) {
          rows.push_back(vec_to_json(w.row(i).transpose()));
        }
        ws.push_back(std::move(rows));
      }
      for (const Eigen::VectorXd& b : mm.net.biases) bs.push_back(vec_to_json(b));
      p["weights"] = std::move(ws);
      p["biases"] = std::move(bs);
      p["scaler"] = scaler_to_json(mm.scaler);
      break;
    }
  }
  return p;
}

std::unique_ptr<Model> params_from_json(Family family, const json& p) {
  switch (family) {
    case Family::Logistic: {
      auto m = std::make_unique<LogisticModel>();
      m->weights = vec_from_json(p.at("weights"));
      m->bias = p.at("bias").get<double>();
      m->scaler = scaler_from_json(p.at("scaler"));
      return m;
    }
    case Family::GaussianNB: {
      auto m = std::make_unique<NaiveBayesModel>();
      m->log_prior_pos = p.at("log_prior_pos").get<double>();
      m->log_prior_neg = p.at("log_prior_neg").get<double>();
      m->mean_pos = vec_from_json(p.at("mean_pos"));
      m->mean_neg = vec_from_json(p.at("mean_neg"));
      m->var_pos = vec_from_json(p.at("var_pos"));
      m->var_neg = vec_from_json(p.at("var_neg"));
      return m;
    }
    case Family::Cart: {
      auto m = std::make_unique<CartModel>();
      m->tree = tree_from_json(p.at("nodes"));
      m->importances = vec_from_json(p.at("importances"));
      return m;
    }
    case Family::Bagging:
    case Family::RandomForest: {
      auto m = std::make_unique<ForestModel>();
      m->family_ = family;
      for (const json& jt : p.at("trees")) m->trees.push_back(tree_from_json(jt));
      if (m->trees.empty()) throw Error(errc::corrupt, "forest without trees");
      m->importances = vec_from_json(p.at("importances"));
      return m;
    }
    case Family::Gbdt: {
      auto m = std::make_unique<GbdtModel>();
      m->base_score = p.at("base_score").get<double>();
      for (const json& jt : p.at("trees")) m->trees.push_back(tree_from_json(jt));
      m->importances = vec_from_json(p.at("importances"));
      return m;
    }
    case Family::Mlp: {
      auto m = std::make_unique<MlpModel>();
      for (const json& jw : p.at("weights")) {
        if (!jw.is_array() || jw.empty()) throw Error(errc::corrupt, "bad mlp layer");
        const auto cols = jw[0].size();
        Eigen::MatrixXd w(static_cast<Eigen::Index>(jw.size()),
                          static_cast<Eigen::Index>(cols));
        for (std::size_t i = 0; i < jw.size(); ++i) {
          w.row(static_cast<Eigen::Index>(i)) = vec_from_json(jw[i]).transpose();
        }
        m->net.weights.push_back(std::move(w));
      }
      for (const json& jb : p.at("biases")) m->net.biases.push_back(vec_from_json(jb));
      if (m->net.weights.empty() || m->net.weights.size() != m->net.biases.size()) {
        throw Error(errc::corrupt, "mlp layer mismatch");
      }
      m->scaler = scaler_from_json(p.at("scaler"));
      return m;
    }
  }
  throw Error(errc::corrupt, "unknown family tag");
}

}  // namespace

std::string model_to_json(const Model& m) {
  json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["family"] = family_name(m.family());
  doc["schema"] = m.schema();
  doc["parameters"] = params_to_json(m);
  return doc.dump(2) + "\n";
}

std::unique_ptr<Model> model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(errc::corrupt, std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("format_version")) {
      throw Error(errc::corrupt, "missing format_version");
    }
    const auto version = doc.at("format_version");
    if (!version.is_number_integer()) throw Error(errc::corrupt, "bad format_version");
    if (version.get<int>() != kModelFormatVersion) {
      throw Error(errc::version_unsupported,
                  "model format_version " + version.dump() + " is newer than " +
                      std::to_string(kModelFormatVersion));
    }
    Family family;
    try {
      family = family_from_name(doc.at("family").get<std::string>());
    } catch (const Error&) {
      throw Error(errc::corrupt, "unknown model family " + doc.at("family").dump());
    }
    auto model = params_from_json(family, doc.at("parameters"));
    model->set_schema(doc.at("schema").get<std::vector<std::string>>());
    return model;
  } catch (const json::exception& e) {
    throw Error(errc::corrupt, std::string("model file structure: ") + e.what());
  }
}

void save_model(const Model& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::io, "cannot open " + path.string() + " for writing");
  out << model_to_json(m);
  if (!out) throw Error(errc::io, "short write to " + path.string());
}

std::unique_ptr<Model> load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace lolpred
