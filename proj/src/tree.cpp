#include "lolpred/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lolpred/error.hpp"

namespace lolpred {

namespace {

constexpr double kMinDecrease = 1e-12;  // FP-dust guard on impurity decrease

double gini(double pos, double n) {
  const double p = pos / n;
  return 2.0 * p * (1.0 - p);
}

struct BestSplit {
  bool valid = false;
  int feature = -1;
  double threshold = 0.0;
  double decrease = 0.0;  // weighted impurity decrease, count-scaled
  std::vector<int> left_rows, right_rows;
};

class CartBuilder {
 public:
  CartBuilder(const Eigen::Ref<const Eigen::MatrixXd>& X,
              const Eigen::Ref<const Eigen::VectorXd>& y, const CartParams& params,
              int mtry, std::mt19937_64* rng, Eigen::VectorXd* importance)
      : X_(X), y_(y), params_(params), mtry_(mtry), rng_(rng), importance_(importance) {}

  Tree build(const std::vector<int>& rows) {
    Tree t;
    grow(rows, 0, t);
    return t;
  }

 private:
  int grow(const std::vector<int>& rows, int depth, Tree& t) {
    const double n = static_cast<double>(rows.size());
    double pos = 0.0;
    for (int r : rows) pos += y_[r];

    const int node_id = static_cast<int>(t.nodes.size());
    t.nodes.push_back(TreeNode{});
    t.nodes[node_id].value = pos / n;

    const bool pure = (pos == 0.0 || pos == n);
    if (pure || depth >= params_.max_depth ||
        rows.size() < 2 * static_cast<std::size_t>(params_.min_samples_leaf)) {
      return node_id;
    }

    BestSplit best = find_best_split(rows, pos);
    if (!best.valid) return node_id;

    if (importance_ != nullptr) (*importance_)[best.feature] += best.decrease;

    const int left = grow(best.left_rows, depth + 1, t);
    const int right = grow(best.right_rows, depth + 1, t);
    t.nodes[node_id].feature = best.feature;
    t.nodes[node_id].threshold = best.threshold;
    t.nodes[node_id].left = left;
    t.nodes[node_id].right = right;
    return node_id;
  }

  std::vector<int> candidate_features() {
    const int d = static_cast<int>(X_.cols());
    std::vector<int> all(d);
    std::iota(all.begin(), all.end(), 0);
    if (mtry_ <= 0 || mtry_ >= d) return all;
    // Partial Fisher-Yates; candidates re-sorted so tie-breaking still
    // favours the lowest feature index.
    for (int i = 0; i < mtry_; ++i) {
      std::uniform_int_distribution<int> pick(i, d - 1);
      std::swap(all[i], all[pick(*rng_)]);
    }
    all.resize(static_cast<std::size_t>(mtry_));
    std::sort(all.begin(), all.end());
    return all;
  }

  BestSplit find_best_split(const std::vector<int>& rows, double pos_total) {
    const double n = static_cast<double>(rows.size());
    const double parent = n * gini(pos_total, n);
    const int min_leaf = params_.min_samples_leaf;

    BestSplit best;
    std::vector<int> order;
    for (int f : candidate_features()) {
      order = rows;
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double va = X_(a, f), vb = X_(b, f);
        if (va != vb) return va < vb;
        return a < b;
      });

      double pos_left = 0.0;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        pos_left += y_[order[i]];
        const double vl = X_(order[i], f);
        const double vr = X_(order[i + 1], f);
        if (vl == vr) continue;
        const double nl = static_cast<double>(i + 1);
        const double nr = n - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double decrease =
            parent - nl * gini(pos_left, nl) - nr * gini(pos_total - pos_left, nr);
        if (decrease > best.decrease + kMinDecrease ||
            (!best.valid && decrease > kMinDecrease)) {
          best.valid = true;
          best.feature = f;
          best.threshold = vl + (vr - vl) / 2.0;
          best.decrease = decrease;
        }
      }
    }

    if (best.valid) {
      for (int r : rows) {
        if (X_(r, best.feature) <= best.threshold) {
          best.left_rows.push_back(r);
        } else {
          best.right_rows.push_back(r);
        }
      }
    }
    return best;
  }

  const Eigen::Ref<const Eigen::MatrixXd>& X_;
  const Eigen::Ref<const Eigen::VectorXd>& y_;
  const CartParams& params_;
  int mtry_;
  std::mt19937_64* rng_;
  Eigen::VectorXd* importance_;
};

}  // namespace

double Tree::predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  int i = 0;
  while (nodes[i].feature >= 0) {
    i = (x[nodes[i].feature] <= nodes[i].threshold) ? nodes[i].left : nodes[i].right;
  }
  return nodes[i].value;
}

Tree build_cart(const Eigen::Ref<const Eigen::MatrixXd>& X,
                const Eigen::Ref<const Eigen::VectorXd>& y,
                const std::vector<int>& rows, const CartParams& params, int mtry,
                std::mt19937_64* rng, Eigen::VectorXd* importance) {
  if (rows.empty()) throw Error(errc::empty_fit_set, "cart fit on zero rows");
  CartBuilder builder(X, y, params, mtry, rng, importance);
  return builder.build(rows);
}

Eigen::VectorXd CartModel::raw_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const {
  Eigen::VectorXd out(inputs.rows());
  for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
    out[i] = tree.predict_row(inputs.row(i));
  }
  return out;
}

std::vector<std::pair<std::string, double>> sorted_importance(
    const std::vector<std::string>& schema, const Eigen::VectorXd& importances) {
  std::vector<std::pair<std::string, double>> out;
  for (Eigen::Index j = 0; j < importances.size(); ++j) {
    out.emplace_back(schema[static_cast<std::size_t>(j)], importances[j]);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

std::vector<std::pair<std::string, double>> CartModel::feature_importance() const {
  return sorted_importance(schema_, importances);
}

std::unique_ptr<CartModel> fit_cart(const CartParams& p, const Eigen::MatrixXd& X,
                                    const Eigen::VectorXd& y) {
  auto model = std::make_unique<CartModel>();
  std::vector<int> rows(static_cast<std::size_t>(X.rows()));
  std::iota(rows.begin(), rows.end(), 0);

  Eigen::VectorXd imp = Eigen::VectorXd::Zero(X.cols());
  model->tree = build_cart(X, y, rows, p, /*mtry=*/0, nullptr, &imp);
  const double total = imp.sum();
  model->importances = total > 0.0 ? Eigen::VectorXd(imp / total) : imp;
  return model;
}

}  // namespace lolpred
