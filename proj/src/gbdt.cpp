#include "lolpred/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lolpred/error.hpp"

namespace lolpred {

namespace {

constexpr double kMinGain = 1e-12;

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double leaf_weight(double g, double h, double l2) { return -g / (h + l2); }

double score_term(double g, double h, double l2) { return g * g / (h + l2); }

// Rows of one node, with per-row bin ids resolved against the shared edge
// plan. bin_of lives outside the hot loop path via precomputed indices.
struct BoundColumns {
  // bin id per (row, feature); row-major n × d
  std::vector<std::uint16_t> bins;
  int d = 0;
  std::uint16_t at(int row, int feature) const {
    return bins[static_cast<std::size_t>(row) * d + feature];
  }
};

struct NodeStats {
  std::vector<int> rows;
  double g_sum = 0.0;
  double h_sum = 0.0;
  int depth = 0;
  SplitDecision split;  // populated lazily
};

class GbdtTrainer {
 public:
  GbdtTrainer(const GbdtParams& p, const Eigen::MatrixXd& X, const Eigen::VectorXd& y)
      : p_(p), X_(X), y_(y), n_(static_cast<int>(X.rows())), d_(static_cast<int>(X.cols())) {
    plan_bins();
  }

  std::unique_ptr<GbdtModel> train() {
    auto model = std::make_unique<GbdtModel>();
    model->importances = Eigen::VectorXd::Zero(d_);

    const double mean_y =
        std::clamp(y_.mean(), kProbaClamp, 1.0 - kProbaClamp);
    model->base_score = std::log(mean_y / (1.0 - mean_y));

    Eigen::VectorXd score = Eigen::VectorXd::Constant(n_, model->base_score);
    Eigen::VectorXd g(n_), h(n_);

    for (int round = 0; round < p_.n_rounds; ++round) {
      for (int i = 0; i < n_; ++i) {
        const double p = sigmoid(score[i]);
        g[i] = p - y_[i];
        h[i] = p_.gradient_order == GradientOrder::Second ? p * (1.0 - p) : 1.0;
      }

      Tree tree = grow_tree(g, h, model->importances);
      for (int i = 0; i < n_; ++i) {
        score[i] += tree.predict_row(X_.row(i));
      }
      model->trees.push_back(std::move(tree));

      double dev = 0.0;
      for (int i = 0; i < n_; ++i) {
        const double p =
            std::clamp(sigmoid(score[i]), kProbaClamp, 1.0 - kProbaClamp);
        dev -= y_[i] * std::log(p) + (1.0 - y_[i]) * std::log(1.0 - p);
      }
      dev /= static_cast<double>(n_);
      if (!std::isfinite(dev)) {
        throw Error(errc::diverged, "nonfinite deviance at round " + std::to_string(round));
      }
      model->train_deviance_.push_back(dev);
    }

    const double total = model->importances.sum();
    if (total > 0.0) model->importances /= total;
    return model;
  }

 private:
  void plan_bins() {
    const int max_bins = p_.split == SplitMode::Exact
                             ? std::numeric_limits<int>::max()
                             : p_.max_bins;
    edges_.resize(static_cast<std::size_t>(d_));
    bound_.d = d_;
    bound_.bins.resize(static_cast<std::size_t>(n_) * d_);

    std::vector<double> column(static_cast<std::size_t>(n_));
    for (int f = 0; f < d_; ++f) {
      for (int i = 0; i < n_; ++i) column[static_cast<std::size_t>(i)] = X_(i, f);
      edges_[f] = plan_bin_edges(column, max_bins);
      if (edges_[f].size() > std::numeric_limits<std::uint16_t>::max()) {
        // Exact mode on >65535 distinct values: cap to the uint16 bin index
        // space; beyond that the histogram quantile path takes over anyway.
        edges_[f] = plan_bin_edges(column, std::numeric_limits<std::uint16_t>::max());
      }
      const auto& e = edges_[f];
      for (int i = 0; i < n_; ++i) {
        const auto it = std::lower_bound(e.begin(), e.end(), X_(i, f));
        bound_.bins[static_cast<std::size_t>(i) * d_ + f] =
            static_cast<std::uint16_t>(it - e.begin());
      }
    }
  }

  std::vector<ColumnHistogram> node_histograms(const NodeStats& node,
                                               const Eigen::VectorXd& g,
                                               const Eigen::VectorXd& h) const {
    std::vector<ColumnHistogram> stats(static_cast<std::size_t>(d_));
    for (int f = 0; f < d_; ++f) {
      auto& s = stats[f];
      s.edges = edges_[f];
      const std::size_t n_bins = s.edges.size() + 1;
      s.grad_sum.assign(n_bins, 0.0);
      s.hess_sum.assign(n_bins, 0.0);
      s.count.assign(n_bins, 0);
    }
    for (int r : node.rows) {
      for (int f = 0; f < d_; ++f) {
        const std::uint16_t b = bound_.at(r, f);
        auto& s = stats[f];
        s.grad_sum[b] += g[r];
        s.hess_sum[b] += h[r];
        s.count[b] += 1;
      }
    }
    return stats;
  }

  void decide_split(NodeStats& node, const Eigen::VectorXd& g, const Eigen::VectorXd& h) const {
    node.split = best_split(node_histograms(node, g, h), p_.l2_lambda, p_.min_child_weight);
  }

  // Appends a leaf for `node` or splits it, returning the node id.
  int emit_leaf(Tree& t, const NodeStats& node) const {
    const int id = static_cast<int>(t.nodes.size());
    t.nodes.push_back(TreeNode{});
    t.nodes[id].value =
        p_.learning_rate * leaf_weight(node.g_sum, node.h_sum, p_.l2_lambda);
    return id;
  }

  std::pair<NodeStats, NodeStats> partition(const NodeStats& node,
                                            const Eigen::VectorXd& g,
                                            const Eigen::VectorXd& h) const {
    NodeStats left, right;
    left.depth = right.depth = node.depth + 1;
    for (int r : node.rows) {
      if (X_(r, node.split.feature) <= node.split.threshold) {
        left.rows.push_back(r);
        left.g_sum += g[r];
        left.h_sum += h[r];
      } else {
        right.rows.push_back(r);
        right.g_sum += g[r];
        right.h_sum += h[r];
      }
    }
    return {std::move(left), std::move(right)};
  }

  Tree grow_tree(const Eigen::VectorXd& g, const Eigen::VectorXd& h,
                 Eigen::VectorXd& importances) const {
    NodeStats root;
    root.rows.resize(static_cast<std::size_t>(n_));
    std::iota(root.rows.begin(), root.rows.end(), 0);
    root.g_sum = g.sum();
    root.h_sum = h.sum();

    return p_.growth == Growth::LeafWise ? grow_leaf_wise(root, g, h, importances)
                                         : grow_level_wise(root, g, h, importances);
  }

  Tree grow_level_wise(NodeStats root, const Eigen::VectorXd& g, const Eigen::VectorXd& h,
                       Eigen::VectorXd& importances) const {
    Tree t;
    // Frontier of (tree node id, stats); breadth-first to max_depth.
    std::vector<std::pair<int, NodeStats>> frontier;
    frontier.emplace_back(emit_leaf(t, root), std::move(root));

    for (int depth = 0; depth < p_.max_depth && !frontier.empty(); ++depth) {
      std::vector<std::pair<int, NodeStats>> next;
      for (auto& [id, node] : frontier) {
        decide_split(node, g, h);
        if (!node.split.valid) continue;
        importances[node.split.feature] += node.split.gain;
        auto [left, right] = partition(node, g, h);
        const int left_id = emit_leaf(t, left);
        const int right_id = emit_leaf(t, right);
        t.nodes[id].feature = node.split.feature;
        t.nodes[id].threshold = node.split.threshold;
        t.nodes[id].left = left_id;
        t.nodes[id].right = right_id;
        next.emplace_back(left_id, std::move(left));
        next.emplace_back(right_id, std::move(right));
      }
      frontier = std::move(next);
    }
    return t;
  }

  Tree grow_leaf_wise(NodeStats root, const Eigen::VectorXd& g, const Eigen::VectorXd& h,
                      Eigen::VectorXd& importances) const {
    Tree t;
    decide_split(root, g, h);
    std::vector<std::pair<int, NodeStats>> open;
    open.emplace_back(emit_leaf(t, root), std::move(root));
    int n_leaves = 1;

    while (n_leaves < p_.max_leaves) {
      // Earliest-created leaf wins gain ties: scan in creation order.
      int best = -1;
      for (std::size_t i = 0; i < open.size(); ++i) {
        const auto& cand = open[i].second.split;
        if (!cand.valid) continue;
        if (best < 0 || cand.gain > open[best].second.split.gain) {
          best = static_cast<int>(i);
        }
      }
      if (best < 0) break;

      auto [id, node] = std::move(open[static_cast<std::size_t>(best)]);
      open.erase(open.begin() + best);

      importances[node.split.feature] += node.split.gain;
      auto [left, right] = partition(node, g, h);
      decide_split(left, g, h);
      decide_split(right, g, h);
      const int left_id = emit_leaf(t, left);
      const int right_id = emit_leaf(t, right);
      t.nodes[id].feature = node.split.feature;
      t.nodes[id].threshold = node.split.threshold;
      t.nodes[id].left = left_id;
      t.nodes[id].right = right_id;
      open.emplace_back(left_id, std::move(left));
      open.emplace_back(right_id, std::move(right));
      ++n_leaves;
    }
    return t;
  }

  const GbdtParams& p_;
  const Eigen::MatrixXd& X_;
  const Eigen::VectorXd& y_;
  int n_ = 0;
  int d_ = 0;
  std::vector<std::vector<double>> edges_;
  BoundColumns bound_;
};

}  // namespace

std::vector<double> plan_bin_edges(std::vector<double> values, int max_bins) {
  std::sort(values.begin(), values.end());
  std::vector<double> uniq;
  for (double v : values) {
    if (uniq.empty() || v != uniq.back()) uniq.push_back(v);
  }

  std::vector<double> edges;
  if (uniq.size() <= 1) return edges;

  const auto midpoint = [](double lo, double hi) { return lo + (hi - lo) / 2.0; };

  if (uniq.size() <= static_cast<std::size_t>(max_bins)) {
    edges.reserve(uniq.size() - 1);
    for (std::size_t i = 0; i + 1 < uniq.size(); ++i) {
      edges.push_back(midpoint(uniq[i], uniq[i + 1]));
    }
    return edges;
  }

  // Equal-frequency boundaries over the sorted multiset; rank targets that
  // fall inside a run of equal values produce no edge there.
  const std::size_t n = values.size();
  for (int b = 1; b < max_bins; ++b) {
    const std::size_t r = static_cast<std::size_t>(
        static_cast<double>(n) * static_cast<double>(b) / static_cast<double>(max_bins));
    if (r == 0 || r >= n) continue;
    if (values[r - 1] == values[r]) continue;
    const double e = midpoint(values[r - 1], values[r]);
    if (edges.empty() || e > edges.back()) edges.push_back(e);
  }
  return edges;
}

ColumnHistogram build_histogram(const Eigen::Ref<const Eigen::VectorXd>& column,
                                const Eigen::Ref<const Eigen::VectorXd>& gradients,
                                const Eigen::Ref<const Eigen::VectorXd>& hessians,
                                int max_bins) {
  if (column.size() != gradients.size() || column.size() != hessians.size()) {
    throw Error(errc::length_mismatch, "histogram inputs differ in length");
  }
  ColumnHistogram s;
  s.edges = plan_bin_edges(std::vector<double>(column.begin(), column.end()), max_bins);
  const std::size_t n_bins = s.edges.size() + 1;
  s.grad_sum.assign(n_bins, 0.0);
  s.hess_sum.assign(n_bins, 0.0);
  s.count.assign(n_bins, 0);
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    const auto it = std::lower_bound(s.edges.begin(), s.edges.end(), column[i]);
    const auto b = static_cast<std::size_t>(it - s.edges.begin());
    s.grad_sum[b] += gradients[i];
    s.hess_sum[b] += hessians[i];
    s.count[b] += 1;
  }
  return s;
}

SplitDecision best_split(const std::vector<ColumnHistogram>& node_stats,
                         double l2_lambda, double min_child_weight) {
  SplitDecision best;
  for (std::size_t f = 0; f < node_stats.size(); ++f) {
    const auto& s = node_stats[f];
    if (s.edges.empty()) continue;

    double g_total = 0.0, h_total = 0.0;
    int n_total = 0;
    for (std::size_t b = 0; b < s.grad_sum.size(); ++b) {
      g_total += s.grad_sum[b];
      h_total += s.hess_sum[b];
      n_total += s.count[b];
    }
    const double parent = score_term(g_total, h_total, l2_lambda);

    double g_left = 0.0, h_left = 0.0;
    int n_left = 0;
    for (std::size_t b = 0; b < s.edges.size(); ++b) {
      g_left += s.grad_sum[b];
      h_left += s.hess_sum[b];
      n_left += s.count[b];
      if (n_left == 0 || n_left == n_total) continue;
      const double h_right = h_total - h_left;
      if (h_left < min_child_weight || h_right < min_child_weight) continue;
      const double gain =
          0.5 * (score_term(g_left, h_left, l2_lambda) +
                 score_term(g_total - g_left, h_right, l2_lambda) - parent);
      if ((best.valid && gain > best.gain + kMinGain) || (!best.valid && gain > kMinGain)) {
        best.valid = true;
        best.feature = static_cast<int>(f);
        best.threshold = s.edges[b];
        best.gain = gain;
      }
    }
  }
  return best;
}

std::unique_ptr<GbdtModel> fit_gbdt(const GbdtParams& p, const Eigen::MatrixXd& X,
                                    const Eigen::VectorXd& y) {
  GbdtTrainer trainer(p, X, y);
  return trainer.train();
}

Eigen::VectorXd GbdtModel::raw_proba(const Eigen::Ref<const Eigen::MatrixXd>& inputs) const {
  Eigen::VectorXd out(inputs.rows());
  for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
    double score = base_score;
    for (const Tree& t : trees) score += t.predict_row(inputs.row(i));
    out[i] = sigmoid(score);
  }
  return out;
}

std::vector<std::pair<std::string, double>> GbdtModel::feature_importance() const {
  return sorted_importance(schema_, importances);
}

}  // namespace lolpred
