#include "lolpred/random_search.hpp"

#include <cmath>
#include <random>

#include "lolpred/error.hpp"
#include "lolpred/rng.hpp"

namespace lolpred {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> u(lo, hi);
  return u(rng);
}

LearnerSpec sample_spec(Family family, const SearchSpace& s, std::mt19937_64& rng,
                        std::uint64_t seed) {
  LearnerSpec spec;
  spec.family = family;
  spec.seed = seed;
  switch (family) {
    case Family::Gbdt:
      spec.gbdt.n_rounds = uniform_int(rng, s.n_rounds_min, s.n_rounds_max);
      spec.gbdt.learning_rate = log_uniform(rng, s.learning_rate_min, s.learning_rate_max);
      spec.gbdt.max_leaves = uniform_int(rng, s.max_leaves_min, s.max_leaves_max);
      spec.gbdt.l2_lambda = log_uniform(rng, s.l2_min, s.l2_max);
      spec.gbdt.max_bins =
          s.max_bins_choices[static_cast<std::size_t>(uniform_int(
              rng, 0, static_cast<int>(s.max_bins_choices.size()) - 1))];
      break;
    case Family::RandomForest:
    case Family::Bagging:
      spec.forest.n_trees = uniform_int(rng, s.n_trees_min, s.n_trees_max);
      spec.forest.max_depth = uniform_int(rng, s.max_depth_min, s.max_depth_max);
      spec.forest.min_samples_leaf =
          uniform_int(rng, s.min_samples_leaf_min, s.min_samples_leaf_max);
      spec.forest.feature_subsample = family == Family::Bagging
                                          ? FeatureSubsample::None
                                          : FeatureSubsample::Sqrt;
      break;
    default:
      throw Error(errc::invalid_argument,
                  std::string("no search space for family ") + family_name(family));
  }
  spec.validate();
  return spec;
}

}  // namespace

SearchResult random_search(Family family, const SearchSpace& space, int n_iter,
                           const FeatureTable& table, std::optional<double> pet,
                           int k, std::uint64_t seed) {
  if (n_iter < 1) throw Error(errc::invalid_argument, "n_iter must be at least 1");
  if (space.max_bins_choices.empty()) {
    throw Error(errc::invalid_argument, "max_bins_choices must not be empty");
  }

  auto rng = make_rng(seed, /*stream=*/0x747269616c);

  SearchResult result;
  int best_index = -1;
  for (int t = 0; t < n_iter; ++t) {
    TrialResult trial;
    trial.index = t;
    trial.spec = sample_spec(family, space, rng, seed);
    trial.report = cross_validate(trial.spec, table, pet, k, seed);
    trial.mean_accuracy = trial.report.accuracy;
    result.trials.push_back(std::move(trial));
    if (best_index < 0 ||
        result.trials.back().mean_accuracy > result.trials[best_index].mean_accuracy) {
      best_index = t;
    }
  }
  result.best = result.trials[static_cast<std::size_t>(best_index)];
  return result;
}

}  // namespace lolpred
