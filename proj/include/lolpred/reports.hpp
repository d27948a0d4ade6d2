#pragma once

#include <string>
#include <vector>

#include "lolpred/evaluation.hpp"
#include "lolpred/random_search.hpp"
#include "lolpred/stats.hpp"

namespace lolpred {

// Correlation analysis, one report per pet.
std::string correlations_to_csv(const std::vector<CorrelationReport>& reports);
std::string correlations_to_markdown(const std::vector<CorrelationReport>& reports);

// Metrics matrix: CSV is long form (model, pet, metric, value); markdown is
// one five-metric table per pet plus the accuracy-versus-pet series.
std::string metrics_matrix_to_csv(const MetricsMatrix& matrix);
std::string metrics_matrix_to_markdown(const MetricsMatrix& matrix);
std::string accuracy_series_to_csv(const MetricsMatrix& matrix);

// Random-search artifacts: full machine-readable trial log plus a summary.
std::string trials_to_json(const SearchResult& result);
std::string tuning_to_markdown(const std::string& family_label, double pet,
                               const SearchResult& result);

}  // namespace lolpred
