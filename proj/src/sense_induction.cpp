#include "tdawsi/sense_induction.hpp"

#include <cmath>

#include "tdawsi/disjoint_set.hpp"
#include "tdawsi/error.hpp"

namespace tdawsi {

double significance_threshold(const PersistenceDiagram& diagram, double sigma_multiplier) {
  if (!(sigma_multiplier >= 0.0) || !std::isfinite(sigma_multiplier)) {
    throw DomainError("sigma multiplier must be finite and nonnegative");
  }
  const auto& bars = diagram.finite_bars;
  if (bars.empty()) throw DomainError("significance threshold needs at least one finite bar");
  const double n = static_cast<double>(bars.size());
  double mean = 0.0;
  for (const auto& bar : bars) mean += bar.death;
  mean /= n;
  double variance = 0.0;
  for (const auto& bar : bars) variance += (bar.death - mean) * (bar.death - mean);
  variance /= n;
  return mean + sigma_multiplier * std::sqrt(variance);
}

SenseEstimate estimate_senses(const PointCloud& cloud, const SenseOptions& options) {
  SenseEstimate estimate;
  estimate.word = cloud.labels.at(cloud.center_index);
  estimate.k = cloud.size() - 1;
  estimate.sigma_multiplier = options.sigma_multiplier;
  estimate.diagram = compute_barcode(build_filtration(cloud, options.metric), options.algorithm);
  estimate.threshold = significance_threshold(estimate.diagram, options.sigma_multiplier);
  for (const auto& bar : estimate.diagram.finite_bars) {
    if (bar.death > estimate.threshold) ++estimate.significant_finite;
  }
  estimate.predicted_senses = estimate.significant_finite + estimate.diagram.essential_count;
  return estimate;
}

SenseEstimate estimate_senses(const EmbeddingMatrix& matrix, std::string_view word,
                              const SenseOptions& options) {
  if (options.k == 0) throw DomainError("sense estimation needs k >= 1");
  return estimate_senses(k_nearest(matrix, word, options.k, options.metric), options);
}

std::size_t count_components(const FiltrationEdgeList& filtration, double epsilon) {
  DisjointSet components(filtration.vertex_count());
  for (const auto& e : filtration.edges()) {
    if (e.weight > epsilon) break;
    components.unite(e.i, e.j);
  }
  return components.components();
}

ComponentDelta removal_probe(const PointCloud& cloud, double epsilon, Metric metric) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  ComponentDelta delta;
  delta.word = cloud.labels.at(cloud.center_index);
  delta.epsilon = epsilon;
  delta.components_with = count_components(build_filtration(cloud, metric), epsilon);
  delta.components_without =
      count_components(build_filtration(cloud.without(cloud.center_index), metric), epsilon);
  delta.changed = delta.components_with != delta.components_without;
  return delta;
}

ComponentDelta removal_probe(const EmbeddingMatrix& matrix, std::string_view word,
                             const SenseOptions& options, std::optional<double> epsilon) {
  if (options.k == 0) throw DomainError("removal probe needs k >= 1");
  const PointCloud cloud = k_nearest(matrix, word, options.k, options.metric);
  if (!epsilon) epsilon = estimate_senses(cloud, options).threshold;
  return removal_probe(cloud, *epsilon, options.metric);
}

nlohmann::ordered_json to_json(const SenseEstimate& estimate) {
  nlohmann::ordered_json j;
  j["word"] = estimate.word;
  j["k"] = estimate.k;
  j["sigma"] = estimate.sigma_multiplier;
  j["threshold"] = estimate.threshold;
  j["deaths"] = estimate.diagram.deaths();
  j["predicted_senses"] = estimate.predicted_senses;
  return j;
}

nlohmann::ordered_json to_json(const ComponentDelta& delta) {
  nlohmann::ordered_json j;
  j["word"] = delta.word;
  j["epsilon"] = delta.epsilon;
  j["components_with"] = delta.components_with;
  j["components_without"] = delta.components_without;
  j["changed"] = delta.changed;
  return j;
}

}  // namespace tdawsi
