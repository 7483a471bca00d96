#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tdawsi/embedding_store.hpp"
#include "tdawsi/persistence.hpp"

namespace tdawsi {

struct SenseOptions {
  std::size_t k = 25;
  double sigma_multiplier = 2.0;
  Metric metric = Metric::euclidean;
  BarcodeAlgorithm algorithm = BarcodeAlgorithm::spanning_tree;
};

struct SenseEstimate {
  std::string word;
  std::size_t k = 0;
  double sigma_multiplier = 0.0;
  double threshold = 0.0;
  std::size_t significant_finite = 0;
  std::size_t predicted_senses = 0;
  PersistenceDiagram diagram;
};

struct ComponentDelta {
  std::string word;
  double epsilon = 0.0;
  std::size_t components_with = 0;
  std::size_t components_without = 0;
  bool changed = false;
};

/// mean + sigma_multiplier * population stddev of the finite deaths.
/// Throws DomainError if the diagram has no finite bar or the multiplier is
/// negative.
double significance_threshold(const PersistenceDiagram& diagram, double sigma_multiplier);

/// Senses of the cloud's center word: finite bars dying strictly after the
/// significance threshold, plus the essential component.
SenseEstimate estimate_senses(const PointCloud& cloud, const SenseOptions& options);
SenseEstimate estimate_senses(const EmbeddingMatrix& matrix, std::string_view word,
                              const SenseOptions& options);

/// Connected components of the graph joining points at distance <= epsilon.
std::size_t count_components(const FiltrationEdgeList& filtration, double epsilon);

/// Components of the epsilon-graph with and without the center point.
ComponentDelta removal_probe(const PointCloud& cloud, double epsilon, Metric metric);
/// With no epsilon, the significance threshold of the with-word diagram is used.
ComponentDelta removal_probe(const EmbeddingMatrix& matrix, std::string_view word,
                             const SenseOptions& options, std::optional<double> epsilon);

nlohmann::ordered_json to_json(const SenseEstimate& estimate);
nlohmann::ordered_json to_json(const ComponentDelta& delta);

}  // namespace tdawsi
