#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdawsi/embedding_store.hpp"
#include "tdawsi/sense_induction.hpp"

namespace tdawsi {

/// Annotated sense counts per token, iterated in token order.
class GroundTruth {
 public:
  GroundTruth() = default;
  /// Throws DomainError on a count below 1.
  explicit GroundTruth(std::map<std::string, int> counts);

  const std::map<std::string, int>& counts() const noexcept { return counts_; }
  std::size_t size() const noexcept { return counts_.size(); }
  std::optional<int> count(const std::string& token) const;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;

 private:
  std::map<std::string, int> counts_;
};

/// "token<TAB>count" lines. Blank lines are ignored.
GroundTruth load_ground_truth(std::istream& in);
GroundTruth load_ground_truth_file(const std::filesystem::path& path);
void write_ground_truth(std::ostream& out, const GroundTruth& truth);

/// Mean of |g_i - p_i| / g_i. Throws DomainError on empty or mismatched input
/// or a nonpositive truth value.
double relative_error(std::span<const int> truth, std::span<const int> predicted);
/// Mean of |g_i - p_i|.
double absolute_error(std::span<const int> truth, std::span<const int> predicted);

/// Inclusive range of ground-truth sense counts.
struct SenseBucket {
  int min_senses = 2;
  int max_senses = 9;

  bool contains(int senses) const noexcept { return senses >= min_senses && senses <= max_senses; }
  std::string label() const;
  /// Parses "MIN-MAX"; throws UsageError.
  static SenseBucket parse(const std::string& text);

  friend bool operator==(const SenseBucket&, const SenseBucket&) = default;
};

struct WordResult {
  std::string word;
  int truth;
  int predicted;
};

struct ErrorReport {
  std::size_t embedding_dim = 0;
  std::size_t k = 0;
  double sigma_multiplier = 0.0;
  SenseBucket bucket;
  std::size_t n_evaluated = 0;
  std::size_t n_skipped_oov = 0;
  double relative_error = 0.0;
  double absolute_error = 0.0;
  std::vector<WordResult> per_word;
  /// Set instead of the error fields when a sweep cell could not be evaluated.
  std::optional<std::string> failure;
};

/// Predicts senses for every ground-truth word whose count lies in `bucket`
/// and which the embedding knows; unknown words are counted as skipped.
/// Throws DomainError if no word is left to evaluate.
ErrorReport evaluate_bucket(const EmbeddingMatrix& matrix, const GroundTruth& truth,
                            const SenseOptions& options, SenseBucket bucket,
                            std::size_t workers = 1);

struct EmbeddingSource {
  std::optional<std::size_t> dim;  // taken from the file header when absent
  std::filesystem::path path;
};

struct SweepConfig {
  std::vector<EmbeddingSource> embedding_sources;
  std::vector<std::size_t> neighbor_counts;
  std::vector<double> sigma_multipliers{2.0};
  std::vector<SenseBucket> buckets{{2, 9}, {10, 19}};
  Metric metric = Metric::euclidean;
  BarcodeAlgorithm algorithm = BarcodeAlgorithm::spanning_tree;
  std::size_t workers = 1;

  /// Throws UsageError on empty lists or inverted buckets.
  void validate() const;
};

/// One report per (source, k, sigma, bucket) cell, in that nesting order.
/// Cell failures are recorded in the report and do not stop the sweep.
std::vector<ErrorReport> sweep(const SweepConfig& config, const GroundTruth& truth);

nlohmann::ordered_json to_json(const ErrorReport& report);
/// Columns dim,k,sigma,bucket_min,bucket_max,n,n_skipped,relative_error,absolute_error.
void write_summary_csv(std::ostream& out, const std::vector<ErrorReport>& reports);
/// Columns dim,k,bucket,relative_error,absolute_error; failed cells are omitted.
void write_plot_csv(std::ostream& out, const std::vector<ErrorReport>& reports);

}  // namespace tdawsi
