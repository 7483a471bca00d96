#include "tdawsi/evaluation.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include "tdawsi/error.hpp"
#include "tdawsi/format.hpp"
#include "tdawsi/parallel.hpp"

namespace tdawsi {

GroundTruth::GroundTruth(std::map<std::string, int> counts) : counts_(std::move(counts)) {
  for (const auto& [token, count] : counts_) {
    if (count < 1) throw DomainError("sense count for '" + token + "' must be positive");
  }
}

std::optional<int> GroundTruth::count(const std::string& token) const {
  auto it = counts_.find(token);
  if (it == counts_.end()) return std::nullopt;
  return it->second;
}

GroundTruth load_ground_truth(std::istream& in) {
  std::map<std::string, int> counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || line.find('\t', tab + 1) != std::string::npos) {
      throw FormatError("expected \"token<TAB>count\"", line_no);
    }
    std::string token = line.substr(0, tab);
    const auto count = parse_number<int>(std::string_view(line).substr(tab + 1));
    if (!count) throw FormatError("invalid sense count '" + line.substr(tab + 1) + "'", line_no);
    if (*count < 1) throw FormatError("nonpositive sense count for '" + token + "'", line_no);
    if (!counts.emplace(token, *count).second) {
      throw FormatError("duplicate token '" + token + "'", line_no);
    }
  }
  return GroundTruth(std::move(counts));
}

GroundTruth load_ground_truth_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ground-truth file '" + path.string() + "'");
  try {
    return load_ground_truth(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what(), 0);
  }
}

void write_ground_truth(std::ostream& out, const GroundTruth& truth) {
  for (const auto& [token, count] : truth.counts()) out << token << '\t' << count << '\n';
}

namespace {

void check_vectors(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.empty()) throw DomainError("error metrics need at least one word");
  if (truth.size() != predicted.size()) {
    throw DomainError("truth and prediction lengths differ (" + std::to_string(truth.size()) +
                      " vs " + std::to_string(predicted.size()) + ")");
  }
  for (int g : truth) {
    if (g < 1) throw DomainError("ground-truth sense counts must be positive");
  }
}

}  // namespace

double relative_error(std::span<const int> truth, std::span<const int> predicted) {
  check_vectors(truth, predicted);
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    sum += std::abs(static_cast<double>(truth[i]) - predicted[i]) / truth[i];
  }
  return sum / static_cast<double>(truth.size());
}

double absolute_error(std::span<const int> truth, std::span<const int> predicted) {
  check_vectors(truth, predicted);
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    sum += std::abs(static_cast<double>(truth[i]) - predicted[i]);
  }
  return sum / static_cast<double>(truth.size());
}

std::string SenseBucket::label() const {
  return std::to_string(min_senses) + "-" + std::to_string(max_senses);
}

SenseBucket SenseBucket::parse(const std::string& text) {
  const auto dash = text.find('-');
  if (dash != std::string::npos) {
    const auto lo = parse_number<int>(std::string_view(text).substr(0, dash));
    const auto hi = parse_number<int>(std::string_view(text).substr(dash + 1));
    if (lo && hi && *lo >= 1 && *lo <= *hi) return {*lo, *hi};
  }
  throw UsageError("invalid bucket '" + text + "' (expected MIN-MAX with 1 <= MIN <= MAX)");
}

ErrorReport evaluate_bucket(const EmbeddingMatrix& matrix, const GroundTruth& truth,
                            const SenseOptions& options, SenseBucket bucket, std::size_t workers) {
  if (bucket.min_senses < 1 || bucket.min_senses > bucket.max_senses) {
    throw DomainError("invalid bucket " + bucket.label());
  }
  if (options.k == 0 || options.k >= matrix.size()) {
    throw DomainError("k = " + std::to_string(options.k) + " must lie in [1, " +
                      std::to_string(matrix.size() - 1) + "] for this vocabulary");
  }
  ErrorReport report;
  report.embedding_dim = matrix.dim();
  report.k = options.k;
  report.sigma_multiplier = options.sigma_multiplier;
  report.bucket = bucket;

  for (const auto& [word, count] : truth.counts()) {
    if (!bucket.contains(count)) continue;
    if (matrix.find(word)) {
      report.per_word.push_back({word, count, 0});
    } else {
      ++report.n_skipped_oov;
    }
  }
  if (report.per_word.empty()) {
    throw DomainError("no in-vocabulary ground-truth words in bucket " + bucket.label() + " (" +
                      std::to_string(report.n_skipped_oov) + " skipped as out of vocabulary)");
  }

  parallel_for(report.per_word.size(), workers, [&](std::size_t i) {
    auto& result = report.per_word[i];
    result.predicted = static_cast<int>(estimate_senses(matrix, result.word, options).predicted_senses);
  });

  std::vector<int> g, predicted;
  for (const auto& r : report.per_word) {
    g.push_back(r.truth);
    predicted.push_back(r.predicted);
  }
  report.n_evaluated = report.per_word.size();
  report.relative_error = relative_error(g, predicted);
  report.absolute_error = absolute_error(g, predicted);
  return report;
}

void SweepConfig::validate() const {
  if (embedding_sources.empty()) throw UsageError("sweep needs at least one embedding source");
  if (neighbor_counts.empty()) throw UsageError("sweep needs at least one neighbour count");
  if (sigma_multipliers.empty()) throw UsageError("sweep needs at least one sigma multiplier");
  if (buckets.empty()) throw UsageError("sweep needs at least one bucket");
  for (const auto& b : buckets) {
    if (b.min_senses < 1 || b.min_senses > b.max_senses) throw UsageError("invalid bucket " + b.label());
  }
  for (double s : sigma_multipliers) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw UsageError("sigma multipliers must be nonnegative");
  }
  if (workers == 0) throw UsageError("worker count must be positive");
}

std::vector<ErrorReport> sweep(const SweepConfig& config, const GroundTruth& truth) {
  config.validate();
  std::vector<ErrorReport> reports;
  for (const auto& source : config.embedding_sources) {
    std::optional<EmbeddingMatrix> matrix;
    std::string load_failure;
    try {
      matrix = load_embeddings_file(source.path);
      if (source.dim && *source.dim != matrix->dim()) {
        load_failure = source.path.string() + ": declared dimension " + std::to_string(*source.dim) +
                       " but the file has " + std::to_string(matrix->dim());
        matrix.reset();
      }
    } catch (const Error& e) {
      load_failure = e.what();
    }
    const std::size_t dim = matrix ? matrix->dim() : source.dim.value_or(0);

    for (std::size_t k : config.neighbor_counts) {
      for (double sigma : config.sigma_multipliers) {
        for (const auto& bucket : config.buckets) {
          const SenseOptions options{k, sigma, config.metric, config.algorithm};
          try {
            if (!matrix) throw DomainError(load_failure);
            reports.push_back(evaluate_bucket(*matrix, truth, options, bucket, config.workers));
          } catch (const Error& e) {
            ErrorReport failed;
            failed.embedding_dim = dim;
            failed.k = k;
            failed.sigma_multiplier = sigma;
            failed.bucket = bucket;
            failed.failure = e.what();
            reports.push_back(std::move(failed));
          }
        }
      }
    }
  }
  return reports;
}

nlohmann::ordered_json to_json(const ErrorReport& report) {
  nlohmann::ordered_json j;
  j["embedding_dim"] = report.embedding_dim;
  j["k"] = report.k;
  j["sigma_multiplier"] = report.sigma_multiplier;
  j["bucket"] = {{"min_senses", report.bucket.min_senses}, {"max_senses", report.bucket.max_senses}};
  j["n_evaluated"] = report.n_evaluated;
  j["n_skipped_oov"] = report.n_skipped_oov;
  if (report.failure) {
    j["failure"] = *report.failure;
    return j;
  }
  j["relative_error"] = report.relative_error;
  j["absolute_error"] = report.absolute_error;
  auto& words = j["per_word"] = nlohmann::ordered_json::array();
  for (const auto& r : report.per_word) {
    words.push_back({{"word", r.word}, {"truth", r.truth}, {"predicted", r.predicted}});
  }
  return j;
}

void write_summary_csv(std::ostream& out, const std::vector<ErrorReport>& reports) {
  out << "dim,k,sigma,bucket_min,bucket_max,n,n_skipped,relative_error,absolute_error\n";
  for (const auto& r : reports) {
    out << r.embedding_dim << ',' << r.k << ',' << format_double(r.sigma_multiplier) << ','
        << r.bucket.min_senses << ',' << r.bucket.max_senses << ',' << r.n_evaluated << ','
        << r.n_skipped_oov << ',';
    if (r.failure) {
      out << ",\n";
    } else {
      out << format_double(r.relative_error) << ',' << format_double(r.absolute_error) << '\n';
    }
  }
}

void write_plot_csv(std::ostream& out, const std::vector<ErrorReport>& reports) {
  out << "dim,k,bucket,relative_error,absolute_error\n";
  for (const auto& r : reports) {
    if (r.failure) continue;
    out << r.embedding_dim << ',' << r.k << ',' << r.bucket.label() << ','
        << format_double(r.relative_error) << ',' << format_double(r.absolute_error) << '\n';
  }
}

}  // namespace tdawsi
