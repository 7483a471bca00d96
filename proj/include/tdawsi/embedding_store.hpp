#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tdawsi {

enum class Metric { euclidean, cosine };

std::string_view to_string(Metric metric);
/// Accepts "euclidean" or "cosine"; throws UsageError otherwise.
Metric parse_metric(std::string_view name);

/// Euclidean distance, or cosine distance 1 - cos(a, b) clamped to [0, 2].
/// Cosine distance involving a zero vector throws DomainError.
double distance(std::span<const double> a, std::span<const double> b, Metric metric);

/// Vocabulary-indexed dense vectors, immutable after construction.
class EmbeddingMatrix {
 public:
  /// `values` is row-major, tokens.size() rows of `dim` components.
  /// Throws FormatError on duplicate tokens, size mismatch or non-finite values.
  EmbeddingMatrix(std::vector<std::string> tokens, std::vector<double> values, std::size_t dim);

  std::size_t size() const noexcept { return tokens_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::string& token(std::size_t index) const { return tokens_.at(index); }
  std::span<const double> row(std::size_t index) const;

  std::optional<std::size_t> find(std::string_view word) const;
  /// Like find(), but an unknown word throws DomainError.
  std::size_t index_of(std::string_view word) const;

  friend bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
    return a.dim_ == b.dim_ && a.tokens_ == b.tokens_ && a.values_ == b.values_;
  }

 private:
  std::vector<std::string> tokens_;
  std::vector<double> values_;
  std::size_t dim_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// A word's local neighbourhood: the query word plus its nearest neighbours.
struct PointCloud {
  std::vector<std::string> labels;
  std::vector<double> coords;  // row-major, labels.size() x dim
  std::size_t dim = 0;
  std::size_t center_index = 0;

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const double> point(std::size_t index) const { return {coords.data() + index * dim, dim}; }

  /// Builds a cloud from row-major coordinates; throws DomainError if the
  /// shape is inconsistent, labels repeat or center_index is out of range.
  static PointCloud from_rows(std::vector<std::string> labels, std::vector<double> coords,
                              std::size_t dim, std::size_t center_index = 0);
  /// Same, with labels "p0", "p1", ...
  static PointCloud unlabeled(std::vector<double> coords, std::size_t dim,
                              std::size_t center_index = 0);

  /// Copy of this cloud without point `index`. Throws DomainError if that would leave it empty.
  PointCloud without(std::size_t index) const;
};

/// Reads the plain-text "N d" header format. Errors carry the offending line number.
EmbeddingMatrix load_embeddings(std::istream& in);
EmbeddingMatrix load_embeddings_file(const std::filesystem::path& path);
/// Writes with round-trip precision so load_embeddings() restores the exact values.
void write_embeddings(std::ostream& out, const EmbeddingMatrix& matrix);

/// Exact k-nearest-neighbour query. The returned cloud has k + 1 points: the
/// query word first (center_index 0), then neighbours by ascending distance,
/// ties broken by ascending vocabulary index.
PointCloud k_nearest(const EmbeddingMatrix& matrix, std::string_view word, std::size_t k,
                     Metric metric);

}  // namespace tdawsi
