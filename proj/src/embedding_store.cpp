#include "tdawsi/embedding_store.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>
#include <utility>

#include "tdawsi/error.hpp"
#include "tdawsi/format.hpp"

namespace tdawsi {

namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::euclidean:
      return "euclidean";
    case Metric::cosine:
      return "cosine";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "cosine") return Metric::cosine;
  throw UsageError("unknown metric '" + std::string(name) + "' (expected euclidean or cosine)");
}

double distance(std::span<const double> a, std::span<const double> b, Metric metric) {
  if (metric == Metric::euclidean) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double diff = a[i] - b[i];
      sum += diff * diff;
    }
    return std::sqrt(sum);
  }
  double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    norm_a += a[i] * a[i];
    norm_b += b[i] * b[i];
  }
  if (norm_a == 0.0 || norm_b == 0.0) throw DomainError("cosine distance is undefined for a zero vector");
  const double cos = dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
  return std::clamp(1.0 - cos, 0.0, 2.0);
}

EmbeddingMatrix::EmbeddingMatrix(std::vector<std::string> tokens, std::vector<double> values,
                                 std::size_t dim)
    : tokens_(std::move(tokens)), values_(std::move(values)), dim_(dim) {
  if (dim_ == 0) throw FormatError("embedding dimension must be positive", 0);
  if (values_.size() != tokens_.size() * dim_) {
    throw FormatError("expected " + std::to_string(tokens_.size() * dim_) + " components, got " +
                          std::to_string(values_.size()),
                      0);
  }
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) {
      throw FormatError("duplicate token '" + tokens_[i] + "'", 0);
    }
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw FormatError("non-finite embedding component", 0);
  }
}

std::span<const double> EmbeddingMatrix::row(std::size_t index) const {
  if (index >= size()) throw DomainError("row index out of range");
  return {values_.data() + index * dim_, dim_};
}

std::optional<std::size_t> EmbeddingMatrix::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t EmbeddingMatrix::index_of(std::string_view word) const {
  if (auto index = find(word)) return *index;
  throw DomainError("unknown word '" + std::string(word) + "'");
}

PointCloud PointCloud::from_rows(std::vector<std::string> labels, std::vector<double> coords,
                                 std::size_t dim, std::size_t center_index) {
  if (labels.empty()) throw DomainError("point cloud must contain at least one point");
  if (dim == 0 || coords.size() != labels.size() * dim) {
    throw DomainError("point cloud coordinates do not match labels x dim");
  }
  if (center_index >= labels.size()) throw DomainError("center index out of range");
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) throw DomainError("duplicate point label '" + label + "'");
  }
  PointCloud cloud;
  cloud.labels = std::move(labels);
  cloud.coords = std::move(coords);
  cloud.dim = dim;
  cloud.center_index = center_index;
  return cloud;
}

PointCloud PointCloud::unlabeled(std::vector<double> coords, std::size_t dim,
                                 std::size_t center_index) {
  const std::size_t n = dim == 0 ? 0 : coords.size() / dim;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return from_rows(std::move(labels), std::move(coords), dim, center_index);
}

PointCloud PointCloud::without(std::size_t index) const {
  if (index >= size()) throw DomainError("point index out of range");
  if (size() == 1) throw DomainError("cannot remove the only point of a cloud");
  PointCloud out;
  out.dim = dim;
  out.center_index = center_index > index ? center_index - 1 : (center_index == index ? 0 : center_index);
  for (std::size_t i = 0; i < size(); ++i) {
    if (i == index) continue;
    out.labels.push_back(labels[i]);
    auto p = point(i);
    out.coords.insert(out.coords.end(), p.begin(), p.end());
  }
  return out;
}

EmbeddingMatrix load_embeddings(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw FormatError("missing header line", 1);
  ++line_no;
  const auto header = split_spaces(strip_cr(line));
  if (header.size() != 2) throw FormatError("header must be \"N d\"", line_no);
  const auto count = parse_number<std::size_t>(header[0]);
  const auto dim = parse_number<std::size_t>(header[1]);
  if (!count || !dim || *count == 0 || *dim == 0) {
    throw FormatError("header must hold two positive integers", line_no);
  }

  std::vector<std::string> tokens;
  std::vector<double> values;
  tokens.reserve(*count);
  values.reserve(*count * *dim);
  std::unordered_set<std::string> seen;
  while (tokens.size() < *count && std::getline(in, line)) {
    ++line_no;
    const auto fields = split_spaces(strip_cr(line));
    if (fields.empty()) throw FormatError("empty row", line_no);
    if (fields.size() != *dim + 1) {
      throw FormatError("expected " + std::to_string(*dim) + " components, got " +
                            std::to_string(fields.size() - 1),
                        line_no);
    }
    std::string token(fields[0]);
    if (!seen.insert(token).second) throw FormatError("duplicate token '" + token + "'", line_no);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const auto v = parse_number<double>(fields[c]);
      if (!v) throw FormatError("invalid number '" + std::string(fields[c]) + "'", line_no);
      if (!std::isfinite(*v)) throw FormatError("non-finite value", line_no);
      values.push_back(*v);
    }
    tokens.push_back(std::move(token));
  }
  if (tokens.size() != *count) {
    throw FormatError("header declares " + std::to_string(*count) + " rows, found " +
                          std::to_string(tokens.size()),
                      line_no);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!split_spaces(strip_cr(line)).empty()) {
      throw FormatError("rows beyond the " + std::to_string(*count) + " declared in the header",
                        line_no);
    }
  }
  return EmbeddingMatrix(std::move(tokens), std::move(values), *dim);
}

EmbeddingMatrix load_embeddings_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embeddings file '" + path.string() + "'");
  try {
    return load_embeddings(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what(), 0);
  }
}

void write_embeddings(std::ostream& out, const EmbeddingMatrix& matrix) {
  out << matrix.size() << ' ' << matrix.dim() << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << matrix.token(i);
    for (double v : matrix.row(i)) out << ' ' << format_double(v);
    out << '\n';
  }
}

PointCloud k_nearest(const EmbeddingMatrix& matrix, std::string_view word, std::size_t k,
                     Metric metric) {
  const std::size_t query = matrix.index_of(word);
  if (k >= matrix.size()) {
    throw DomainError("k = " + std::to_string(k) + " must be smaller than the vocabulary size " +
                      std::to_string(matrix.size()));
  }
  std::vector<std::pair<double, std::size_t>> candidates;
  candidates.reserve(matrix.size() - 1);
  const auto center = matrix.row(query);
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (i != query) candidates.emplace_back(distance(center, matrix.row(i), metric), i);
  }
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                    candidates.end());

  std::vector<std::string> labels{matrix.token(query)};
  std::vector<double> coords(center.begin(), center.end());
  for (std::size_t n = 0; n < k; ++n) {
    const std::size_t i = candidates[n].second;
    labels.push_back(matrix.token(i));
    auto row = matrix.row(i);
    coords.insert(coords.end(), row.begin(), row.end());
  }
  return PointCloud::from_rows(std::move(labels), std::move(coords), matrix.dim(), 0);
}

}  // namespace tdawsi
