#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tdawsi/embedding_store.hpp"

namespace tdawsi {

struct WeightedEdge {
  std::size_t i;
  std::size_t j;
  double weight;
};

/// An edge of the complete graph on the cloud, annotated with the 1-based
/// rank of its weight among the distinct pairwise distances.
struct FiltrationEdge {
  std::size_t i;
  std::size_t j;
  double weight;
  std::size_t filtration_index;

  friend bool operator==(const FiltrationEdge&, const FiltrationEdge&) = default;
};

/// All pairwise edges of a finite metric space in filtration order:
/// ascending weight, ties by lexicographic (i, j).
class FiltrationEdgeList {
 public:
  /// Takes any complete set of edges over `vertex_count` vertices (endpoint
  /// order irrelevant) and sorts, deduplicates and validates them.
  /// Throws DomainError on missing/duplicate pairs, self loops, negative or
  /// non-finite weights.
  FiltrationEdgeList(std::size_t vertex_count, std::vector<WeightedEdge> edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  const std::vector<FiltrationEdge>& edges() const noexcept { return edges_; }
  /// The sorted, deduplicated distance list. distinct_weights()[a - 1] is the
  /// weight of filtration index a.
  const std::vector<double>& distinct_weights() const noexcept { return distinct_; }
  double weight_of_index(std::size_t filtration_index) const;

 private:
  std::size_t vertex_count_;
  std::vector<FiltrationEdge> edges_;
  std::vector<double> distinct_;
};

/// Distances between every pair of cloud points. Throws DomainError on
/// non-finite coordinates.
FiltrationEdgeList build_filtration(const PointCloud& cloud, Metric metric);

struct FiniteBar {
  double birth = 0.0;
  double death;
  std::size_t death_index;  // filtration index of the killing edge

  friend bool operator==(const FiniteBar&, const FiniteBar&) = default;
};

/// Zero-dimensional barcode: finite bars sorted by (death, death_index) plus
/// the number of components that never die.
struct PersistenceDiagram {
  std::vector<FiniteBar> finite_bars;
  std::size_t essential_count = 0;

  std::vector<double> deaths() const;
  std::size_t bar_count() const noexcept { return finite_bars.size() + essential_count; }

  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

/// Sparse entry t^exponent in a given row.
struct MatrixEntry {
  std::size_t row;
  std::size_t exponent;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Vertex-by-edge boundary matrix over polynomials in t with 0/1 coefficients.
/// Column c holds the endpoints of the c-th edge in filtration order, both at
/// exponent equal to the edge's filtration index. Rows within a column are kept
/// ascending, so the lowest nonzero entry is the last one.
class ReductionMatrix {
 public:
  explicit ReductionMatrix(const FiltrationEdgeList& filtration);

  std::size_t column_count() const noexcept { return columns_.size(); }
  std::size_t row_count() const noexcept { return rows_; }
  const std::vector<MatrixEntry>& column(std::size_t c) const { return columns_.at(c); }
  std::optional<std::size_t> lowest_row(std::size_t c) const;

  /// Left-to-right reduction: while an earlier column has the same lowest row,
  /// add it to the current column. Addition is symmetric difference on rows;
  /// the earlier column is first shifted by t^(a_current - a_earlier), so every
  /// entry of a column keeps that column's exponent.
  void reduce();
  bool reduced() const noexcept { return reduced_; }

  /// True when no two nonzero columns share a lowest row.
  bool has_distinct_pivots() const;
  /// Nonzero columns, ascending.
  std::vector<std::size_t> pivot_columns() const;

 private:
  void add_column(std::size_t source, std::size_t target);

  std::size_t rows_;
  std::vector<std::vector<MatrixEntry>> columns_;
  bool reduced_ = false;
};

/// Barcode by literal boundary-matrix reduction: each surviving pivot t^b
/// gives the interval (0, b), reported as the weight of filtration index b.
PersistenceDiagram reduce_barcode(const FiltrationEdgeList& filtration);

/// Barcode by union-find over edges in filtration order (Kruskal); every
/// merge emits a finite bar at that edge's weight.
PersistenceDiagram mst_barcode(const FiltrationEdgeList& filtration);

enum class BarcodeAlgorithm { spanning_tree, matrix_reduction };

PersistenceDiagram compute_barcode(const FiltrationEdgeList& filtration, BarcodeAlgorithm algorithm);

enum class DeathUnits { distance, filtration_index };

/// CSV "bar_id,birth,death,essential": finite bars first in diagram order,
/// then essential bars with an empty death field.
void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diagram,
                       DeathUnits units = DeathUnits::distance);

}  // namespace tdawsi
