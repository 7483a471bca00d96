#include "tdawsi/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <tuple>

#include "tdawsi/disjoint_set.hpp"
#include "tdawsi/error.hpp"
#include "tdawsi/format.hpp"

namespace tdawsi {

namespace {

void sort_bars(std::vector<FiniteBar>& bars) {
  std::sort(bars.begin(), bars.end(), [](const FiniteBar& a, const FiniteBar& b) {
    return std::tie(a.death, a.death_index) < std::tie(b.death, b.death_index);
  });
}

}  // namespace

FiltrationEdgeList::FiltrationEdgeList(std::size_t vertex_count, std::vector<WeightedEdge> edges)
    : vertex_count_(vertex_count) {
  if (vertex_count == 0) throw DomainError("filtration needs at least one vertex");
  const std::size_t expected = vertex_count * (vertex_count - 1) / 2;
  if (edges.size() != expected) {
    throw DomainError("complete graph on " + std::to_string(vertex_count) + " vertices has " +
                      std::to_string(expected) + " edges, got " + std::to_string(edges.size()));
  }
  std::vector<bool> present(vertex_count * vertex_count, false);
  for (auto& e : edges) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i == e.j || e.j >= vertex_count) throw DomainError("invalid edge endpoints");
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw DomainError("edge weights must be finite and nonnegative");
    }
    const std::size_t slot = e.i * vertex_count + e.j;
    if (present[slot]) throw DomainError("duplicate edge");
    present[slot] = true;
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.weight, a.i, a.j) < std::tie(b.weight, b.i, b.j);
  });

  edges_.reserve(edges.size());
  for (const auto& e : edges) {
    if (distinct_.empty() || distinct_.back() != e.weight) distinct_.push_back(e.weight);
    edges_.push_back({e.i, e.j, e.weight, distinct_.size()});
  }
}

double FiltrationEdgeList::weight_of_index(std::size_t filtration_index) const {
  if (filtration_index == 0 || filtration_index > distinct_.size()) {
    throw DomainError("filtration index out of range");
  }
  return distinct_[filtration_index - 1];
}

FiltrationEdgeList build_filtration(const PointCloud& cloud, Metric metric) {
  if (cloud.size() == 0) throw DomainError("cannot build a filtration from an empty cloud");
  for (double v : cloud.coords) {
    if (!std::isfinite(v)) throw DomainError("non-finite coordinate in point cloud");
  }
  const std::size_t n = cloud.size();
  std::vector<WeightedEdge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.push_back({i, j, distance(cloud.point(i), cloud.point(j), metric)});
    }
  }
  return FiltrationEdgeList(n, std::move(edges));
}

std::vector<double> PersistenceDiagram::deaths() const {
  std::vector<double> out;
  out.reserve(finite_bars.size());
  for (const auto& bar : finite_bars) out.push_back(bar.death);
  return out;
}

ReductionMatrix::ReductionMatrix(const FiltrationEdgeList& filtration)
    : rows_(filtration.vertex_count()) {
  columns_.reserve(filtration.edges().size());
  for (const auto& e : filtration.edges()) {
    columns_.push_back({{e.i, e.filtration_index}, {e.j, e.filtration_index}});
  }
}

std::optional<std::size_t> ReductionMatrix::lowest_row(std::size_t c) const {
  const auto& col = columns_.at(c);
  if (col.empty()) return std::nullopt;
  return col.back().row;
}

void ReductionMatrix::add_column(std::size_t source, std::size_t target) {
  const auto& src = columns_[source];
  auto& dst = columns_[target];
  const std::size_t exponent = dst.front().exponent;
  std::vector<MatrixEntry> sum;
  sum.reserve(src.size() + dst.size());
  std::size_t a = 0, b = 0;
  while (a < src.size() || b < dst.size()) {
    if (b == dst.size() || (a < src.size() && src[a].row < dst[b].row)) {
      sum.push_back({src[a++].row, exponent});
    } else if (a == src.size() || dst[b].row < src[a].row) {
      sum.push_back(dst[b++]);
    } else {
      ++a;  // 1 + 1 = 0
      ++b;
    }
  }
  dst = std::move(sum);
}

void ReductionMatrix::reduce() {
  if (reduced_) return;
  std::vector<std::optional<std::size_t>> pivot_of_row(rows_);
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    while (!columns_[c].empty()) {
      const auto& owner = pivot_of_row[columns_[c].back().row];
      if (!owner) break;
      add_column(*owner, c);
    }
    if (!columns_[c].empty()) pivot_of_row[columns_[c].back().row] = c;
  }
  reduced_ = true;
}

bool ReductionMatrix::has_distinct_pivots() const {
  std::vector<bool> used(rows_, false);
  for (const auto& col : columns_) {
    if (col.empty()) continue;
    if (used[col.back().row]) return false;
    used[col.back().row] = true;
  }
  return true;
}

std::vector<std::size_t> ReductionMatrix::pivot_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (!columns_[c].empty()) out.push_back(c);
  }
  return out;
}

PersistenceDiagram reduce_barcode(const FiltrationEdgeList& filtration) {
  ReductionMatrix matrix(filtration);
  matrix.reduce();
  PersistenceDiagram diagram;
  for (std::size_t c : matrix.pivot_columns()) {
    const std::size_t exponent = matrix.column(c).back().exponent;
    diagram.finite_bars.push_back({0.0, filtration.weight_of_index(exponent), exponent});
  }
  sort_bars(diagram.finite_bars);
  diagram.essential_count = filtration.vertex_count() - diagram.finite_bars.size();
  return diagram;
}

PersistenceDiagram mst_barcode(const FiltrationEdgeList& filtration) {
  DisjointSet components(filtration.vertex_count());
  PersistenceDiagram diagram;
  for (const auto& e : filtration.edges()) {
    if (components.unite(e.i, e.j)) {
      diagram.finite_bars.push_back({0.0, e.weight, e.filtration_index});
      if (components.components() == 1) break;
    }
  }
  sort_bars(diagram.finite_bars);
  diagram.essential_count = components.components();
  return diagram;
}

PersistenceDiagram compute_barcode(const FiltrationEdgeList& filtration, BarcodeAlgorithm algorithm) {
  return algorithm == BarcodeAlgorithm::matrix_reduction ? reduce_barcode(filtration)
                                                         : mst_barcode(filtration);
}

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diagram, DeathUnits units) {
  out << "bar_id,birth,death,essential\n";
  std::size_t id = 0;
  for (const auto& bar : diagram.finite_bars) {
    out << id++ << ',' << format_double(bar.birth) << ',';
    if (units == DeathUnits::distance) {
      out << format_double(bar.death);
    } else {
      out << bar.death_index;
    }
    out << ",0\n";
  }
  for (std::size_t e = 0; e < diagram.essential_count; ++e) out << id++ << ",0,,1\n";
}

}  // namespace tdawsi
