#pragma once

#include "kornlab/grid.hpp"
#include "kornlab/shape.hpp"

#include <memory>
#include <vector>

namespace kornlab {

enum class NodeClass : std::uint8_t { Exterior = 0, Boundary = 1, Interior = 2 };

/// Rasterized domain: per-node classification on a uniform grid.
///
/// A node is "inside" when the shape's membership predicate holds at its
/// coordinates; inside nodes with an outside (or out-of-grid) axis neighbor
/// are Boundary, the remaining inside nodes Interior.  Fields live on the
/// non-exterior nodes; zero-boundary degrees of freedom live on the interior
/// nodes.  Both packings are lexicographic by node id.
class DomainMask {
 public:
  const GridSpec& grid() const { return grid_; }
  int dim() const { return grid_.dim; }
  Real spacing() const { return grid_.spacing; }

  NodeClass classify(Index node) const { return classes_[size_t(node)]; }
  bool is_exterior(Index node) const { return classes_[size_t(node)] == NodeClass::Exterior; }

  Index num_nodes() const { return Index(nodes_.size()); }          // non-exterior
  Index num_interior() const { return num_interior_; }
  Index num_boundary() const { return Index(nodes_.size()) - num_interior_; }

  /// k-th non-exterior node id (lexicographic order).
  Index node(Index k) const { return nodes_[size_t(k)]; }
  /// Inverse map: node id -> packed index, or -1 for exterior nodes.
  Index packed(Index node) const { return packed_[size_t(node)]; }
  /// Packed index of the k-th interior node, and node id -> interior slot.
  Index interior_node(Index k) const { return interior_nodes_[size_t(k)]; }
  Index interior_slot(Index node) const { return interior_slot_[size_t(node)]; }

  Coord coord(Index node) const { return grid_.node_coord(node); }

  /// Packed index of the axis neighbor of the k-th non-exterior node in
  /// direction `axis` (step = +1 or -1); -1 when the neighbor is exterior or
  /// out of grid.  Table-backed, O(1).
  Index neighbor(Index k, int axis, int step) const {
    return neighbors_[size_t(k)][size_t(2 * axis + (step > 0 ? 1 : 0))];
  }
  Index neighbor_packed(Index node, int axis, int step) const;

  /// Staircase surface weights: per non-exterior node, h^(N-1) times the
  /// number of exposed faces (0 for interior nodes).
  const std::vector<Real>& boundary_weights() const { return boundary_weights_; }
  Real boundary_weight_total() const { return boundary_weight_total_; }
  /// True when the staircase measure is the exact surface measure
  /// (axis-aligned box shapes).
  bool boundary_exact() const { return boundary_exact_; }

  /// Maximum distance between non-exterior node coordinates; primitive shapes
  /// use their closed-form diameter instead.
  Real diameter() const { return diameter_; }

  Real volume_estimate() const { return Real(num_interior_) * grid_.cell_volume(); }

  const ShapeDescriptor& shape() const { return shape_; }

  /// CSV export: one row per grid node with coordinates and label.
  std::string to_csv() const;

  friend DomainMask rasterize(const ShapeDescriptor& shape, const GridSpec& grid);

 private:
  GridSpec grid_;
  ShapeDescriptor shape_ = ShapeDescriptor::unit_box(2);
  std::vector<NodeClass> classes_;       // per grid node
  std::vector<Index> packed_;            // per grid node, -1 if exterior
  std::vector<Index> interior_slot_;     // per grid node, -1 if not interior
  std::vector<Index> nodes_;             // packed non-exterior node ids
  std::vector<Index> interior_nodes_;    // packed indices of interior nodes
  std::vector<std::array<Index, 6>> neighbors_;  // per packed node, [2*axis+dir]
  std::vector<Real> boundary_weights_;   // per packed node
  Index num_interior_ = 0;
  Real boundary_weight_total_ = 0.0;
  bool boundary_exact_ = false;
  Real diameter_ = 0.0;
};

using MaskPtr = std::shared_ptr<const DomainMask>;

/// Classify every node of `grid` against `shape`.
/// Throws GeometryError when the shape's bounding box does not fit in the
/// grid, DegenerateDomainError when no interior node remains.
DomainMask rasterize(const ShapeDescriptor& shape, const GridSpec& grid);

/// Convenience: rasterize on a grid covering the shape with one margin layer.
MaskPtr rasterize_covering(const ShapeDescriptor& shape, int dim, Real h,
                           Index margin = 1);

}  // namespace kornlab
