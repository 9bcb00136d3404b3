#include "kornlab/mask.hpp"

#include <cmath>
#include <sstream>

namespace kornlab {

Index DomainMask::neighbor_packed(Index node, int axis, int step) const {
  Extent idx = grid_.node_index(node);
  idx[axis] += step;
  if (!grid_.contains(idx)) return -1;
  return packed_[size_t(grid_.node_id(idx))];
}

DomainMask rasterize(const ShapeDescriptor& shape, const GridSpec& grid) {
  // The shape must fit: its bounding box inside the grid's coordinate range.
  Coord lo, hi;
  shape.bounding_box(grid.dim, lo, hi);
  for (int d = 0; d < grid.dim; ++d) {
    Real gmin = grid.origin[d];
    Real gmax = grid.origin[d] + grid.spacing * Real(grid.extent[d] - 1);
    if (lo[d] < gmin - 1e-12 || hi[d] > gmax + 1e-12)
      throw GeometryError("rasterize: shape exceeds grid extent");
  }

  DomainMask m;
  m.grid_ = grid;
  m.shape_ = shape;
  const Index n = grid.num_nodes();
  std::vector<std::uint8_t> inside(size_t(n), 0);
  for (Index id = 0; id < n; ++id)
    inside[size_t(id)] = shape.contains(grid.node_coord(id), grid.dim) ? 1 : 0;

  m.classes_.assign(size_t(n), NodeClass::Exterior);
  m.packed_.assign(size_t(n), -1);
  m.interior_slot_.assign(size_t(n), -1);

  for (Index id = 0; id < n; ++id) {
    if (!inside[size_t(id)]) continue;
    Extent idx = grid.node_index(id);
    bool exposed = false;
    for (int d = 0; d < grid.dim && !exposed; ++d) {
      for (int s = -1; s <= 1 && !exposed; s += 2) {
        Extent nb = idx;
        nb[d] += s;
        if (!grid.contains(nb) || !inside[size_t(grid.node_id(nb))]) exposed = true;
      }
    }
    m.classes_[size_t(id)] = exposed ? NodeClass::Boundary : NodeClass::Interior;
  }

  for (Index id = 0; id < n; ++id) {
    if (m.classes_[size_t(id)] == NodeClass::Exterior) continue;
    m.packed_[size_t(id)] = Index(m.nodes_.size());
    if (m.classes_[size_t(id)] == NodeClass::Interior) {
      m.interior_slot_[size_t(id)] = Index(m.interior_nodes_.size());
      m.interior_nodes_.push_back(m.packed_[size_t(id)]);
    }
    m.nodes_.push_back(id);
  }
  m.num_interior_ = Index(m.interior_nodes_.size());
  if (m.num_interior_ == 0)
    throw DegenerateDomainError("rasterize: shape has empty interior");

  m.neighbors_.assign(m.nodes_.size(), {-1, -1, -1, -1, -1, -1});
  for (size_t k = 0; k < m.nodes_.size(); ++k) {
    Extent idx = grid.node_index(m.nodes_[k]);
    for (int d = 0; d < grid.dim; ++d) {
      for (int s = 0; s < 2; ++s) {
        Extent nb = idx;
        nb[d] += (s ? 1 : -1);
        if (grid.contains(nb))
          m.neighbors_[k][size_t(2 * d + s)] = m.packed_[size_t(grid.node_id(nb))];
      }
    }
  }

  // Staircase surface weights: h^(N-1) per exposed face.
  Real face = 1.0;
  for (int d = 0; d < grid.dim - 1; ++d) face *= grid.spacing;
  m.boundary_weights_.assign(m.nodes_.size(), 0.0);
  for (size_t k = 0; k < m.nodes_.size(); ++k) {
    Index id = m.nodes_[k];
    if (m.classes_[size_t(id)] != NodeClass::Boundary) continue;
    Extent idx = grid.node_index(id);
    int exposed = 0;
    for (int d = 0; d < grid.dim; ++d) {
      for (int s = -1; s <= 1; s += 2) {
        Extent nb = idx;
        nb[d] += s;
        if (!grid.contains(nb) || !inside[size_t(grid.node_id(nb))]) ++exposed;
      }
    }
    m.boundary_weights_[k] = face * Real(exposed);
    m.boundary_weight_total_ += m.boundary_weights_[k];
  }
  m.boundary_exact_ = shape.is_axis_box();

  if (auto d = shape.exact_diameter(grid.dim)) {
    m.diameter_ = *d;
  } else {
    // Pairwise over boundary nodes; the diameter is attained on the boundary.
    Real best = 0.0;
    std::vector<Index> bnodes;
    for (Index id : m.nodes_)
      if (m.classes_[size_t(id)] == NodeClass::Boundary) bnodes.push_back(id);
    for (size_t i = 0; i < bnodes.size(); ++i) {
      Coord xi = grid.node_coord(bnodes[i]);
      for (size_t j = i + 1; j < bnodes.size(); ++j) {
        Coord xj = grid.node_coord(bnodes[j]);
        Real s = 0.0;
        for (int d = 0; d < grid.dim; ++d) s += (xi[d] - xj[d]) * (xi[d] - xj[d]);
        if (s > best) best = s;
      }
    }
    m.diameter_ = std::sqrt(best);
  }
  return m;
}

MaskPtr rasterize_covering(const ShapeDescriptor& shape, int dim, Real h,
                           Index margin) {
  Coord lo, hi;
  shape.bounding_box(dim, lo, hi);
  GridSpec g = GridSpec::covering(dim, h, lo, hi, margin);
  return std::make_shared<DomainMask>(rasterize(shape, g));
}

std::string DomainMask::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "# kornlab mask csv v1\n";
  os << "x,y,z,label\n";
  static const char* names[] = {"exterior", "boundary", "interior"};
  for (Index id = 0; id < grid_.num_nodes(); ++id) {
    Coord x = grid_.node_coord(id);
    os << x[0] << "," << x[1] << "," << x[2] << ","
       << names[int(classes_[size_t(id)])] << "\n";
  }
  return os.str();
}

}  // namespace kornlab
