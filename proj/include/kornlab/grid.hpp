#pragma once

#include "kornlab/types.hpp"

namespace kornlab {

/// Uniform node-centered grid in R^N, N in {1,2,3}.  Node (i,j,k) sits at
/// origin + h*(i,j,k); extent counts nodes per axis.
struct GridSpec {
  int dim = 2;
  Real spacing = 1.0;
  Coord origin{0.0, 0.0, 0.0};
  Extent extent{2, 2, 1};

  GridSpec() = default;
  GridSpec(int N, Real h, Coord org, Extent ext);

  Index num_nodes() const {
    Index n = 1;
    for (int d = 0; d < dim; ++d) n *= extent[d];
    return n;
  }

  /// Lexicographic node id: first axis fastest.
  Index node_id(const Extent& idx) const {
    Index id = 0;
    for (int d = dim - 1; d >= 0; --d) id = id * extent[d] + idx[d];
    return id;
  }

  Extent node_index(Index id) const {
    Extent idx{0, 0, 0};
    for (int d = 0; d < dim; ++d) {
      idx[d] = id % extent[d];
      id /= extent[d];
    }
    return idx;
  }

  Coord node_coord(const Extent& idx) const {
    Coord x{0.0, 0.0, 0.0};
    for (int d = 0; d < dim; ++d) x[d] = origin[d] + spacing * Real(idx[d]);
    return x;
  }

  Coord node_coord(Index id) const { return node_coord(node_index(id)); }

  bool contains(const Extent& idx) const {
    for (int d = 0; d < dim; ++d)
      if (idx[d] < 0 || idx[d] >= extent[d]) return false;
    return true;
  }

  /// Cell volume h^N used by all quadrature sums.
  Real cell_volume() const {
    Real v = 1.0;
    for (int d = 0; d < dim; ++d) v *= spacing;
    return v;
  }

  /// Smallest grid covering [lo, hi] with `margin` extra node layers per side.
  static GridSpec covering(int N, Real h, const Coord& lo, const Coord& hi,
                           Index margin = 1);
};

}  // namespace kornlab
