#include "kornlab/grid.hpp"

#include <cmath>

namespace kornlab {

GridSpec::GridSpec(int N, Real h, Coord org, Extent ext)
    : dim(N), spacing(h), origin(org), extent(ext) {
  if (dim < 1 || dim > kMaxDim) throw ParameterError("grid dimension must be 1, 2 or 3");
  if (!(spacing > 0.0)) throw ParameterError("grid spacing must be positive");
  for (int d = 0; d < dim; ++d)
    if (extent[d] < 2) throw ParameterError("grid needs at least 2 nodes per axis");
  if (num_nodes() > kMaxNodes) throw ParameterError("grid exceeds node cap");
}

GridSpec GridSpec::covering(int N, Real h, const Coord& lo, const Coord& hi,
                            Index margin) {
  Coord org{0.0, 0.0, 0.0};
  Extent ext{1, 1, 1};
  for (int d = 0; d < N; ++d) {
    if (!(hi[d] >= lo[d])) throw ParameterError("covering: empty box");
    org[d] = lo[d] - Real(margin) * h;
    // +1 node to include hi even when (hi-lo)/h is not integral.
    Index inner = Index(std::ceil((hi[d] - lo[d]) / h - 1e-12)) + 1;
    ext[d] = inner + 2 * margin;
  }
  return GridSpec(N, h, org, ext);
}

}  // namespace kornlab
