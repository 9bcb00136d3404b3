#pragma once

#include "kornlab/field.hpp"
#include "kornlab/stencil.hpp"

#include <string>

namespace kornlab {

enum class OperatorName { Grad, SymGrad, Div, Mass };
enum class BoundaryCondition { ZeroBoundary, Free };

/// Row-compressed sparse linear map between flattened field degrees of
/// freedom.  DOF ordering is lexicographic by node then component:
/// dof = packed_node * N + component (zero-boundary spaces use the interior
/// packing instead).
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(SparseMat mat, bool symmetric);

  Index rows() const { return mat_.rows(); }
  Index cols() const { return mat_.cols(); }
  bool symmetric() const { return symmetric_; }
  const SparseMat& matrix() const { return mat_; }

  Vec apply(const Vec& x) const {
    if (x.size() != mat_.cols()) throw ParameterError("SparseOperator: apply size mismatch");
    return mat_ * x;
  }
  Vec apply_transpose(const Vec& y) const {
    if (y.size() != mat_.rows())
      throw ParameterError("SparseOperator: apply_transpose size mismatch");
    return mat_.transpose() * y;
  }
  Vec diagonal() const { return mat_.diagonal(); }

  /// Coordinate-format text dump (row col value per line) for debugging.
  std::string to_coordinate_text() const;

 private:
  SparseMat mat_;
  bool symmetric_ = false;
};

/// Stencil operator / mass matrix on the DOF space selected by `bc`.
///  - Grad / SymGrad: rows are flattened matrix entries (node, i, j), so a
///    matrix-vector product reproduces the corresponding diffop applied to a
///    field whose compact-support flag matches the boundary condition.
///  - Div: rows are scalar nodes, entries from the family's div difference.
///  - Mass: h^N times the identity on the DOF space.
/// Zero-boundary assembly uses zero-extension ghosts, free assembly one-sided
/// fallbacks, mirroring the diffops defaults.
SparseOperator assemble(OperatorName op, const DomainMask& mask, StencilFamily fam,
                        BoundaryCondition bc);

/// Quadrature-weighted Gram matrix h^N * A^T diag(w) A, exactly symmetrized.
/// `node_weights` (optional) holds one weight per operator row-node, e.g.
/// |x|^2 for the weighted Poincare-Korn pencil.
SparseOperator gram(const SparseOperator& a, const DomainMask& mask,
                    const Vec* row_node_weights = nullptr, int row_block = 1);

/// Sum of two operators on the same DOF space.
SparseOperator add(const SparseOperator& a, const SparseOperator& b);

Index dof_count(const DomainMask& mask, BoundaryCondition bc);

/// Scatter a DOF vector into a vector field (non-DOF nodes get zero).
VectorField dof_to_field(const Vec& x, MaskPtr mask, BoundaryCondition bc);
Vec field_to_dof(const VectorField& u, BoundaryCondition bc);

}  // namespace kornlab
