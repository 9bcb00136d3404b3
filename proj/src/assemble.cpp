#include "kornlab/assemble.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace kornlab {

SparseOperator::SparseOperator(SparseMat mat, bool symmetric)
    : mat_(std::move(mat)), symmetric_(symmetric) {
  mat_.makeCompressed();
  if (symmetric_) {
    if (mat_.rows() != mat_.cols())
      throw ParameterError("SparseOperator: symmetric flag on non-square matrix");
    // Spot-check A = A^T on a few deterministic random index pairs.  The
    // comparison tolerates roundoff so externally built products qualify;
    // gram() output is exactly symmetric by construction.
    SplitMix64 rng(0x5eedull ^ std::uint64_t(mat_.rows()));
    for (int s = 0; s < 32; ++s) {
      Index i = Index(rng.next_u64() % std::uint64_t(mat_.rows()));
      Index j = Index(rng.next_u64() % std::uint64_t(mat_.cols()));
      Real aij = mat_.coeff(i, j), aji = mat_.coeff(j, i);
      Real scale = std::max({std::abs(aij), std::abs(aji), Real(1)});
      if (std::abs(aij - aji) > 1e-12 * scale)
        throw ParameterError("SparseOperator: symmetry spot-check failed");
    }
  }
}

std::string SparseOperator::to_coordinate_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "% coordinate " << mat_.rows() << " " << mat_.cols() << " "
     << mat_.nonZeros() << "\n";
  for (Index r = 0; r < mat_.outerSize(); ++r)
    for (SparseMat::InnerIterator it(mat_, r); it; ++it)
      os << it.row() << " " << it.col() << " " << it.value() << "\n";
  return os.str();
}

Index dof_count(const DomainMask& mask, BoundaryCondition bc) {
  Index nodes = (bc == BoundaryCondition::ZeroBoundary) ? mask.num_interior()
                                                        : mask.num_nodes();
  return nodes * mask.dim();
}

namespace {

/// DOF column of (packed node, component) or -1 when constrained to zero.
inline Index dof_of(const DomainMask& m, Index packed, int comp,
                    BoundaryCondition bc) {
  const int N = m.dim();
  if (bc == BoundaryCondition::Free) return packed * N + comp;
  Index slot = m.interior_slot(m.node(packed));
  return slot < 0 ? -1 : slot * N + comp;
}

}  // namespace

SparseOperator assemble(OperatorName op, const DomainMask& mask, StencilFamily fam,
                        BoundaryCondition bc) {
  const int N = mask.dim();
  const Index cols = dof_count(mask, bc);
  const GhostPolicy ghost =
      fam.resolve(bc == BoundaryCondition::ZeroBoundary);
  std::vector<Triplet> trips;

  switch (op) {
    case OperatorName::Mass: {
      const Real hN = mask.grid().cell_volume();
      SparseMat m(cols, cols);
      m.setIdentity();
      m *= hN;
      return SparseOperator(std::move(m), true);
    }
    case OperatorName::Grad:
    case OperatorName::SymGrad: {
      const Index rows = mask.num_nodes() * N * N;
      if (rows > kMaxNodes * 9) throw ParameterError("assemble: dimension overflow");
      trips.reserve(size_t(rows) * 2);
      const DiffKind kind = fam.grad_diff();
      StencilTap taps[2];
      for (Index k = 0; k < mask.num_nodes(); ++k) {
        for (int i = 0; i < N; ++i) {
          for (int j = 0; j < N; ++j) {
            const Index row = (k * N + i) * N + j;
            // (grad u)_{ij} = D_i u_j; sym_grad averages with D_j u_i.
            const Real fac = (op == OperatorName::SymGrad && i != j) ? 0.5 : 1.0;
            int n = diff_taps(mask, k, i, kind, ghost, taps);
            for (int t = 0; t < n; ++t) {
              Index c = dof_of(mask, taps[t].packed, j, bc);
              if (c >= 0) trips.emplace_back(row, c, fac * taps[t].weight);
            }
            if (op == OperatorName::SymGrad && i != j) {
              n = diff_taps(mask, k, j, kind, ghost, taps);
              for (int t = 0; t < n; ++t) {
                Index c = dof_of(mask, taps[t].packed, i, bc);
                if (c >= 0) trips.emplace_back(row, c, fac * taps[t].weight);
              }
            }
          }
        }
      }
      SparseMat m(mask.num_nodes() * N * N, cols);
      m.setFromTriplets(trips.begin(), trips.end());
      return SparseOperator(std::move(m), false);
    }
    case OperatorName::Div: {
      const DiffKind kind = fam.div_diff();
      StencilTap taps[2];
      for (Index k = 0; k < mask.num_nodes(); ++k) {
        for (int d = 0; d < N; ++d) {
          int n = diff_taps(mask, k, d, kind, ghost, taps);
          for (int t = 0; t < n; ++t) {
            Index c = dof_of(mask, taps[t].packed, d, bc);
            if (c >= 0) trips.emplace_back(k, c, taps[t].weight);
          }
        }
      }
      SparseMat m(mask.num_nodes(), cols);
      m.setFromTriplets(trips.begin(), trips.end());
      return SparseOperator(std::move(m), false);
    }
  }
  throw ParameterError("assemble: unknown operator");
}

SparseOperator gram(const SparseOperator& a, const DomainMask& mask,
                    const Vec* row_node_weights, int row_block) {
  const Real hN = mask.grid().cell_volume();
  SparseMat am = a.matrix();
  if (row_node_weights) {
    if (row_node_weights->size() * row_block != am.rows())
      throw ParameterError("gram: weight size mismatch");
    for (Index r = 0; r < am.outerSize(); ++r)
      for (SparseMat::InnerIterator it(am, r); it; ++it)
        it.valueRef() *= std::sqrt((*row_node_weights)[it.row() / row_block]);
  }
  SparseMat at = am.transpose();
  SparseMat p = (at * am).pruned();
  SparseMat pt = p.transpose();
  SparseMat sym = 0.5 * (p + pt);
  sym *= hN;
  return SparseOperator(std::move(sym), true);
}

SparseOperator add(const SparseOperator& a, const SparseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ParameterError("add: operator shape mismatch");
  SparseMat s = a.matrix() + b.matrix();
  return SparseOperator(std::move(s), a.symmetric() && b.symmetric());
}

VectorField dof_to_field(const Vec& x, MaskPtr mask, BoundaryCondition bc) {
  const int N = mask->dim();
  if (x.size() != dof_count(*mask, bc))
    throw ParameterError("dof_to_field: size mismatch");
  VectorField u(mask, bc == BoundaryCondition::ZeroBoundary);
  if (bc == BoundaryCondition::Free) {
    for (Index k = 0; k < mask->num_nodes(); ++k)
      for (int c = 0; c < N; ++c) u(k, c) = x[k * N + c];
  } else {
    for (Index s = 0; s < mask->num_interior(); ++s) {
      Index k = mask->interior_node(s);
      for (int c = 0; c < N; ++c) u(k, c) = x[s * N + c];
    }
  }
  return u;
}

Vec field_to_dof(const VectorField& u, BoundaryCondition bc) {
  const DomainMask& m = u.mask();
  const int N = m.dim();
  Vec x = Vec::Zero(dof_count(m, bc));
  if (bc == BoundaryCondition::Free) {
    for (Index k = 0; k < m.num_nodes(); ++k)
      for (int c = 0; c < N; ++c) x[k * N + c] = u(k, c);
  } else {
    for (Index s = 0; s < m.num_interior(); ++s) {
      Index k = m.interior_node(s);
      for (int c = 0; c < N; ++c) x[s * N + c] = u(k, c);
    }
  }
  return x;
}

}  // namespace kornlab
