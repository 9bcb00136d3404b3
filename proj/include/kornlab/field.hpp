#pragma once

#include "kornlab/mask.hpp"

#include <functional>
#include <string>

namespace kornlab {

/// Scalar grid function on the non-exterior nodes of a mask.
struct ScalarField {
  MaskPtr mask;
  Vec values;  // one entry per packed node

  static ScalarField zero(MaskPtr m) {
    return {m, Vec::Zero(m->num_nodes())};
  }
};

namespace detail {
void require_same_mask(const MaskPtr& a, const MaskPtr& b);
}

/// R^N-valued grid function.  Values are stored densely, one row per packed
/// non-exterior node, one column per component.  The compact-support variant
/// keeps exact zeros on boundary nodes and is differentiated with
/// zero-extension ghosts (extension by zero is exact for it).
class VectorField {
 public:
  VectorField(MaskPtr mask, bool compact_support = false)
      : mask_(std::move(mask)),
        values_(Mat::Zero(mask_->num_nodes(), mask_->dim())),
        compact_(compact_support) {}

  using NodeFn = std::function<void(const Coord&, Real*)>;

  /// Sample fn at every non-exterior node; compact-support variant zeroes
  /// boundary nodes afterwards.
  static VectorField from_function(MaskPtr mask, const NodeFn& fn,
                                   bool compact_support = false);

  const DomainMask& mask() const { return *mask_; }
  const MaskPtr& mask_ptr() const { return mask_; }
  int dim() const { return mask_->dim(); }
  bool compact_support() const { return compact_; }
  Index num_nodes() const { return values_.rows(); }

  Real operator()(Index k, int c) const { return values_(k, c); }
  Real& operator()(Index k, int c) { return values_(k, c); }

  Mat& values() { return values_; }
  const Mat& values() const { return values_; }

  /// Zero all boundary-node rows (used by the compact-support generators).
  void zero_boundary();

  std::string to_csv() const;
  std::string to_json() const;

 private:
  MaskPtr mask_;
  Mat values_;
  bool compact_;
};

/// R^{NxN}-valued grid function; entry (i,j) of the node matrix is stored at
/// column i*N+j.  With the column-gradient convention, row i of grad(u) holds
/// the i-derivatives: (grad u)_{ij} = D_i u_j.
class MatrixField {
 public:
  explicit MatrixField(MaskPtr mask, bool compact_support = false)
      : mask_(std::move(mask)),
        values_(Mat::Zero(mask_->num_nodes(), mask_->dim() * mask_->dim())),
        compact_(compact_support) {}

  const DomainMask& mask() const { return *mask_; }
  const MaskPtr& mask_ptr() const { return mask_; }
  int dim() const { return mask_->dim(); }
  bool compact_support() const { return compact_; }
  Index num_nodes() const { return values_.rows(); }

  Real operator()(Index k, int i, int j) const {
    return values_(k, i * mask_->dim() + j);
  }
  Real& operator()(Index k, int i, int j) {
    return values_(k, i * mask_->dim() + j);
  }

  Mat& values() { return values_; }
  const Mat& values() const { return values_; }

  MatrixField transpose() const;
  MatrixField sym() const;  // (M + M^T)/2 nodewise
  MatrixField skw() const;  // (M - M^T)/2 nodewise

  /// Pointwise trace as a scalar field.
  ScalarField trace() const;

 private:
  MaskPtr mask_;
  Mat values_;
  bool compact_;
};

// ---------------------------------------------------------------------------
// p-norms and inner products (quadrature: plain node sum times h^N).

/// (sum_x w(x) |f(x)|^p h^N)^(1/p); |.| is the Euclidean (vector rows) or
/// Frobenius (matrix rows) norm, which coincide on the flattened row.
Real lp_norm(const VectorField& f, Real p, const ScalarField* weight = nullptr);
Real lp_norm(const MatrixField& f, Real p, const ScalarField* weight = nullptr);
Real lp_norm(const ScalarField& f, Real p, const ScalarField* weight = nullptr);

/// Integrated Frobenius pairing sum_x tr(f(x)^T g(x)) h^N.
Real inner(const MatrixField& f, const MatrixField& g);
/// Integrated dot pairing sum_x f(x).g(x) h^N.
Real inner(const VectorField& f, const VectorField& g);

/// Largest pointwise Euclidean/Frobenius norm over nodes.
Real sup_norm(const VectorField& f);
Real sup_norm(const MatrixField& f);
Real sup_norm(const ScalarField& f);

}  // namespace kornlab
