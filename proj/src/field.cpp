#include "kornlab/field.hpp"

#include <cmath>
#include <sstream>

namespace kornlab {

namespace detail {
void require_same_mask(const MaskPtr& a, const MaskPtr& b) {
  if (a.get() != b.get()) throw MaskMismatchError("fields live on different masks");
}
}  // namespace detail

VectorField VectorField::from_function(MaskPtr mask, const NodeFn& fn,
                                       bool compact_support) {
  VectorField f(mask, compact_support);
  const int N = mask->dim();
  std::vector<Real> buf(size_t(N), 0.0);
  for (Index k = 0; k < mask->num_nodes(); ++k) {
    Coord x = mask->coord(mask->node(k));
    fn(x, buf.data());
    for (int c = 0; c < N; ++c) f.values_(k, c) = buf[size_t(c)];
  }
  if (compact_support) f.zero_boundary();
  return f;
}

void VectorField::zero_boundary() {
  for (Index k = 0; k < num_nodes(); ++k)
    if (mask_->classify(mask_->node(k)) == NodeClass::Boundary)
      values_.row(k).setZero();
}

std::string VectorField::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "# kornlab field csv v1\n";
  os << "x,y,z";
  for (int c = 0; c < dim(); ++c) os << ",u" << c + 1;
  os << "\n";
  for (Index k = 0; k < num_nodes(); ++k) {
    Coord x = mask_->coord(mask_->node(k));
    os << x[0] << "," << x[1] << "," << x[2];
    for (int c = 0; c < dim(); ++c) os << "," << values_(k, c);
    os << "\n";
  }
  return os.str();
}

std::string VectorField::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"dim\":" << dim() << ",\"h\":" << mask_->spacing() << ",\"nodes\":[";
  for (Index k = 0; k < num_nodes(); ++k) {
    Coord x = mask_->coord(mask_->node(k));
    os << (k ? "," : "") << "{\"x\":[";
    for (int d = 0; d < dim(); ++d) os << (d ? "," : "") << x[d];
    os << "],\"u\":[";
    for (int c = 0; c < dim(); ++c) os << (c ? "," : "") << values_(k, c);
    os << "]}";
  }
  os << "]}";
  return os.str();
}

MatrixField MatrixField::transpose() const {
  MatrixField t(mask_, compact_);
  const int N = dim();
  for (Index k = 0; k < num_nodes(); ++k)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) t.values_(k, i * N + j) = values_(k, j * N + i);
  return t;
}

MatrixField MatrixField::sym() const {
  MatrixField s = transpose();
  s.values_ = 0.5 * (s.values_ + values_);
  return s;
}

MatrixField MatrixField::skw() const {
  MatrixField s = transpose();
  s.values_ = 0.5 * (values_ - s.values_);
  return s;
}

ScalarField MatrixField::trace() const {
  ScalarField t = ScalarField::zero(mask_);
  const int N = dim();
  for (Index k = 0; k < num_nodes(); ++k) {
    Real s = 0.0;
    for (int i = 0; i < N; ++i) s += values_(k, i * N + i);
    t.values[k] = s;
  }
  return t;
}

namespace {

Real lp_norm_rows(const Mat& rows, const DomainMask& mask, Real p,
                  const ScalarField* weight) {
  if (!(p >= 1.0)) throw ParameterError("lp_norm: p must be >= 1");
  if (weight && weight->values.size() != rows.rows())
    throw MaskMismatchError("lp_norm: weight size mismatch");
  const Real hN = mask.grid().cell_volume();
  Real acc = 0.0;
  for (Index k = 0; k < rows.rows(); ++k) {
    Real s2 = rows.row(k).squaredNorm();
    Real w = weight ? weight->values[k] : 1.0;
    if (weight && w < 0.0) throw ParameterError("lp_norm: negative weight");
    acc += w * std::pow(s2, 0.5 * p);
  }
  return std::pow(acc * hN, 1.0 / p);
}

}  // namespace

Real lp_norm(const VectorField& f, Real p, const ScalarField* weight) {
  return lp_norm_rows(f.values(), f.mask(), p, weight);
}

Real lp_norm(const MatrixField& f, Real p, const ScalarField* weight) {
  return lp_norm_rows(f.values(), f.mask(), p, weight);
}

Real lp_norm(const ScalarField& f, Real p, const ScalarField* weight) {
  return lp_norm_rows(f.values, *f.mask, p, weight);
}

Real inner(const MatrixField& f, const MatrixField& g) {
  detail::require_same_mask(f.mask_ptr(), g.mask_ptr());
  return f.values().cwiseProduct(g.values()).sum() * f.mask().grid().cell_volume();
}

Real inner(const VectorField& f, const VectorField& g) {
  detail::require_same_mask(f.mask_ptr(), g.mask_ptr());
  return f.values().cwiseProduct(g.values()).sum() * f.mask().grid().cell_volume();
}

Real sup_norm(const VectorField& f) {
  Real m = 0.0;
  for (Index k = 0; k < f.num_nodes(); ++k)
    m = std::max(m, f.values().row(k).norm());
  return m;
}

Real sup_norm(const MatrixField& f) {
  Real m = 0.0;
  for (Index k = 0; k < f.num_nodes(); ++k)
    m = std::max(m, f.values().row(k).norm());
  return m;
}

Real sup_norm(const ScalarField& f) {
  return f.values.size() ? f.values.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace kornlab
