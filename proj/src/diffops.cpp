#include "kornlab/diffops.hpp"

#include <cmath>

namespace kornlab {

namespace {

MatrixField grad_impl(const VectorField& u, DiffKind kind, GhostPolicy ghost) {
  const DomainMask& m = u.mask();
  const int N = m.dim();
  MatrixField g(u.mask_ptr());
  for (Index k = 0; k < m.num_nodes(); ++k)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        g(k, i, j) = diff_at(m, u.values(), j, k, i, kind, ghost);
  return g;
}

VectorField div_mat_impl(const MatrixField& phi, DiffKind kind, GhostPolicy ghost) {
  const DomainMask& m = phi.mask();
  const int N = m.dim();
  VectorField v(phi.mask_ptr());
  for (Index k = 0; k < m.num_nodes(); ++k)
    for (int i = 0; i < N; ++i) {
      Real s = 0.0;
      for (int j = 0; j < N; ++j)
        s += diff_at(m, phi.values(), j * N + i, k, j, kind, ghost);
      v(k, i) = s;
    }
  return v;
}

ScalarField div_vec_impl(const VectorField& u, DiffKind kind, GhostPolicy ghost) {
  const DomainMask& m = u.mask();
  const int N = m.dim();
  ScalarField s = ScalarField::zero(u.mask_ptr());
  for (Index k = 0; k < m.num_nodes(); ++k) {
    Real acc = 0.0;
    for (int d = 0; d < N; ++d)
      acc += diff_at(m, u.values(), d, k, d, kind, ghost);
    s.values[k] = acc;
  }
  return s;
}

}  // namespace

MatrixField grad(const VectorField& u, StencilFamily fam) {
  return grad_impl(u, fam.grad_diff(), fam.resolve(u.compact_support()));
}

MatrixField grad_transpose(const VectorField& u, StencilFamily fam) {
  return grad(u, fam).transpose();
}

MatrixField sym_grad(const VectorField& u, StencilFamily fam) {
  return grad(u, fam).sym();
}

MatrixField skw_grad(const VectorField& u, StencilFamily fam) {
  return grad(u, fam).skw();
}

ScalarField div_vec(const VectorField& u, StencilFamily fam) {
  return div_vec_impl(u, fam.div_diff(), fam.resolve(u.compact_support()));
}

VectorField div_mat(const MatrixField& phi, StencilFamily fam) {
  return div_mat_impl(phi, fam.div_diff(), fam.resolve(phi.compact_support()));
}

VectorField div_sym(const MatrixField& phi, StencilFamily fam) {
  MatrixField s = phi.sym();
  VectorField v = div_mat_impl(s, fam.div_diff(), fam.resolve(phi.compact_support()));
  return v;
}

VectorField div_skw(const MatrixField& phi, StencilFamily fam) {
  MatrixField s = phi.skw();
  VectorField v = div_mat_impl(s, fam.div_diff(), fam.resolve(phi.compact_support()));
  return v;
}

VectorField grad_scalar(const ScalarField& s, StencilFamily fam, bool compact_hint) {
  const DomainMask& m = *s.mask;
  const int N = m.dim();
  VectorField g(s.mask);
  Mat vals = s.values;  // view as single-column matrix
  GhostPolicy ghost = fam.resolve(compact_hint);
  for (Index k = 0; k < m.num_nodes(); ++k)
    for (int d = 0; d < N; ++d)
      g(k, d) = diff_at(m, vals, 0, k, d, fam.grad_diff(), ghost);
  return g;
}

VectorField laplacian(const VectorField& u, StencilFamily fam) {
  GhostPolicy ghost = fam.resolve(u.compact_support());
  MatrixField g = grad_impl(u, fam.grad_diff(), ghost);
  return div_mat_impl(g, fam.div_diff(), ghost);
}

VectorField curl3(const VectorField& u, StencilFamily fam) {
  if (u.dim() != 3) throw ParameterError("curl3: field dimension must be 3");
  const DomainMask& m = u.mask();
  GhostPolicy ghost = fam.resolve(u.compact_support());
  DiffKind kind = fam.grad_diff();
  VectorField c(u.mask_ptr());
  for (Index k = 0; k < m.num_nodes(); ++k) {
    Real d2u3 = diff_at(m, u.values(), 2, k, 1, kind, ghost);
    Real d3u2 = diff_at(m, u.values(), 1, k, 2, kind, ghost);
    Real d3u1 = diff_at(m, u.values(), 0, k, 2, kind, ghost);
    Real d1u3 = diff_at(m, u.values(), 2, k, 0, kind, ghost);
    Real d1u2 = diff_at(m, u.values(), 1, k, 0, kind, ghost);
    Real d2u1 = diff_at(m, u.values(), 0, k, 1, kind, ghost);
    c(k, 0) = d2u3 - d3u2;
    c(k, 1) = d3u1 - d1u3;
    c(k, 2) = d1u2 - d2u1;
  }
  return c;
}

Real adjointness_defect(const VectorField& u, const MatrixField& phi,
                        StencilFamily fam) {
  detail::require_same_mask(u.mask_ptr(), phi.mask_ptr());
  if (fam.tag == FamilyTag::DualPair &&
      (!u.compact_support() || !phi.compact_support()))
    throw ContractError("adjointness_defect: dual-pair requires compact support");

  MatrixField gu = grad(u, fam);
  VectorField dphi = div_mat(phi, fam);
  Real pairing = inner(gu, phi) + inner(u, dphi);
  Real scale = lp_norm(gu, 2.0) * lp_norm(phi, 2.0) +
               lp_norm(u, 2.0) * lp_norm(dphi, 2.0);
  return std::abs(pairing) / (scale + 1e-300);
}

IdentityResiduals identity_residuals(const VectorField& u, StencilFamily fam) {
  if (fam.tag == FamilyTag::DualPair)
    throw ParameterError("identity_residuals: needs a single uniform family");
  const DiffKind kind = fam.grad_diff();
  // Operator-algebra mode: zero-extension everywhere so all stages are
  // commuting lattice convolutions.
  const GhostPolicy ghost = GhostPolicy::ZeroExtend;
  const DomainMask& m = u.mask();
  const int N = m.dim();

  MatrixField g = grad_impl(u, kind, ghost);
  MatrixField gs = g.sym();
  MatrixField gk = g.skw();
  ScalarField dv = div_vec_impl(u, kind, ghost);

  VectorField lap = div_mat_impl(g, kind, ghost);
  VectorField grad_div(u.mask_ptr());
  {
    Mat vals = dv.values;
    for (Index k = 0; k < m.num_nodes(); ++k)
      for (int d = 0; d < N; ++d)
        grad_div(k, d) = diff_at(m, vals, 0, k, d, kind, ghost);
  }
  VectorField dsym = div_mat_impl(gs, kind, ghost);
  VectorField dskw = div_mat_impl(gk, kind, ghost);

  Real scale = 0.0, res_sym = 0.0, res_skw = 0.0;
  for (Index k = 0; k < m.num_nodes(); ++k) {
    for (int d = 0; d < N; ++d) {
      Real L = lap(k, d), GD = grad_div(k, d);
      Real DS = dsym(k, d), DK = dskw(k, d);
      scale = std::max({scale, std::abs(L), std::abs(GD), 2.0 * std::abs(DS),
                        2.0 * std::abs(DK)});
      res_sym = std::max(res_sym, std::abs(L + GD - 2.0 * DS));
      res_skw = std::max(res_skw, std::abs(L - GD - 2.0 * DK));
    }
  }

  IdentityResiduals r;
  r.hodge_sym = res_sym / (scale + 1e-300);
  r.hodge_skw = res_skw / (scale + 1e-300);

  // Integral Korn identity with the frozen dual div difference.
  ScalarField dvk = div_vec_impl(u, fam.korn_div_diff(), ghost);
  const Real hN = m.grid().cell_volume();
  Real s2 = 0.0, g2 = 0.0, d2 = 0.0;
  for (Index k = 0; k < m.num_nodes(); ++k) {
    s2 += gs.values().row(k).squaredNorm();
    g2 += g.values().row(k).squaredNorm();
    d2 += dvk.values[k] * dvk.values[k];
  }
  s2 *= hN;
  g2 *= hN;
  d2 *= hN;
  r.korn_identity =
      std::abs(s2 - 0.5 * g2 - 0.5 * d2) / (s2 + 0.5 * g2 + 0.5 * d2 + 1e-300);
  return r;
}

Real div_trace_ratio(const VectorField& u, StencilFamily fam) {
  ScalarField dv = div_vec_impl(u, fam.grad_diff(), fam.resolve(u.compact_support()));
  MatrixField gs = sym_grad(u, fam);
  const Real rootN = std::sqrt(Real(u.dim()));
  Real worst = 0.0;
  for (Index k = 0; k < u.num_nodes(); ++k) {
    Real denom = rootN * gs.values().row(k).norm();
    Real num = std::abs(dv.values[k]);
    if (denom == 0.0 && num == 0.0) continue;
    worst = std::max(worst, num / (denom + 1e-300));
  }
  return worst;
}

VectorField extend_by_zero(const VectorField& u, MaskPtr larger) {
  if (!u.compact_support())
    throw ContractError("extend_by_zero: field must be compact-support");
  const GridSpec& gs = u.mask().grid();
  const GridSpec& gl = larger->grid();
  if (gs.dim != gl.dim) throw MaskMismatchError("extend_by_zero: dimension mismatch");
  if (std::abs(gs.spacing - gl.spacing) > 0.0)
    throw MaskMismatchError("extend_by_zero: spacing mismatch");
  Extent off{0, 0, 0};
  for (int d = 0; d < gs.dim; ++d) {
    Real t = (gs.origin[d] - gl.origin[d]) / gs.spacing;
    off[d] = Index(std::llround(t));
    if (std::abs(t - Real(off[d])) > 1e-9)
      throw MaskMismatchError("extend_by_zero: origins not commensurate");
  }
  VectorField out(larger, true);
  for (Index k = 0; k < u.num_nodes(); ++k) {
    Extent idx = gs.node_index(u.mask().node(k));
    for (int d = 0; d < gs.dim; ++d) idx[d] += off[d];
    if (!gl.contains(idx)) throw MaskMismatchError("extend_by_zero: node outside target");
    Index p = larger->packed(gl.node_id(idx));
    if (p < 0) {
      // Target classifies this node exterior; the value must be zero.
      if (u.values().row(k).norm() != 0.0)
        throw MaskMismatchError("extend_by_zero: nonzero value maps to exterior");
      continue;
    }
    for (int c = 0; c < gs.dim; ++c) out(p, c) = u(k, c);
  }
  return out;
}

}  // namespace kornlab
