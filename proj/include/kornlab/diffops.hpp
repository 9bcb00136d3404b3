#pragma once

#include "kornlab/field.hpp"
#include "kornlab/stencil.hpp"

namespace kornlab {

// Discrete differential operators.  Conventions follow the column-gradient
// calculus: grad(u) has the gradients of the components as columns,
// (grad u)_{ij} = D_i u_j, so grad_transpose(u) is the Jacobian, and the
// matrix divergence acts column-wise, (div_mat Phi)_i = sum_j D_j Phi_{ji}.
// With those two choices div_mat(grad u) is the componentwise Laplacian and
// div_mat is the formal adjoint of -grad under the dual stencil pair.

MatrixField grad(const VectorField& u, StencilFamily fam);
MatrixField grad_transpose(const VectorField& u, StencilFamily fam);
MatrixField sym_grad(const VectorField& u, StencilFamily fam);
MatrixField skw_grad(const VectorField& u, StencilFamily fam);

ScalarField div_vec(const VectorField& u, StencilFamily fam);
VectorField div_mat(const MatrixField& phi, StencilFamily fam);
VectorField div_sym(const MatrixField& phi, StencilFamily fam);
VectorField div_skw(const MatrixField& phi, StencilFamily fam);

/// Gradient of a scalar grid function (used for grad(div u)).
VectorField grad_scalar(const ScalarField& s, StencilFamily fam, bool compact_hint);

/// Family-consistent composition div_mat(grad(u)): forward/backward/centered
/// compose with themselves, the dual pair composes backward-div with
/// forward-grad.
VectorField laplacian(const VectorField& u, StencilFamily fam);

/// Standard curl for N = 3; throws ParameterError otherwise.
VectorField curl3(const VectorField& u, StencilFamily fam);

/// Relative defect of the discrete integration-by-parts pairing
///   inner(grad u, Phi) + sum_x u . div_mat(Phi) h^N.
/// With the dual pair on compact-support data the sum telescopes exactly; for
/// the dual pair both fields must be compact-support (ContractError
/// otherwise).  Other families accept any support; the centered family on a
/// free-trace u against a compact Phi leaves a boundary-consistency defect
/// that vanishes under refinement.
Real adjointness_defect(const VectorField& u, const MatrixField& phi,
                        StencilFamily fam);

/// Residuals of the operator-calculus identities under a single uniform
/// family (dual-pair is rejected).  All stages run with zero-extension
/// ghosts, making both Hodge residuals pure lattice-convolution identities:
///   hodge_skw :  Delta u = grad(div u) + 2 div_skw(skw_grad u)
///   hodge_sym :  Delta u = 2 div_sym(sym_grad u) - grad(div u)
/// korn_identity is the integral identity
///   int |sym_grad u|^2 = 1/2 int |grad u|^2 + 1/2 int |div u|^2
/// with the div difference fixed by korn_div_diff(); it closes to machine
/// precision for compact-support fields.
struct IdentityResiduals {
  Real hodge_skw = 0.0;   // relative sup-norm residual
  Real hodge_sym = 0.0;   // relative sup-norm residual
  Real korn_identity = 0.0;  // relative integral residual
};

IdentityResiduals identity_residuals(const VectorField& u, StencilFamily fam);

/// Pointwise max over nodes of |div u| / (sqrt(N) |sym_grad u|); bounded by 1
/// up to roundoff since div u = tr(sym_grad u).
Real div_trace_ratio(const VectorField& u, StencilFamily fam);

/// Copy a compact-support field onto a larger mask with the same spacing and
/// commensurate origin (extension by zero).
VectorField extend_by_zero(const VectorField& u, MaskPtr larger);

}  // namespace kornlab
