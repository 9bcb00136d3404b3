#pragma once

#include "kornlab/diffops.hpp"
#include "kornlab/solvers.hpp"

#include <memory>

namespace kornlab {

/// Explicit Poincare-Korn constants.  These are valid bounds, not optimal
/// ones:
///   C_{p,N}        = (2 + |p-2| + sqrt(N)) * p / (p + N)
///   kappa_{p,Omega}    = diam(Omega) * C_{p,N}
///   kappa_{p,boundary} = p (p+1)/(p+N) * diam(Omega)
struct ExplicitConstants {
  Real c_pn = 0.0;
  Real kappa_omega = 0.0;
  Real kappa_boundary = 0.0;
  Real p = 2.0;
  int dim = 2;
  Real diam = 1.0;
};

ExplicitConstants explicit_constants(Real p, int dim, Real diam);

enum class KornMode { First, Second, PkPlain, PkWeighted };
enum class BoundDirection { LowerBound, SharpEigen };

const char* korn_mode_name(KornMode m);
const char* bound_direction_name(BoundDirection b);

/// A computed constant: sharp at grid level when it comes from an
/// eigensolve, a certified lower bound when it comes from quotient ascent.
struct KornEstimate {
  Real value = 0.0;
  Real p = 2.0;
  KornMode mode = KornMode::First;
  BoundDirection bound = BoundDirection::SharpEigen;
  Real residual = 0.0;
  Index iterations = 0;
  Real h = 0.0;
  int dim = 0;
  std::uint64_t seed = 0;
  std::shared_ptr<VectorField> maximizer;
};

/// Exact (unsmoothed) discrete quotient of the given trial field:
///   First:  int |grad u|^p / int |sym_grad u|^p
///   Second: (int |u|^p + |grad u|^p) / (int |u|^p + |sym_grad u|^p)
Real korn_quotient(const VectorField& u, Real p, KornMode mode, StencilFamily fam);

/// Poincare-Korn quotient (int |u|^p / int w |sym_grad u|^p)^(1/p) with
/// w = |x|^p when weighted.
Real pk_quotient(const VectorField& u, Real p, bool weighted, StencilFamily fam);

/// First Korn constant at p = 2: largest eigenvalue of
/// G^T G x = lambda S^T S x on zero-boundary DOFs.  With an identity-exact
/// family the value lies in [1, 2] up to solver residual.
KornEstimate korn_first_p2(MaskPtr mask, StencilFamily fam, Real tol,
                           std::uint64_t seed);
KornEstimate korn_first_p2(MaskPtr mask, StencilFamily fam, const EigOptions& opts);

/// Second Korn constant at p = 2: largest eigenvalue of
/// (M + G^T G) x = lambda (M + S^T S) x over all non-exterior DOFs with free
/// boundary stencils.
KornEstimate korn_second_p2(MaskPtr mask, StencilFamily fam, Real tol,
                            std::uint64_t seed);
KornEstimate korn_second_p2(MaskPtr mask, StencilFamily fam, const EigOptions& opts);

struct QuotientOptions {
  Real eps_smooth_rel = 1e-6;  // relative smoothing floor
  int continuation = 6;        // number of epsilon halvings
  int restarts = 8;
  Index max_iters = 3000;      // ascent steps per restart (across stages)
  std::uint64_t seed = 1;
  Real step0 = 1.0;            // initial relative step for backtracking
};

/// General-p Korn quotient maximization by smoothed normalized gradient
/// ascent with backtracking and multi-start.  Returns the exact quotient of
/// the best iterate (a certified lower bound for the constant).  Throws
/// OptimizationStallError when every restart fails its first line search.
KornEstimate korn_general_p(MaskPtr mask, Real p, KornMode mode, StencilFamily fam,
                            const QuotientOptions& opts);

/// Best discrete Poincare-Korn constant.  p = 2: smallest eigenvalue mu of
/// S^T W S x = mu M x on zero-boundary DOFs (W = |x|^2 node weights when
/// weighted), value = mu^{-1/2}, sharp at grid level.  p != 2: quotient
/// ascent as in korn_general_p, lower bound.
KornEstimate poincare_korn_best(MaskPtr mask, Real p, bool weighted,
                                StencilFamily fam, Real tol, std::uint64_t seed);

}  // namespace kornlab
