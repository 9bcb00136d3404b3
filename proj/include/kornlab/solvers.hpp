#pragma once

#include "kornlab/assemble.hpp"

namespace kornlab {

/// Iteration caps default to 10x the DOF count when left at 0.
struct CgOptions {
  Real tol = 1e-10;        // relative residual |Ax-b| / |b|
  Index max_iters = 0;
  bool jacobi = true;      // diagonal preconditioning
};

/// Preconditioned conjugate gradients for SPD systems.  Throws SolverError
/// when the iteration cap is exceeded (CLI exit code 3).
Vec cg_solve(const SparseOperator& a, const Vec& b, Real tol, Index max_iters = 0,
             bool jacobi = true);

struct EigenResult {
  Real eigenvalue = 0.0;
  Vec eigenvector;
  Real residual = 0.0;   // |Ax - lambda Bx| / (|Ax| + |lambda||Bx|)
  Index iterations = 0;
};

struct EigOptions {
  Real tol = 1e-8;
  std::uint64_t seed = 1;
  Index max_iters = 2000;
  Real cg_tol = 1e-10;
};

/// Largest / smallest eigenvalue of the symmetric pencil A x = lambda B x.
/// Single-vector locally optimal block iteration: the Rayleigh-Ritz space is
/// span{x, w, p} with w the preconditioned residual (w = B^{-1} r for the
/// largest mode, w = A^{-1} r for the smallest; both through nested CG) and p
/// the previous update direction.  Deterministic for a fixed seed.
///
/// gen_eig_max expects A symmetric PSD and B symmetric PD;
/// gen_eig_min expects both SPD.
EigenResult gen_eig_max(const SparseOperator& a, const SparseOperator& b,
                        const EigOptions& opts);
EigenResult gen_eig_min(const SparseOperator& a, const SparseOperator& b,
                        const EigOptions& opts);

}  // namespace kornlab
