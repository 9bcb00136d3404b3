#pragma once

#include "kornlab/constants.hpp"
#include "kornlab/generate.hpp"

#include <string>
#include <vector>

namespace kornlab {

/// Per-check record of one inequality evaluation.  pass <=> ratio <= 1 + slack.
struct VerificationReport {
  std::string check_name;
  std::string provenance;      // generator description of the trial field
  std::uint64_t seed = 0;
  Real h = 0.0;
  Real p = 2.0;
  Real lhs = 0.0;
  Real rhs = 0.0;
  Real ratio = 0.0;
  Real slack = 0.0;
  bool pass = false;
  std::string constant_source;  // "explicit-formula" or "computed-estimate"
  Real constant_value = 0.0;
  std::string note;
};

/// Weighted Poincare-Korn check on a compactly supported field:
///   int |u|^p  <=  C_{p,N}^p int |x - x0|^p |sym_grad u|^p
/// with x measured from the grid origin unless x0 is given.  Slack 0: both
/// sides share the quadrature, the continuum bound is strict for smooth
/// fields.  Throws ContractError on non-compact input.
VerificationReport check_pk_weighted(const VectorField& u, Real p,
                                     const Coord* x0 = nullptr,
                                     StencilFamily fam = StencilFamily::dual_pair());

/// Bounded-domain Poincare-Korn check on a compactly supported field:
///   int |u|^p  <=  kappa_{p,Omega}^p int |sym_grad u|^p,
/// kappa from the mask diameter and the explicit constant.
VerificationReport check_pk_bounded(const VectorField& u, Real p,
                                    StencilFamily fam = StencilFamily::dual_pair());

/// Boundary Poincare-Korn check on a free-trace field:
///   int |u|^p <= kappa_{p,Omega}^p int |sym_grad u|^p
///              + kappa_{p,boundary} int_boundary |u|^p
/// using the staircase surface weights.  Exact surface measure only on
/// axis-aligned boxes; other masks are reported with a note and excluded from
/// acceptance.  Default slack 2% at h = 1/64 (first-order boundary quadrature).
VerificationReport check_pk_boundary(const VectorField& u, Real p,
                                     Real slack = 0.02,
                                     StencilFamily fam = StencilFamily::forward());

/// Pointwise trace bound |div u| <= sqrt(N) |sym_grad u| (same-family
/// operators; algebraic up to roundoff).  ratio = worst pointwise quotient.
VerificationReport check_div_trace_bound(const VectorField& u,
                                         StencilFamily fam = StencilFamily::forward());

/// Integrated residual of the pointwise identity behind the Poincare-Korn
/// proof, per refinement level:
///   (N/p + |u|^2/|u_eps|^2) |u_eps|^p
///     = -2 |u_eps|^{p-2} u . (sym_grad u  x)
///       - (u . x) div(|u_eps|^{p-2} u)
///       + div((1/p) |u_eps|^p x) + div(|u_eps|^{p-2} (u . x) u)
/// with u_eps = (u, eps).  The two divergence sums telescope to rim terms
/// that vanish (up to O(eps^p)) for compactly supported u under zero
/// extension; both the dual pair and the self-adjoint centered stencil have
/// this property.  The centered default converges at second order, the
/// one-sided families at first order.  Levels share one continuum generator
/// field.
struct FundrelLevel {
  Real h = 0.0;
  Real residual = 0.0;  // relative integrated residual
};

struct FundrelRecord {
  Real p = 2.0;
  Real eps = 0.0;
  std::vector<FundrelLevel> levels;
  Real slope = 0.0;  // least-squares log-log slope of residual vs h
};

FundrelRecord check_fundrel(const ShapeDescriptor& shape, const GeneratorSpec& gen,
                            Real p, Real eps_rel, const std::vector<Real>& hs,
                            StencilFamily fam = StencilFamily::centered());

/// Single-level fundrel residual on an existing compactly supported field.
Real fundrel_residual(const VectorField& u, Real p, Real eps, StencilFamily fam);

// ---------------------------------------------------------------------------
// Corpus runner.

struct CorpusRequest {
  std::vector<std::string> checks;  // subset of {pk-weighted, pk-bounded, pk-boundary, div-trace}
  std::vector<std::pair<std::string, MaskPtr>> masks;
  std::vector<GeneratorSpec> generators;
  std::vector<Real> p_values;
  Real boundary_slack = 0.02;
};

struct CorpusResult {
  std::vector<VerificationReport> reports;
  bool all_pass = true;
  Index failures = 0;
};

/// Runs every (check, mask, generator, p) cell in deterministic order.
CorpusResult run_corpus(const CorpusRequest& req);

}  // namespace kornlab
