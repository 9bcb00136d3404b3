#pragma once

#include "kornlab/mask.hpp"

#include <string>

namespace kornlab {

enum class DiffKind { Forward, Backward, Centered };

enum class FamilyTag { Forward, Backward, Centered, DualPair };

/// Missing-neighbor policy.  ZeroExtend treats out-of-mask values as exact
/// zeros, which makes every operator a plain lattice convolution: difference
/// operators commute and the operator-algebra identities close to machine
/// precision.  OneSided falls back to a one-sided difference at the boundary,
/// which keeps first-order accuracy for fields with nonzero trace.  Auto
/// resolves per field: zero extension for compact-support fields, one-sided
/// otherwise.
enum class GhostPolicy { Auto, ZeroExtend, OneSided };

/// A stencil family fixes which first difference realizes gradients and which
/// realizes divergences:
///
///   family     gradient   divergence
///   forward    forward    forward
///   backward   backward   backward
///   centered   centered   centered
///   dual-pair  forward    backward
///
/// The dual pair makes discrete integration by parts exact: summing
/// (D+ f) g + f (D- g) over the lattice telescopes for compactly supported
/// data.
struct StencilFamily {
  FamilyTag tag = FamilyTag::Forward;
  GhostPolicy ghost = GhostPolicy::Auto;

  static StencilFamily forward(GhostPolicy g = GhostPolicy::Auto) { return {FamilyTag::Forward, g}; }
  static StencilFamily backward(GhostPolicy g = GhostPolicy::Auto) { return {FamilyTag::Backward, g}; }
  static StencilFamily centered(GhostPolicy g = GhostPolicy::Auto) { return {FamilyTag::Centered, g}; }
  static StencilFamily dual_pair(GhostPolicy g = GhostPolicy::Auto) { return {FamilyTag::DualPair, g}; }

  DiffKind grad_diff() const {
    switch (tag) {
      case FamilyTag::Backward: return DiffKind::Backward;
      case FamilyTag::Centered: return DiffKind::Centered;
      default: return DiffKind::Forward;
    }
  }

  DiffKind div_diff() const {
    switch (tag) {
      case FamilyTag::Forward: return DiffKind::Forward;
      case FamilyTag::Backward: return DiffKind::Backward;
      case FamilyTag::Centered: return DiffKind::Centered;
      case FamilyTag::DualPair: return DiffKind::Backward;
    }
    return DiffKind::Backward;
  }

  /// Difference used for the div term of the discrete Korn identity
  /// int |sym_grad u|^2 = 1/2 int |grad u|^2 + 1/2 int |div u|^2.
  /// The summation-by-parts chain closes only when the div difference is the
  /// adjoint of the gradient difference; this convention was fixed by a
  /// brute-force oracle on a small grid (see the diffops test suite).
  DiffKind korn_div_diff() const {
    switch (tag) {
      case FamilyTag::Forward: return DiffKind::Backward;
      case FamilyTag::Backward: return DiffKind::Forward;
      case FamilyTag::Centered: return DiffKind::Centered;
      case FamilyTag::DualPair: return DiffKind::Backward;
    }
    return DiffKind::Backward;
  }

  /// The centered family always closes with one-sided differences at the
  /// boundary (it is the accuracy-oriented family and its stencil cannot fit
  /// there); the shift families use zero extension for compact-support
  /// fields, which is what makes their operator algebra exact.
  GhostPolicy resolve(bool compact_support) const {
    if (ghost != GhostPolicy::Auto) return ghost;
    if (tag == FamilyTag::Centered) return GhostPolicy::OneSided;
    return compact_support ? GhostPolicy::ZeroExtend : GhostPolicy::OneSided;
  }

  const char* name() const {
    switch (tag) {
      case FamilyTag::Forward: return "forward";
      case FamilyTag::Backward: return "backward";
      case FamilyTag::Centered: return "centered";
      case FamilyTag::DualPair: return "dual-pair";
    }
    return "?";
  }

  static StencilFamily parse(const std::string& s) {
    if (s == "forward") return forward();
    if (s == "backward") return backward();
    if (s == "centered") return centered();
    if (s == "dual-pair" || s == "dual") return dual_pair();
    throw ParameterError("unknown stencil family: " + s);
  }
};

struct StencilTap {
  Index packed;
  Real weight;
};

/// Taps of the first difference along `axis` at packed node k; at most two.
/// Both the nodewise operators and the sparse assembly are built from this
/// one function, so they agree by construction.
inline int diff_taps(const DomainMask& m, Index k, int axis, DiffKind kind,
                     GhostPolicy ghost, StencilTap taps[2]) {
  const Real h = m.spacing();
  const Index fw = m.neighbor(k, axis, +1);
  const Index bw = m.neighbor(k, axis, -1);
  switch (kind) {
    case DiffKind::Forward:
      if (fw >= 0) {
        taps[0] = {fw, 1.0 / h};
        taps[1] = {k, -1.0 / h};
        return 2;
      }
      if (ghost == GhostPolicy::ZeroExtend) {
        taps[0] = {k, -1.0 / h};
        return 1;
      }
      if (bw >= 0) {
        taps[0] = {k, 1.0 / h};
        taps[1] = {bw, -1.0 / h};
        return 2;
      }
      return 0;
    case DiffKind::Backward:
      if (bw >= 0) {
        taps[0] = {k, 1.0 / h};
        taps[1] = {bw, -1.0 / h};
        return 2;
      }
      if (ghost == GhostPolicy::ZeroExtend) {
        taps[0] = {k, 1.0 / h};
        return 1;
      }
      if (fw >= 0) {
        taps[0] = {fw, 1.0 / h};
        taps[1] = {k, -1.0 / h};
        return 2;
      }
      return 0;
    case DiffKind::Centered:
      if (fw >= 0 && bw >= 0) {
        taps[0] = {fw, 0.5 / h};
        taps[1] = {bw, -0.5 / h};
        return 2;
      }
      if (ghost == GhostPolicy::ZeroExtend) {
        int n = 0;
        if (fw >= 0) taps[n++] = {fw, 0.5 / h};
        if (bw >= 0) taps[n++] = {bw, -0.5 / h};
        return n;
      }
      if (fw >= 0) {
        taps[0] = {fw, 1.0 / h};
        taps[1] = {k, -1.0 / h};
        return 2;
      }
      if (bw >= 0) {
        taps[0] = {k, 1.0 / h};
        taps[1] = {bw, -1.0 / h};
        return 2;
      }
      return 0;
  }
  return 0;
}

/// First difference of one stored column at packed node k along `axis`;
/// ghost must already be resolved (not Auto).
inline Real diff_at(const DomainMask& m, const Mat& vals, int col, Index k,
                    int axis, DiffKind kind, GhostPolicy ghost) {
  StencilTap taps[2];
  const int n = diff_taps(m, k, axis, kind, ghost, taps);
  Real s = 0.0;
  for (int t = 0; t < n; ++t) s += taps[t].weight * vals(taps[t].packed, col);
  return s;
}

}  // namespace kornlab
