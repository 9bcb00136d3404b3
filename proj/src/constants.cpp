#include "kornlab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace kornlab {

ExplicitConstants explicit_constants(Real p, int dim, Real diam) {
  if (!(p >= 1.0)) throw ParameterError("explicit_constants: p must be >= 1");
  if (dim < 1 || dim > 3) throw ParameterError("explicit_constants: N must be 1, 2 or 3");
  if (!(diam > 0.0)) throw ParameterError("explicit_constants: diam must be positive");
  ExplicitConstants c;
  c.p = p;
  c.dim = dim;
  c.diam = diam;
  c.c_pn = (2.0 + std::abs(p - 2.0) + std::sqrt(Real(dim))) * p / (p + Real(dim));
  c.kappa_omega = diam * c.c_pn;
  c.kappa_boundary = p * (p + 1.0) / (p + Real(dim)) * diam;
  return c;
}

const char* korn_mode_name(KornMode m) {
  switch (m) {
    case KornMode::First: return "first";
    case KornMode::Second: return "second";
    case KornMode::PkPlain: return "pk-plain";
    case KornMode::PkWeighted: return "pk-weighted";
  }
  return "?";
}

const char* bound_direction_name(BoundDirection b) {
  return b == BoundDirection::SharpEigen ? "sharp-eigen" : "lower-bound";
}

Real korn_quotient(const VectorField& u, Real p, KornMode mode, StencilFamily fam) {
  Real gp = std::pow(lp_norm(grad(u, fam), p), p);
  Real sp = std::pow(lp_norm(sym_grad(u, fam), p), p);
  if (mode == KornMode::First) {
    if (sp == 0.0) throw ParameterError("korn_quotient: zero denominator");
    return gp / sp;
  }
  Real up = std::pow(lp_norm(u, p), p);
  if (up + sp == 0.0) throw ParameterError("korn_quotient: zero denominator");
  return (up + gp) / (up + sp);
}

Real pk_quotient(const VectorField& u, Real p, bool weighted, StencilFamily fam) {
  const DomainMask& m = u.mask();
  Real up = std::pow(lp_norm(u, p), p);
  ScalarField w = ScalarField::zero(u.mask_ptr());
  for (Index k = 0; k < m.num_nodes(); ++k) {
    Coord x = m.coord(m.node(k));
    Real s = 0.0;
    for (int d = 0; d < m.dim(); ++d) s += x[d] * x[d];
    w.values[k] = weighted ? std::pow(s, 0.5 * p) : 1.0;
  }
  Real sp = std::pow(lp_norm(sym_grad(u, fam), p, &w), p);
  if (sp == 0.0) throw ParameterError("pk_quotient: zero denominator");
  return std::pow(up / sp, 1.0 / p);
}

namespace {

KornEstimate finish_eigen_estimate(MaskPtr mask, KornMode mode, Real value,
                                   const EigenResult& er, BoundaryCondition bc,
                                   Real p, std::uint64_t seed) {
  KornEstimate e;
  e.value = value;
  e.p = p;
  e.mode = mode;
  e.bound = BoundDirection::SharpEigen;
  e.residual = er.residual;
  e.iterations = er.iterations;
  e.h = mask->spacing();
  e.dim = mask->dim();
  e.seed = seed;
  e.maximizer =
      std::make_shared<VectorField>(dof_to_field(er.eigenvector, mask, bc));
  return e;
}

}  // namespace

KornEstimate korn_first_p2(MaskPtr mask, StencilFamily fam, const EigOptions& opts) {
  if (mask->num_interior() < 1)
    throw DegenerateDomainError("korn_first_p2: no interior nodes");
  const BoundaryCondition bc = BoundaryCondition::ZeroBoundary;
  SparseOperator g = assemble(OperatorName::Grad, *mask, fam, bc);
  SparseOperator s = assemble(OperatorName::SymGrad, *mask, fam, bc);
  SparseOperator a = gram(g, *mask);
  SparseOperator b = gram(s, *mask);
  EigenResult er = gen_eig_max(a, b, opts);
  return finish_eigen_estimate(mask, KornMode::First, er.eigenvalue, er, bc, 2.0,
                               opts.seed);
}

KornEstimate korn_first_p2(MaskPtr mask, StencilFamily fam, Real tol,
                           std::uint64_t seed) {
  EigOptions opts;
  opts.tol = tol;
  opts.seed = seed;
  return korn_first_p2(std::move(mask), fam, opts);
}

KornEstimate korn_second_p2(MaskPtr mask, StencilFamily fam, const EigOptions& opts) {
  const BoundaryCondition bc = BoundaryCondition::Free;
  SparseOperator g = assemble(OperatorName::Grad, *mask, fam, bc);
  SparseOperator s = assemble(OperatorName::SymGrad, *mask, fam, bc);
  SparseOperator m = assemble(OperatorName::Mass, *mask, fam, bc);
  SparseOperator a = add(m, gram(g, *mask));
  SparseOperator b = add(m, gram(s, *mask));
  EigenResult er = gen_eig_max(a, b, opts);
  return finish_eigen_estimate(mask, KornMode::Second, er.eigenvalue, er, bc, 2.0,
                               opts.seed);
}

KornEstimate korn_second_p2(MaskPtr mask, StencilFamily fam, Real tol,
                            std::uint64_t seed) {
  EigOptions opts;
  opts.tol = tol;
  opts.seed = seed;
  return korn_second_p2(std::move(mask), fam, opts);
}

// ---------------------------------------------------------------------------
// Smoothed quotient ascent.

namespace {

/// One p-homogeneous functional sum_blocks w_b ((|block|^2 + eps^2)^(p/2)) h^N
/// where blocks are consecutive rows of op applied to the DOF vector.
struct SmoothTerm {
  const SparseOperator* op = nullptr;
  int block = 1;
  Vec weights;  // per block; empty = all ones

  Real value(const Vec& y, Real p, Real eps, Real hN) const {
    Real acc = 0.0;
    const Index nb = y.size() / block;
    for (Index b = 0; b < nb; ++b) {
      Real t = y.segment(b * block, block).squaredNorm();
      Real w = weights.size() ? weights[b] : 1.0;
      acc += w * std::pow(t + eps * eps, 0.5 * p);
    }
    return acc * hN;
  }

  /// d/dy of value: p (t + eps^2)^(p/2 - 1) y per block, times weight and h^N.
  Vec dvalue(const Vec& y, Real p, Real eps, Real hN) const {
    Vec g(y.size());
    const Index nb = y.size() / block;
    for (Index b = 0; b < nb; ++b) {
      Real t = y.segment(b * block, block).squaredNorm();
      Real w = weights.size() ? weights[b] : 1.0;
      Real f = hN * w * p * std::pow(t + eps * eps, 0.5 * p - 1.0);
      g.segment(b * block, block) = f * y.segment(b * block, block);
    }
    return g;
  }
};

struct QuotientProblem {
  std::vector<SmoothTerm> num, den;
  Real hN = 1.0;

  Real eval(const std::vector<Vec>& ynum, const std::vector<Vec>& yden, Real p,
            Real eps, Real& n_out, Real& d_out) const {
    Real n = 0.0, d = 0.0;
    for (size_t i = 0; i < num.size(); ++i) n += num[i].value(ynum[i], p, eps, hN);
    for (size_t i = 0; i < den.size(); ++i) d += den[i].value(yden[i], p, eps, hN);
    n_out = n;
    d_out = d;
    return n / d;
  }
};

KornEstimate smoothed_quotient_ascent(MaskPtr mask, Real p, KornMode mode,
                                      StencilFamily fam, const QuotientOptions& opts,
                                      const QuotientProblem& prob,
                                      BoundaryCondition bc) {
  const Index n_dof = prob.num.front().op->cols();
  const int stages = std::max(1, opts.continuation + 1);
  const Index iters_per_stage = std::max<Index>(8, opts.max_iters / stages);

  Real best_q = -1.0;
  Vec best_x;
  Index total_iters = 0;
  bool any_step = false;

  for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
    SplitMix64 rng(opts.seed + 0x9e3779b9ull * std::uint64_t(restart));
    Vec x(n_dof);
    for (Index i = 0; i < n_dof; ++i) x[i] = rng.next_symmetric();
    x /= x.norm();

    auto apply_all = [&](const std::vector<SmoothTerm>& terms, const Vec& v) {
      std::vector<Vec> ys;
      ys.reserve(terms.size());
      for (const auto& t : terms) ys.push_back(t.op->apply(v));
      return ys;
    };

    for (int stage = 0; stage < stages; ++stage) {
      std::vector<Vec> yn = apply_all(prob.num, x);
      std::vector<Vec> yd = apply_all(prob.den, x);
      // Smoothing floor relative to the current denominator block magnitudes.
      Real tmax = 0.0;
      for (const Vec& y : yd) tmax = std::max(tmax, y.cwiseAbs().maxCoeff());
      Real eps = opts.eps_smooth_rel * (tmax > 0 ? tmax : 1.0) / std::pow(2.0, stage);

      Real nv, dv;
      Real q = prob.eval(yn, yd, p, eps, nv, dv);
      Real step = opts.step0;

      for (Index it = 0; it < iters_per_stage; ++it) {
        ++total_iters;
        // gradient of N/D: (N' D - N D') / D^2; ascent uses N' - q D'.
        Vec grad = Vec::Zero(n_dof);
        for (size_t i = 0; i < prob.num.size(); ++i)
          grad += prob.num[i].op->apply_transpose(
              prob.num[i].dvalue(yn[i], p, eps, prob.hN));
        Vec gd = Vec::Zero(n_dof);
        for (size_t i = 0; i < prob.den.size(); ++i)
          gd += prob.den[i].op->apply_transpose(
              prob.den[i].dvalue(yd[i], p, eps, prob.hN));
        grad = (grad - q * gd) / dv;
        Real gn = grad.norm();
        if (gn <= 1e-300) break;
        Vec dir = grad / gn;

        auto try_alpha = [&](Real alpha, Real& q_out) {
          Vec x_try = x + alpha * dir;
          x_try /= x_try.norm();
          std::vector<Vec> yn_t = apply_all(prob.num, x_try);
          std::vector<Vec> yd_t = apply_all(prob.den, x_try);
          Real nv_t, dv_t;
          Real q_t = prob.eval(yn_t, yd_t, p, eps, nv_t, dv_t);
          q_out = q_t;
          if (q_t > q * (1.0 + 1e-14)) {
            x = std::move(x_try);
            yn = std::move(yn_t);
            yd = std::move(yd_t);
            q = q_t;
            nv = nv_t;
            dv = dv_t;
            return true;
          }
          return false;
        };

        bool accepted = false;
        Real alpha = step;
        Real q_probe;
        for (int bt = 0; bt < 40; ++bt) {
          if (try_alpha(alpha, q_probe)) {
            accepted = true;
            any_step = true;
            break;
          }
          alpha *= 0.5;
        }
        if (!accepted) break;
        step = std::min(opts.step0, alpha * 2.0);
      }
    }

    // Exact quotient of this restart's final iterate.
    VectorField u = dof_to_field(x, mask, bc);
    Real q_exact;
    if (mode == KornMode::First || mode == KornMode::Second)
      q_exact = korn_quotient(u, p, mode, fam);
    else
      q_exact = pk_quotient(u, p, mode == KornMode::PkWeighted, fam);
    if (q_exact > best_q) {
      best_q = q_exact;
      best_x = x;
    }
  }

  if (!any_step)
    throw OptimizationStallError("korn_general_p: all restarts stalled", best_q);

  KornEstimate e;
  e.value = best_q;
  e.p = p;
  e.mode = mode;
  e.bound = BoundDirection::LowerBound;
  e.residual = 0.0;
  e.iterations = total_iters;
  e.h = mask->spacing();
  e.dim = mask->dim();
  e.seed = opts.seed;
  e.maximizer = std::make_shared<VectorField>(dof_to_field(best_x, mask, bc));
  return e;
}

SparseOperator identity_op(Index n) {
  SparseMat m(n, n);
  m.setIdentity();
  return SparseOperator(std::move(m), true);
}

Vec node_weight_pow(const DomainMask& mask, Real p, BoundaryCondition /*bc*/) {
  // |x|^p per non-exterior node (operator rows span all non-exterior nodes).
  Vec w(mask.num_nodes());
  for (Index k = 0; k < mask.num_nodes(); ++k) {
    Coord x = mask.coord(mask.node(k));
    Real s = 0.0;
    for (int d = 0; d < mask.dim(); ++d) s += x[d] * x[d];
    w[k] = std::pow(s, 0.5 * p);
  }
  return w;
}

}  // namespace

KornEstimate korn_general_p(MaskPtr mask, Real p, KornMode mode, StencilFamily fam,
                            const QuotientOptions& opts) {
  if (!(p > 1.0)) throw ParameterError("korn_general_p: p must exceed 1");
  if (mode != KornMode::First && mode != KornMode::Second)
    throw ParameterError("korn_general_p: mode must be first or second");
  const BoundaryCondition bc = (mode == KornMode::First)
                                   ? BoundaryCondition::ZeroBoundary
                                   : BoundaryCondition::Free;
  SparseOperator g = assemble(OperatorName::Grad, *mask, fam, bc);
  SparseOperator s = assemble(OperatorName::SymGrad, *mask, fam, bc);
  SparseOperator id = identity_op(dof_count(*mask, bc));

  const int N = mask->dim();
  QuotientProblem prob;
  prob.hN = mask->grid().cell_volume();
  SmoothTerm tg{&g, N * N, Vec()};
  SmoothTerm ts{&s, N * N, Vec()};
  SmoothTerm tu{&id, N, Vec()};
  prob.num.push_back(tg);
  prob.den.push_back(ts);
  if (mode == KornMode::Second) {
    prob.num.push_back(tu);
    prob.den.push_back(tu);
  }
  return smoothed_quotient_ascent(mask, p, mode, fam, opts, prob, bc);
}

KornEstimate poincare_korn_best(MaskPtr mask, Real p, bool weighted,
                                StencilFamily fam, Real tol, std::uint64_t seed) {
  if (!(p >= 1.0)) throw ParameterError("poincare_korn_best: p must be >= 1");
  const BoundaryCondition bc = BoundaryCondition::ZeroBoundary;
  const KornMode mode = weighted ? KornMode::PkWeighted : KornMode::PkPlain;
  SparseOperator s = assemble(OperatorName::SymGrad, *mask, fam, bc);

  if (p == 2.0) {
    Vec w;
    const Vec* wp = nullptr;
    if (weighted) {
      w = node_weight_pow(*mask, 2.0, bc);
      wp = &w;
    }
    SparseOperator a = gram(s, *mask, wp, mask->dim() * mask->dim());
    SparseOperator m = assemble(OperatorName::Mass, *mask, fam, bc);
    EigOptions opts;
    opts.tol = tol;
    opts.seed = seed;
    EigenResult er = gen_eig_min(a, m, opts);
    if (!(er.eigenvalue > 0.0))
      throw SolverError("poincare_korn_best: nonpositive eigenvalue");
    KornEstimate e = finish_eigen_estimate(mask, mode,
                                           1.0 / std::sqrt(er.eigenvalue), er, bc,
                                           2.0, seed);
    return e;
  }

  SparseOperator id = identity_op(dof_count(*mask, bc));
  const int N = mask->dim();
  QuotientProblem prob;
  prob.hN = mask->grid().cell_volume();
  SmoothTerm tu{&id, N, Vec()};
  SmoothTerm ts{&s, N * N, weighted ? node_weight_pow(*mask, p, bc) : Vec()};
  prob.num.push_back(tu);
  prob.den.push_back(ts);
  QuotientOptions opts;
  opts.seed = seed;
  KornEstimate e = smoothed_quotient_ascent(mask, p, mode, fam, opts, prob, bc);
  // smoothed_quotient_ascent already returns the exact p-th-root quotient via
  // pk_quotient for PK modes.
  return e;
}

}  // namespace kornlab
