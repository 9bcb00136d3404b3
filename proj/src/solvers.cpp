#include "kornlab/solvers.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace kornlab {

Vec cg_solve(const SparseOperator& a, const Vec& b, Real tol, Index max_iters,
             bool jacobi) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw ParameterError("cg_solve: shape mismatch");
  const Index n = b.size();
  if (max_iters <= 0) max_iters = 10 * n + 50;

  const Real bnorm = b.norm();
  if (bnorm == 0.0) return Vec::Zero(n);

  Vec invdiag;
  if (jacobi) {
    invdiag = a.diagonal();
    for (Index i = 0; i < n; ++i)
      invdiag[i] = invdiag[i] > 0.0 ? 1.0 / invdiag[i] : 1.0;
  }

  Vec x = Vec::Zero(n);
  Vec r = b;
  Vec z = jacobi ? Vec(invdiag.cwiseProduct(r)) : r;
  Vec p = z;
  Real rz = r.dot(z);
  for (Index it = 0; it < max_iters; ++it) {
    if (r.norm() <= tol * bnorm) return x;
    Vec ap = a.apply(p);
    Real pap = p.dot(ap);
    if (!(pap > 0.0)) throw SolverError("cg_solve: matrix not positive definite");
    Real alpha = rz / pap;
    x += alpha * p;
    r -= alpha * ap;
    z = jacobi ? Vec(invdiag.cwiseProduct(r)) : r;
    Real rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  if (r.norm() <= tol * bnorm) return x;
  throw SolverError("cg_solve: iteration cap exceeded");
}

namespace {

enum class Extremum { Largest, Smallest };

EigenResult lobpcg(const SparseOperator& a, const SparseOperator& b,
                   const EigOptions& opts, Extremum which) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw ParameterError("gen_eig: shape mismatch");
  const Index n = a.rows();
  if (n == 0) throw ParameterError("gen_eig: empty system");

  auto b_norm = [&](const Vec& v) { return std::sqrt(v.dot(b.apply(v))); };

  SplitMix64 rng(opts.seed);
  Vec x(n);
  for (Index i = 0; i < n; ++i) x[i] = rng.next_symmetric();
  x /= b_norm(x);

  Vec p;  // previous update direction
  bool have_p = false;
  EigenResult out;

  for (Index it = 0; it < opts.max_iters; ++it) {
    Vec ax = a.apply(x);
    Vec bx = b.apply(x);
    Real rho = x.dot(ax) / x.dot(bx);
    Vec r = ax - rho * bx;
    Real res = r.norm() / (ax.norm() + std::abs(rho) * bx.norm() + 1e-300);

    out.eigenvalue = rho;
    out.eigenvector = x;
    out.residual = res;
    out.iterations = it;
    if (res <= opts.tol) return out;

    // Preconditioned residual: iterate on B^{-1}A (largest) or A^{-1}B
    // (smallest).
    Vec w = (which == Extremum::Largest) ? cg_solve(b, r, opts.cg_tol)
                                         : cg_solve(a, r, opts.cg_tol);

    // B-orthonormal Rayleigh-Ritz basis {x, w, p}.  Candidates are normalized
    // before orthogonalization so the drop test is directional, not absolute.
    std::vector<Vec> basis;
    basis.push_back(x);
    auto push_orthonormal = [&](Vec v) {
      Real nb0 = b_norm(v);
      if (!(nb0 > 0.0)) return;
      v /= nb0;
      for (const Vec& q : basis) v -= q.dot(b.apply(v)) * q;
      for (const Vec& q : basis) v -= q.dot(b.apply(v)) * q;  // re-orthogonalize
      Real nb = b_norm(v);
      if (nb > 1e-8) basis.push_back(v / nb);
    };
    push_orthonormal(w);
    if (have_p) push_orthonormal(p);

    const int m = int(basis.size());
    Eigen::MatrixXd ak(m, m);
    for (int i = 0; i < m; ++i) {
      Vec abi = a.apply(basis[size_t(i)]);
      for (int j = i; j < m; ++j) {
        ak(i, j) = basis[size_t(j)].dot(abi);
        ak(j, i) = ak(i, j);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ak);
    if (es.info() != Eigen::Success)
      throw SolverError("gen_eig: dense Ritz solve failed");
    const int pick = (which == Extremum::Largest) ? m - 1 : 0;
    Eigen::VectorXd y = es.eigenvectors().col(pick);

    Vec x_new = Vec::Zero(n);
    for (int i = 0; i < m; ++i) x_new += y[i] * basis[size_t(i)];
    // Update direction: the part of the step outside the previous iterate.
    Vec p_new = x_new - y[0] * basis[0];
    Real pn = p_new.norm();
    if (pn > 1e-14) {
      p = p_new;
      have_p = true;
    } else {
      have_p = false;
    }
    x = x_new / b_norm(x_new);
  }
  throw SolverError("gen_eig: iteration cap exceeded");
}

}  // namespace

EigenResult gen_eig_max(const SparseOperator& a, const SparseOperator& b,
                        const EigOptions& opts) {
  return lobpcg(a, b, opts, Extremum::Largest);
}

EigenResult gen_eig_min(const SparseOperator& a, const SparseOperator& b,
                        const EigOptions& opts) {
  return lobpcg(a, b, opts, Extremum::Smallest);
}

}  // namespace kornlab
