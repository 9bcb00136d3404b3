#include "kornlab/generate.hpp"
#include "kornlab/diffops.hpp"
#include "kornlab/solvers.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

using namespace kornlab;

namespace {

MaskPtr unit_square(Real h) {
  return rasterize_covering(ShapeDescriptor::unit_box(2), 2, h);
}

SparseOperator sparse_from_dense(const Mat& d, bool symmetric) {
  SparseMat s = d.sparseView();
  return SparseOperator(std::move(s), symmetric);
}

Mat random_spd(Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Mat r(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) r(i, j) = rng.next_symmetric();
  return r.transpose() * r + Mat::Identity(n, n) * 0.5;
}

}  // namespace

TEST_CASE("assembly oracle: matrix-vector products match the diffops") {
  MaskPtr m = rasterize_covering(ShapeDescriptor::ball(Coord{0, 0, 0}, 1.0), 2, 0.125);
  for (auto bc : {BoundaryCondition::ZeroBoundary, BoundaryCondition::Free}) {
    for (const char* fname : {"forward", "centered", "dual-pair"}) {
      StencilFamily fam = StencilFamily::parse(fname);
      SparseOperator g = assemble(OperatorName::Grad, *m, fam, bc);
      SparseOperator s = assemble(OperatorName::SymGrad, *m, fam, bc);
      SparseOperator d = assemble(OperatorName::Div, *m, fam, bc);
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        VectorField u = generate(GeneratorSpec::random_fourier(2.0, seed), m,
                                 bc == BoundaryCondition::ZeroBoundary);
        Vec x = field_to_dof(u, bc);
        Vec gx = g.apply(x);
        Vec sx = s.apply(x);
        Vec dx = d.apply(x);
        MatrixField gu = grad(u, fam);
        MatrixField su = sym_grad(u, fam);
        ScalarField du = div_vec(u, fam);
        Real worst = 0.0;
        for (Index k = 0; k < m->num_nodes(); ++k) {
          for (int q = 0; q < 4; ++q) {
            worst = std::max(worst, std::abs(gx[k * 4 + q] - gu.values()(k, q)));
            worst = std::max(worst, std::abs(sx[k * 4 + q] - su.values()(k, q)));
          }
          worst = std::max(worst, std::abs(dx[k] - du.values[k]));
        }
        CHECK(worst <= 1e-14 * (1.0 + sup_norm(gu) / m->spacing()));
      }
    }
  }
}

TEST_CASE("mass matrix is h^N times the identity") {
  MaskPtr m = unit_square(0.25);
  SparseOperator mass = assemble(OperatorName::Mass, *m, StencilFamily::forward(),
                                 BoundaryCondition::ZeroBoundary);
  CHECK(mass.rows() == m->num_interior() * 2);
  Vec x = Vec::Ones(mass.cols());
  Vec y = mass.apply(x);
  for (Index i = 0; i < y.size(); ++i)
    CHECK(y[i] == doctest::Approx(0.0625).epsilon(1e-15));
}

TEST_CASE("gram matrices are exactly symmetric and PSD") {
  MaskPtr m = unit_square(0.125);
  StencilFamily fam = StencilFamily::forward();
  SparseOperator s = assemble(OperatorName::SymGrad, *m, fam,
                              BoundaryCondition::ZeroBoundary);
  SparseOperator a = gram(s, *m);
  REQUIRE(a.symmetric());
  const SparseMat& mat = a.matrix();
  for (Index r = 0; r < mat.outerSize(); ++r)
    for (SparseMat::InnerIterator it(mat, r); it; ++it)
      CHECK(it.value() == mat.coeff(it.col(), it.row()));
  SplitMix64 rng(77);
  for (int t = 0; t < 100; ++t) {
    Vec x(a.cols());
    for (Index i = 0; i < x.size(); ++i) x[i] = rng.next_symmetric();
    CHECK(x.dot(a.apply(x)) >= -1e-12 * x.squaredNorm());
  }
}

TEST_CASE("rigid motions are outside the zero-boundary gradient kernel") {
  MaskPtr m = unit_square(0.125);
  StencilFamily fam = StencilFamily::forward();
  SparseOperator g = assemble(OperatorName::Grad, *m, fam,
                              BoundaryCondition::ZeroBoundary);
  std::array<Real, 9> w{0, -1, 0, 1, 0, 0, 0, 0, 0};
  VectorField rot = generate(GeneratorSpec::rigid_motion(Coord{0, 0, 0}, w, 2), m, false);
  Vec x = field_to_dof(rot, BoundaryCondition::ZeroBoundary);
  CHECK(gram(g, *m).apply(x).norm() > 0.0);
}

TEST_CASE("sym-grad gram on zero-boundary DOFs is positive definite") {
  // Brute-force dense eigendecomposition on a small grid.
  MaskPtr m = rasterize_covering(ShapeDescriptor::unit_box(2), 2, 1.0 / 6.0);
  SparseOperator s = assemble(OperatorName::SymGrad, *m, StencilFamily::forward(),
                              BoundaryCondition::ZeroBoundary);
  Mat dense = Mat(gram(s, *m).matrix());
  Eigen::SelfAdjointEigenSolver<Mat> es(dense);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("cg_solve") {
  SUBCASE("identity system returns b immediately") {
    Mat id = Mat::Identity(8, 8);
    SparseOperator a = sparse_from_dense(id, true);
    SplitMix64 rng(5);
    Vec b(8);
    for (Index i = 0; i < 8; ++i) b[i] = rng.next_symmetric();
    Vec x = cg_solve(a, b, 1e-12);
    CHECK((x - b).norm() <= 1e-12);
  }
  SUBCASE("matches the dense oracle on 20 random SPD 10x10 systems") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Mat d = random_spd(10, 1000 + s);
      SparseOperator a = sparse_from_dense(d, true);
      SplitMix64 rng(2000 + s);
      Vec b(10);
      for (Index i = 0; i < 10; ++i) b[i] = rng.next_symmetric();
      Vec x = cg_solve(a, b, 1e-13);
      Vec x_dense = d.llt().solve(b);
      CHECK((x - x_dense).norm() <= 1e-10 * (1.0 + x_dense.norm()));
    }
  }
  SUBCASE("laplacian-type system reaches tol 1e-12") {
    MaskPtr m = unit_square(1.0 / 16.0);
    StencilFamily fam = StencilFamily::dual_pair();
    SparseOperator g = assemble(OperatorName::Grad, *m, fam,
                                BoundaryCondition::ZeroBoundary);
    SparseOperator a = gram(g, *m);
    VectorField bump = generate(GeneratorSpec::bump(8), m, true);
    Vec b = field_to_dof(bump, BoundaryCondition::ZeroBoundary);
    Vec x = cg_solve(a, b, 1e-12);
    CHECK((a.apply(x) - b).norm() <= 1e-12 * b.norm());
  }
  SUBCASE("iteration cap raises SolverError") {
    Mat d = random_spd(30, 3);
    SparseOperator a = sparse_from_dense(d, true);
    Vec b = Vec::Ones(30);
    CHECK_THROWS_AS(cg_solve(a, b, 1e-14, 2), SolverError);
  }
}

TEST_CASE("generalized eigensolvers against the dense oracle") {
  SUBCASE("A = 2B gives lambda = 2") {
    Mat bd = random_spd(12, 9);
    SparseOperator b = sparse_from_dense(bd, true);
    SparseOperator a = sparse_from_dense(Mat(2.0 * bd), true);
    EigOptions opts;
    opts.seed = 3;
    EigenResult r = gen_eig_max(a, b, opts);
    CHECK(r.eigenvalue == doctest::Approx(2.0).epsilon(1e-9));
    EigenResult rm = gen_eig_min(a, b, opts);
    CHECK(rm.eigenvalue == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("20 random symmetric 8x8 pairs") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Mat r(8, 8);
      SplitMix64 rng(500 + s);
      for (Index i = 0; i < 8; ++i)
        for (Index j = 0; j < 8; ++j) r(i, j) = rng.next_symmetric();
      Mat ad = r.transpose() * r;  // PSD
      Mat bd = random_spd(8, 700 + s);
      SparseOperator a = sparse_from_dense(ad, true);
      SparseOperator b = sparse_from_dense(bd, true);
      Eigen::GeneralizedSelfAdjointEigenSolver<Mat> dense(ad, bd);
      EigOptions opts;
      opts.seed = 11 + s;
      opts.tol = 1e-11;
      EigenResult mx = gen_eig_max(a, b, opts);
      CHECK(std::abs(mx.eigenvalue - dense.eigenvalues().maxCoeff()) <= 1e-8);
      // Smallest eigenvalue via the SPD shift A + B.
      SparseOperator a_spd = sparse_from_dense(Mat(ad + bd), true);
      Eigen::GeneralizedSelfAdjointEigenSolver<Mat> dense2(Mat(ad + bd), bd);
      EigenResult mn = gen_eig_min(a_spd, b, opts);
      CHECK(std::abs(mn.eigenvalue - dense2.eigenvalues().minCoeff()) <= 1e-8);
    }
  }
  SUBCASE("PSD A with kernel against B = I finds the top eigenvalue of A") {
    Mat r(6, 2);
    SplitMix64 rng(31);
    for (Index i = 0; i < 6; ++i)
      for (Index j = 0; j < 2; ++j) r(i, j) = rng.next_symmetric();
    Mat ad = r * r.transpose();  // rank 2, nontrivial kernel
    SparseOperator a = sparse_from_dense(ad, true);
    SparseOperator b = sparse_from_dense(Mat::Identity(6, 6), true);
    Eigen::SelfAdjointEigenSolver<Mat> dense(ad);
    EigOptions opts;
    opts.seed = 5;
    EigenResult mx = gen_eig_max(a, b, opts);
    CHECK(std::abs(mx.eigenvalue - dense.eigenvalues().maxCoeff()) <= 1e-8);
  }
  SUBCASE("Rayleigh quotient of the returned eigenvector matches lambda") {
    Mat ad = random_spd(10, 41);
    Mat bd = random_spd(10, 43);
    EigOptions opts;
    opts.seed = 7;
    EigenResult r = gen_eig_max(sparse_from_dense(ad, true),
                                sparse_from_dense(bd, true), opts);
    Real rq = r.eigenvector.dot(ad * r.eigenvector) /
              r.eigenvector.dot(bd * r.eigenvector);
    CHECK(std::abs(rq - r.eigenvalue) <= opts.tol * std::abs(r.eigenvalue) * 10);
  }
  SUBCASE("same seed reproduces iteration count and value bitwise") {
    Mat ad = random_spd(14, 51);
    Mat bd = random_spd(14, 53);
    EigOptions opts;
    opts.seed = 19;
    EigenResult r1 = gen_eig_max(sparse_from_dense(ad, true),
                                 sparse_from_dense(bd, true), opts);
    EigenResult r2 = gen_eig_max(sparse_from_dense(ad, true),
                                 sparse_from_dense(bd, true), opts);
    CHECK(r1.iterations == r2.iterations);
    CHECK(r1.eigenvalue == r2.eigenvalue);
  }
  SUBCASE("iteration cap raises SolverError") {
    Mat ad = random_spd(16, 61);
    Mat bd = random_spd(16, 63);
    EigOptions opts;
    opts.seed = 2;
    opts.tol = 1e-14;
    opts.max_iters = 1;
    CHECK_THROWS_AS(
        gen_eig_max(sparse_from_dense(ad, true), sparse_from_dense(bd, true), opts),
        SolverError);
  }
}

TEST_CASE("coordinate dump has a parsable header") {
  Mat d = Mat::Identity(3, 3);
  SparseOperator a = sparse_from_dense(d, true);
  std::string txt = a.to_coordinate_text();
  CHECK(txt.find("% coordinate 3 3 3") == 0);
}
