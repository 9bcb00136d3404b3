#include "kornlab/diffops.hpp"
#include "kornlab/generate.hpp"

#include <doctest.h>

#include <cmath>

using namespace kornlab;

namespace {

MaskPtr unit_square(Real h) {
  return rasterize_covering(ShapeDescriptor::unit_box(2), 2, h);
}

}  // namespace

TEST_CASE("lp_norm of simple fields") {
  MaskPtr m = unit_square(1.0 / 64.0);
  SUBCASE("constant e1 has L2 norm near sqrt(area)") {
    VectorField u = VectorField::from_function(
        m, [](const Coord&, Real* v) { v[0] = 1.0; v[1] = 0.0; });
    // Node-sum quadrature over the closed box overcounts by (n+1)/n per axis.
    CHECK(lp_norm(u, 2.0) == doctest::Approx(1.0).epsilon(0.02));
  }
  SUBCASE("zero field vanishes for every p") {
    VectorField z(m);
    for (Real p : {1.0, 1.5, 2.0, 3.0}) CHECK(lp_norm(z, p) == 0.0);
  }
  SUBCASE("p below 1 is rejected") {
    VectorField z(m);
    CHECK_THROWS_AS(lp_norm(z, 0.5), ParameterError);
  }
}

TEST_CASE("identity matrix field has pointwise Frobenius norm sqrt(N)") {
  MaskPtr m = rasterize_covering(ShapeDescriptor::unit_box(3), 3, 0.25);
  MatrixField id(m);
  for (Index k = 0; k < id.num_nodes(); ++k)
    for (int i = 0; i < 3; ++i) id(k, i, i) = 1.0;
  for (Index k = 0; k < id.num_nodes(); ++k)
    CHECK(id.values().row(k).norm() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("Frobenius pairing") {
  MaskPtr m = unit_square(0.25);
  SUBCASE("inner(I, Phi) integrates the trace") {
    MatrixField id(m), phi(m);
    SplitMix64 rng(3);
    Real trace_sum = 0.0;
    for (Index k = 0; k < phi.num_nodes(); ++k) {
      for (int i = 0; i < 2; ++i) {
        id(k, i, i) = 1.0;
        for (int j = 0; j < 2; ++j) phi(k, i, j) = rng.next_symmetric();
      }
      trace_sum += (phi(k, 0, 0) + phi(k, 1, 1)) * m->grid().cell_volume();
    }
    CHECK(inner(id, phi) == doctest::Approx(trace_sum).epsilon(1e-13));
  }
  SUBCASE("inner(f, f) equals the squared L2 norm") {
    MatrixField f(m);
    SplitMix64 rng(5);
    for (Index k = 0; k < f.num_nodes(); ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) f(k, i, j) = rng.next_symmetric();
    CHECK(inner(f, f) ==
          doctest::Approx(std::pow(lp_norm(f, 2.0), 2.0)).epsilon(1e-13));
  }
  SUBCASE("sym and skw parts are pointwise orthogonal (random 3x3)") {
    MaskPtr m3 = rasterize_covering(ShapeDescriptor::unit_box(3), 3, 0.5);
    MatrixField f(m3);
    SplitMix64 rng(11);
    for (Index k = 0; k < f.num_nodes(); ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) f(k, i, j) = rng.next_symmetric();
    MatrixField s = f.sym(), w = f.skw();
    for (Index k = 0; k < f.num_nodes(); ++k) {
      Real dot = s.values().row(k).dot(w.values().row(k));
      CHECK(std::abs(dot) <= 1e-14);
    }
    CHECK(std::abs(inner(s, w)) <= 1e-13);
  }
  SUBCASE("mask mismatch is rejected") {
    MatrixField a(m), b(unit_square(0.25));
    CHECK_THROWS_AS(inner(a, b), MaskMismatchError);
  }
}

TEST_CASE("lp_norm is absolutely homogeneous") {
  MaskPtr m = unit_square(1.0 / 16.0);
  VectorField u = generate(GeneratorSpec::random_fourier(2.5, 42), m, false);
  for (Real p : {1.0, 1.7, 2.0, 3.0}) {
    Real base = lp_norm(u, p);
    VectorField cu = u;
    cu.values() *= -3.25;
    CHECK(lp_norm(cu, p) == doctest::Approx(3.25 * base).epsilon(1e-14));
  }
}

TEST_CASE("generators") {
  MaskPtr m = unit_square(1.0 / 16.0);
  SUBCASE("rigid motion with a 90-degree generator") {
    std::array<Real, 9> w{0, -1, 0, 1, 0, 0, 0, 0, 0};
    VectorField u = generate(GeneratorSpec::rigid_motion(Coord{0, 0, 0}, w, 2), m, false);
    for (Index k = 0; k < u.num_nodes(); ++k) {
      Coord x = m->coord(m->node(k));
      CHECK(u(k, 0) == doctest::Approx(-x[1]).epsilon(1e-15));
      CHECK(u(k, 1) == doctest::Approx(x[0]).epsilon(1e-15));
    }
  }
  SUBCASE("non-skew rigid generator is rejected") {
    std::array<Real, 9> w{0, 1, 0, 1, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(GeneratorSpec::rigid_motion(Coord{0, 0, 0}, w, 2), ParameterError);
  }
  SUBCASE("same seed reproduces bit-identical fields") {
    VectorField a = generate(GeneratorSpec::random_fourier(2.5, 9), m, true);
    VectorField b = generate(GeneratorSpec::random_fourier(2.5, 9), m, true);
    CHECK((a.values() - b.values()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("bump vanishes exactly on boundary nodes") {
    VectorField u = generate(GeneratorSpec::bump(4), m, true);
    for (Index k = 0; k < u.num_nodes(); ++k)
      if (m->classify(m->node(k)) == NodeClass::Boundary)
        CHECK(u.values().row(k).norm() == 0.0);
    CHECK(sup_norm(u) > 0.0);
  }
  SUBCASE("support box sticking into the boundary is rejected") {
    GeneratorSpec bad = GeneratorSpec::bump_on(Coord{-0.5, -0.5, 0}, Coord{1.5, 1.5, 0}, 1);
    CHECK_THROWS_AS(generate(bad, m, true), GeometryError);
  }
  SUBCASE("decay at most 1 is rejected") {
    CHECK_THROWS_AS(GeneratorSpec::random_fourier(1.0, 1), ParameterError);
  }
}

TEST_CASE("polynomial generator") {
  MaskPtr m = unit_square(0.25);
  SUBCASE("degree bounds are validated") {
    CHECK_THROWS_AS(GeneratorSpec::polynomial(4, 1), ParameterError);
    CHECK_THROWS_AS(GeneratorSpec::polynomial(-1, 1), ParameterError);
  }
  SUBCASE("deterministic and smooth") {
    VectorField a = generate(GeneratorSpec::polynomial(3, 5), m, false);
    VectorField b = generate(GeneratorSpec::polynomial(3, 5), m, false);
    CHECK((a.values() - b.values()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(sup_norm(a) > 0.0);
  }
  SUBCASE("degree-zero fields are constant") {
    VectorField c = generate(GeneratorSpec::polynomial(0, 9), m, false);
    for (Index k = 1; k < c.num_nodes(); ++k) {
      CHECK(c(k, 0) == c(0, 0));
      CHECK(c(k, 1) == c(0, 1));
    }
  }
}

TEST_CASE("field export formats") {
  MaskPtr m = unit_square(0.5);
  VectorField u = generate(GeneratorSpec::bump(2), m, true);
  std::string csv = u.to_csv();
  CHECK(csv.find("# kornlab field csv v1") == 0);
  CHECK(csv.find("u1") != std::string::npos);
  std::string js = u.to_json();
  CHECK(js.find("\"nodes\"") != std::string::npos);
  CHECK(js.find("\"dim\":2") != std::string::npos);
}

TEST_CASE("extension by zero preserves every lp norm exactly") {
  MaskPtr small = unit_square(1.0 / 8.0);
  // Pad only on the high side so node coordinates coincide.
  GridSpec big_grid = GridSpec::covering(2, 1.0 / 8.0, Coord{0, 0, 0}, Coord{2, 2, 0});
  ShapeDescriptor big_box = ShapeDescriptor::box(Coord{0, 0, 0}, Coord{2, 2, 0});
  MaskPtr big = std::make_shared<DomainMask>(rasterize(big_box, big_grid));

  VectorField u = generate(GeneratorSpec::bump(17), small, true);
  VectorField v = extend_by_zero(u, big);
  for (Real p : {1.0, 1.5, 2.0, 3.0}) CHECK(lp_norm(v, p) == lp_norm(u, p));

  StencilFamily fam = StencilFamily::dual_pair();
  CHECK(lp_norm(sym_grad(v, fam), 2.0) == lp_norm(sym_grad(u, fam), 2.0));
}
