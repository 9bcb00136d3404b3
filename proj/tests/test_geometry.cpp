#include "kornlab/mask.hpp"

#include <doctest.h>

#include <cmath>

using namespace kornlab;

namespace {

MaskPtr unit_square(Real h) {
  return rasterize_covering(ShapeDescriptor::unit_box(2), 2, h);
}

}  // namespace

TEST_CASE("unit square at h=0.25: counted by hand") {
  MaskPtr m = unit_square(0.25);
  // 5x5 nodes land inside the closed box, the 3x3 core is interior.
  CHECK(m->num_nodes() == 25);
  CHECK(m->num_interior() == 9);
  CHECK(m->num_boundary() == 16);
}

TEST_CASE("degenerate domains are rejected") {
  CHECK_THROWS_AS(ShapeDescriptor::ball(Coord{0, 0, 0}, 0.0), ParameterError);
  // A ball smaller than the spacing captures no interior node.
  ShapeDescriptor tiny = ShapeDescriptor::ball(Coord{0.5, 0.5, 0}, 0.05);
  GridSpec g = GridSpec::covering(2, 0.25, Coord{0, 0, 0}, Coord{1, 1, 0});
  CHECK_THROWS_AS(rasterize(tiny, g), DegenerateDomainError);
}

TEST_CASE("shape exceeding the grid is a geometry error") {
  ShapeDescriptor big = ShapeDescriptor::ball(Coord{0, 0, 0}, 10.0);
  GridSpec g = GridSpec::covering(2, 0.25, Coord{0, 0, 0}, Coord{1, 1, 0});
  CHECK_THROWS_AS(rasterize(big, g), GeometryError);
}

TEST_CASE("scaling a box by 2 multiplies interior count by about 2^N") {
  const Real h = 1.0 / 16.0;
  MaskPtr base = unit_square(h);
  ShapeDescriptor scaled =
      ShapeDescriptor::transformed(ShapeDescriptor::unit_box(2), 2.0, Coord{0, 0, 0});
  MaskPtr big = rasterize_covering(scaled, 2, h);
  Real factor = Real(big->num_interior()) / Real(base->num_interior());
  CHECK(factor == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("diameters of the primitive shapes") {
  CHECK(unit_square(0.25)->diameter() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  MaskPtr ball =
      rasterize_covering(ShapeDescriptor::ball(Coord{0, 0, 0}, 1.5), 2, 0.25);
  CHECK(ball->diameter() == doctest::Approx(3.0).epsilon(1e-15));
  ShapeDescriptor scaled =
      ShapeDescriptor::transformed(ShapeDescriptor::unit_box(2), 2.0, Coord{0, 0, 0});
  MaskPtr big = rasterize_covering(scaled, 2, 0.25);
  CHECK(big->diameter() == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("diameter falls back to node pairs for boolean shapes") {
  ShapeDescriptor tie = ShapeDescriptor::combine(
      ShapeKind::Union, ShapeDescriptor::box(Coord{0, 0, 0}, Coord{1, 0.25, 0}),
      ShapeDescriptor::box(Coord{0, 0, 0}, Coord{0.25, 1, 0}));
  MaskPtr m = rasterize_covering(tie, 2, 0.125);
  CHECK(m->diameter() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("staircase boundary weights") {
  SUBCASE("unit square, h=0.25: perimeter plus corner over-count") {
    MaskPtr m = unit_square(0.25);
    // 12 edge nodes expose one face, 4 corners expose two: 4 + 4h.
    CHECK(m->boundary_weight_total() == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(m->boundary_exact());
  }
  SUBCASE("unit segment: two endpoint faces") {
    MaskPtr m = rasterize_covering(
        ShapeDescriptor::box(Coord{0, 0, 0}, Coord{1, 0, 0}), 1, 0.125);
    CHECK(m->boundary_weight_total() == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("unit cube, h=0.5: enumerated exposed faces") {
    MaskPtr m = rasterize_covering(ShapeDescriptor::unit_box(3), 3, 0.5);
    // 6 face centers x1, 12 edge mids x2, 8 corners x3 = 54 faces of h^2 each.
    CHECK(m->boundary_weight_total() == doctest::Approx(54.0 * 0.25).epsilon(1e-14));
    CHECK(m->boundary_weight_total() >= 6.0 * 0.25);
  }
  SUBCASE("ball is flagged staircase") {
    MaskPtr m = rasterize_covering(ShapeDescriptor::ball(Coord{0, 0, 0}, 1.0), 2, 0.25);
    CHECK_FALSE(m->boundary_exact());
  }
}

TEST_CASE("rasterization is deterministic") {
  MaskPtr a = unit_square(0.125);
  MaskPtr b = unit_square(0.125);
  REQUIRE(a->num_nodes() == b->num_nodes());
  for (Index k = 0; k < a->num_nodes(); ++k) CHECK(a->node(k) == b->node(k));
  CHECK(a->boundary_weight_total() == b->boundary_weight_total());
}

TEST_CASE("volume consistency under refinement") {
  SUBCASE("square: the counting error is exactly 2h - h^2, first order") {
    for (Real h : {1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0}) {
      Real err = std::abs(unit_square(h)->volume_estimate() - 1.0);
      CHECK(err == doctest::Approx(2.0 * h - h * h).epsilon(1e-12));
    }
  }
  SUBCASE("ball and annulus: log-log slope at least 1") {
    for (int which = 0; which < 2; ++which) {
      ShapeDescriptor shape = which == 0
                                  ? ShapeDescriptor::ball(Coord{0, 0, 0}, 1.0)
                                  : ShapeDescriptor::annulus(Coord{0, 0, 0}, 0.4, 1.0);
      Real vol = which == 0 ? 3.141592653589793 : 3.141592653589793 * 0.84;
      Real hs[3] = {1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0};
      Real errs[3];
      for (int i = 0; i < 3; ++i)
        errs[i] = std::abs(rasterize_covering(shape, 2, hs[i])->volume_estimate() - vol);
      Real slope = std::log(errs[0] / errs[2]) / std::log(hs[0] / hs[2]);
      CHECK(slope >= 1.0);
    }
  }
}

TEST_CASE("scaling shape and grid together preserves node topology") {
  const Real h = 1.0 / 16.0;
  MaskPtr a = rasterize_covering(ShapeDescriptor::ball(Coord{0, 0, 0}, 1.0), 2, h);
  ShapeDescriptor scaled = ShapeDescriptor::transformed(
      ShapeDescriptor::ball(Coord{0, 0, 0}, 1.0), 2.0, Coord{0, 0, 0});
  MaskPtr b = rasterize_covering(scaled, 2, 2.0 * h);
  REQUIRE(a->num_nodes() == b->num_nodes());
  CHECK(a->num_interior() == b->num_interior());
  CHECK(b->diameter() == doctest::Approx(2.0 * a->diameter()).epsilon(1e-15));
}

TEST_CASE("l-shape and annulus rasterize with the expected topology") {
  MaskPtr l = rasterize_covering(ShapeDescriptor::l_shape(1.0, 0.5), 2, 1.0 / 16.0);
  CHECK(l->volume_estimate() == doctest::Approx(0.75).epsilon(0.15));
  MaskPtr a = rasterize_covering(ShapeDescriptor::annulus(Coord{0, 0, 0}, 0.4, 1.0),
                                 2, 1.0 / 32.0);
  Real vol = 3.141592653589793 * (1.0 - 0.16);
  CHECK(a->volume_estimate() == doctest::Approx(vol).epsilon(0.15));
}

TEST_CASE("shape serialization round-trips") {
  ShapeDescriptor s = ShapeDescriptor::combine(
      ShapeKind::Difference, ShapeDescriptor::ball(Coord{0.25, -1, 0}, 2.0),
      ShapeDescriptor::transformed(ShapeDescriptor::l_shape(1.0, 0.375), 0.5,
                                   Coord{0.125, 0.25, 0}));
  SUBCASE("kv") {
    std::string kv = s.to_kv();
    ShapeDescriptor t = ShapeDescriptor::parse_kv(kv);
    CHECK(t.to_kv() == kv);
  }
  SUBCASE("json") {
    std::string js = s.to_json();
    ShapeDescriptor t = ShapeDescriptor::parse_json(js);
    CHECK(t.to_json() == js);
  }
  SUBCASE("membership preserved") {
    ShapeDescriptor t = ShapeDescriptor::parse_json(s.to_json());
    SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) {
      Coord x{4.0 * rng.next_symmetric(), 4.0 * rng.next_symmetric(), 0.0};
      CHECK(s.contains(x, 2) == t.contains(x, 2));
    }
  }
}

TEST_CASE("cusp shapes rasterize for exploratory sweeps") {
  MaskPtr m = rasterize_covering(ShapeDescriptor::cusp(2.0, 1.0), 2, 1.0 / 32.0);
  CHECK(m->num_interior() > 0);
  CHECK_FALSE(m->boundary_exact());
  CHECK_THROWS_AS(ShapeDescriptor::cusp(1.0, 1.0), ParameterError);  // alpha > 1
}

TEST_CASE("grids refuse to exceed the node cap") {
  Extent huge{40000, 40000, 1};
  CHECK_THROWS_AS(GridSpec(2, 1e-6, Coord{0, 0, 0}, huge), ParameterError);
}

TEST_CASE("mask csv export carries labels") {
  MaskPtr m = unit_square(0.5);
  std::string csv = m->to_csv();
  CHECK(csv.find("interior") != std::string::npos);
  CHECK(csv.find("boundary") != std::string::npos);
  CHECK(csv.find("# kornlab mask csv v1") == 0);
}
