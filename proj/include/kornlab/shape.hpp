#pragma once

#include "kornlab/types.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>

namespace kornlab {

enum class ShapeKind {
  Box,
  Ball,
  Annulus,
  LShape,
  Cusp,
  Transformed,
  Union,
  Intersection,
  Difference,
};

/// Parametric domain shapes with closed membership predicates.  Shapes form a
/// small expression tree (transform / boolean nodes hold children).
///
/// Conventions:
///  - box:      lo <= x <= hi componentwise
///  - ball:     |x - c| <= r
///  - annulus:  r_inner <= |x - c| <= r_outer
///  - l-shape:  [0, arm]^N minus the open orthant (width, inf)^N
///  - cusp:     0 <= x1 <= length, |x_perp| <= x1^alpha  (alpha > 1)
///  - transformed: x in S  iff  (x - shift)/scale in child
///  - difference:  x in A and not (x in B), with B's closed predicate
class ShapeDescriptor {
 public:
  static ShapeDescriptor box(const Coord& lo, const Coord& hi);
  static ShapeDescriptor unit_box(int dim);
  static ShapeDescriptor ball(const Coord& center, Real radius);
  static ShapeDescriptor annulus(const Coord& center, Real r_inner, Real r_outer);
  static ShapeDescriptor l_shape(Real arm, Real width);
  static ShapeDescriptor cusp(Real alpha, Real length);
  static ShapeDescriptor transformed(ShapeDescriptor inner, Real scale,
                                     const Coord& shift);
  static ShapeDescriptor combine(ShapeKind op, ShapeDescriptor a, ShapeDescriptor b);

  ShapeKind kind() const { return kind_; }

  bool contains(const Coord& x, int dim) const;

  /// Axis-aligned bounding box (conservative for boolean nodes).
  void bounding_box(int dim, Coord& lo, Coord& hi) const;

  /// Closed-form diameter where the shape permits one; boolean trees return
  /// nullopt and callers fall back to the rasterized diameter.
  std::optional<Real> exact_diameter(int dim) const;

  /// True when the shape is an axis-aligned box (possibly scaled/translated),
  /// i.e. when the staircase boundary measure is the exact surface measure.
  bool is_axis_box() const;

  /// Plain-text key=value serialization (nested children use "left."/"right."
  /// or "child." prefixes).  parse_kv accepts the same format.
  std::string to_kv() const;
  static ShapeDescriptor parse_kv(const std::string& text);

  std::string to_json() const;
  static ShapeDescriptor parse_json(const std::string& text);

  // Parameter access for serialization and shortcuts.
  const Coord& point_a() const { return a_; }
  const Coord& point_b() const { return b_; }
  Real param0() const { return p0_; }
  Real param1() const { return p1_; }
  const ShapeDescriptor* left() const { return left_.get(); }
  const ShapeDescriptor* right() const { return right_.get(); }

 private:
  ShapeDescriptor() = default;
  void to_kv_rec(const std::string& prefix, std::string& out) const;
  static ShapeDescriptor parse_kv_rec(const std::map<std::string, std::string>& kv,
                                      const std::string& prefix);

  ShapeKind kind_ = ShapeKind::Box;
  Coord a_{0, 0, 0};  // box lo / center
  Coord b_{0, 0, 0};  // box hi / shift
  Real p0_ = 0.0;     // radius, r_inner, arm, alpha, scale
  Real p1_ = 0.0;     // r_outer, width, length
  std::shared_ptr<const ShapeDescriptor> left_, right_;
};

}  // namespace kornlab
