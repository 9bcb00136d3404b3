#include "kornlab/shape.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kornlab {

namespace {

Real sq_dist(const Coord& x, const Coord& c, int dim) {
  Real s = 0.0;
  for (int d = 0; d < dim; ++d) s += (x[d] - c[d]) * (x[d] - c[d]);
  return s;
}

std::string coord_str(const Coord& x) {
  std::ostringstream os;
  os.precision(17);
  os << x[0] << "," << x[1] << "," << x[2];
  return os.str();
}

std::string real_str(Real v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Coord parse_coord(const std::string& s) {
  Coord x{0, 0, 0};
  std::istringstream is(s);
  std::string tok;
  int d = 0;
  while (std::getline(is, tok, ',') && d < kMaxDim) x[d++] = std::stod(tok);
  return x;
}

const char* kind_name(ShapeKind k) {
  switch (k) {
    case ShapeKind::Box: return "box";
    case ShapeKind::Ball: return "ball";
    case ShapeKind::Annulus: return "annulus";
    case ShapeKind::LShape: return "lshape";
    case ShapeKind::Cusp: return "cusp";
    case ShapeKind::Transformed: return "transformed";
    case ShapeKind::Union: return "union";
    case ShapeKind::Intersection: return "intersection";
    case ShapeKind::Difference: return "difference";
  }
  return "?";
}

ShapeKind kind_from_name(const std::string& s) {
  if (s == "box") return ShapeKind::Box;
  if (s == "ball") return ShapeKind::Ball;
  if (s == "annulus") return ShapeKind::Annulus;
  if (s == "lshape") return ShapeKind::LShape;
  if (s == "cusp") return ShapeKind::Cusp;
  if (s == "transformed") return ShapeKind::Transformed;
  if (s == "union") return ShapeKind::Union;
  if (s == "intersection") return ShapeKind::Intersection;
  if (s == "difference") return ShapeKind::Difference;
  throw ParameterError("unknown shape kind: " + s);
}

}  // namespace

ShapeDescriptor ShapeDescriptor::box(const Coord& lo, const Coord& hi) {
  ShapeDescriptor s;
  s.kind_ = ShapeKind::Box;
  s.a_ = lo;
  s.b_ = hi;
  for (int d = 0; d < kMaxDim; ++d)
    if (hi[d] < lo[d]) throw ParameterError("box: hi < lo");
  return s;
}

ShapeDescriptor ShapeDescriptor::unit_box(int dim) {
  Coord lo{0, 0, 0}, hi{0, 0, 0};
  for (int d = 0; d < dim; ++d) hi[d] = 1.0;
  return box(lo, hi);
}

ShapeDescriptor ShapeDescriptor::ball(const Coord& center, Real radius) {
  if (!(radius > 0.0)) throw ParameterError("ball: radius must be positive");
  ShapeDescriptor s;
  s.kind_ = ShapeKind::Ball;
  s.a_ = center;
  s.p0_ = radius;
  return s;
}

ShapeDescriptor ShapeDescriptor::annulus(const Coord& center, Real r_inner,
                                         Real r_outer) {
  if (!(r_inner > 0.0) || !(r_outer > r_inner))
    throw ParameterError("annulus: need 0 < r_inner < r_outer");
  ShapeDescriptor s;
  s.kind_ = ShapeKind::Annulus;
  s.a_ = center;
  s.p0_ = r_inner;
  s.p1_ = r_outer;
  return s;
}

ShapeDescriptor ShapeDescriptor::l_shape(Real arm, Real width) {
  if (!(arm > 0.0) || !(width > 0.0) || !(width < arm))
    throw ParameterError("l_shape: need 0 < width < arm");
  ShapeDescriptor s;
  s.kind_ = ShapeKind::LShape;
  s.p0_ = arm;
  s.p1_ = width;
  return s;
}

ShapeDescriptor ShapeDescriptor::cusp(Real alpha, Real length) {
  if (!(alpha > 1.0)) throw ParameterError("cusp: exponent must exceed 1");
  if (!(length > 0.0)) throw ParameterError("cusp: length must be positive");
  ShapeDescriptor s;
  s.kind_ = ShapeKind::Cusp;
  s.p0_ = alpha;
  s.p1_ = length;
  return s;
}

ShapeDescriptor ShapeDescriptor::transformed(ShapeDescriptor inner, Real scale,
                                             const Coord& shift) {
  if (!(scale > 0.0)) throw ParameterError("transformed: scale must be positive");
  ShapeDescriptor s;
  s.kind_ = ShapeKind::Transformed;
  s.p0_ = scale;
  s.b_ = shift;
  s.left_ = std::make_shared<ShapeDescriptor>(std::move(inner));
  return s;
}

ShapeDescriptor ShapeDescriptor::combine(ShapeKind op, ShapeDescriptor a,
                                         ShapeDescriptor b) {
  if (op != ShapeKind::Union && op != ShapeKind::Intersection &&
      op != ShapeKind::Difference)
    throw ParameterError("combine: op must be union/intersection/difference");
  ShapeDescriptor s;
  s.kind_ = op;
  s.left_ = std::make_shared<ShapeDescriptor>(std::move(a));
  s.right_ = std::make_shared<ShapeDescriptor>(std::move(b));
  return s;
}

bool ShapeDescriptor::contains(const Coord& x, int dim) const {
  switch (kind_) {
    case ShapeKind::Box:
      for (int d = 0; d < dim; ++d)
        if (x[d] < a_[d] || x[d] > b_[d]) return false;
      return true;
    case ShapeKind::Ball:
      return sq_dist(x, a_, dim) <= p0_ * p0_;
    case ShapeKind::Annulus: {
      Real s = sq_dist(x, a_, dim);
      return s >= p0_ * p0_ && s <= p1_ * p1_;
    }
    case ShapeKind::LShape: {
      bool in_arm_corner = true;
      for (int d = 0; d < dim; ++d) {
        if (x[d] < 0.0 || x[d] > p0_) return false;
        if (x[d] <= p1_) in_arm_corner = false;
      }
      return !in_arm_corner;
    }
    case ShapeKind::Cusp: {
      if (x[0] < 0.0 || x[0] > p1_) return false;
      Real perp = 0.0;
      for (int d = 1; d < dim; ++d) perp += x[d] * x[d];
      Real w = std::pow(x[0], p0_);
      return perp <= w * w;
    }
    case ShapeKind::Transformed: {
      Coord y{0, 0, 0};
      for (int d = 0; d < dim; ++d) y[d] = (x[d] - b_[d]) / p0_;
      return left_->contains(y, dim);
    }
    case ShapeKind::Union:
      return left_->contains(x, dim) || right_->contains(x, dim);
    case ShapeKind::Intersection:
      return left_->contains(x, dim) && right_->contains(x, dim);
    case ShapeKind::Difference:
      return left_->contains(x, dim) && !right_->contains(x, dim);
  }
  return false;
}

void ShapeDescriptor::bounding_box(int dim, Coord& lo, Coord& hi) const {
  lo = Coord{0, 0, 0};
  hi = Coord{0, 0, 0};
  switch (kind_) {
    case ShapeKind::Box:
      lo = a_;
      hi = b_;
      return;
    case ShapeKind::Ball:
      for (int d = 0; d < dim; ++d) {
        lo[d] = a_[d] - p0_;
        hi[d] = a_[d] + p0_;
      }
      return;
    case ShapeKind::Annulus:
      for (int d = 0; d < dim; ++d) {
        lo[d] = a_[d] - p1_;
        hi[d] = a_[d] + p1_;
      }
      return;
    case ShapeKind::LShape:
      for (int d = 0; d < dim; ++d) hi[d] = p0_;
      return;
    case ShapeKind::Cusp: {
      Real w = std::pow(p1_, p0_);
      hi[0] = p1_;
      for (int d = 1; d < dim; ++d) {
        lo[d] = -w;
        hi[d] = w;
      }
      return;
    }
    case ShapeKind::Transformed: {
      Coord l, h;
      left_->bounding_box(dim, l, h);
      for (int d = 0; d < dim; ++d) {
        lo[d] = p0_ * l[d] + b_[d];
        hi[d] = p0_ * h[d] + b_[d];
      }
      return;
    }
    case ShapeKind::Union:
    case ShapeKind::Intersection: {
      Coord l0, h0, l1, h1;
      left_->bounding_box(dim, l0, h0);
      right_->bounding_box(dim, l1, h1);
      for (int d = 0; d < dim; ++d) {
        if (kind_ == ShapeKind::Union) {
          lo[d] = std::min(l0[d], l1[d]);
          hi[d] = std::max(h0[d], h1[d]);
        } else {
          lo[d] = std::max(l0[d], l1[d]);
          hi[d] = std::min(h0[d], h1[d]);
          if (hi[d] < lo[d]) hi[d] = lo[d];
        }
      }
      return;
    }
    case ShapeKind::Difference:
      left_->bounding_box(dim, lo, hi);
      return;
  }
}

std::optional<Real> ShapeDescriptor::exact_diameter(int dim) const {
  switch (kind_) {
    case ShapeKind::Box: {
      Real s = 0.0;
      for (int d = 0; d < dim; ++d) s += (b_[d] - a_[d]) * (b_[d] - a_[d]);
      return std::sqrt(s);
    }
    case ShapeKind::Ball:
      return 2.0 * p0_;
    case ShapeKind::Annulus:
      return 2.0 * p1_;
    case ShapeKind::LShape:
      // The removed open orthant keeps both ends of a full diagonal, so the
      // diameter equals the box diagonal.
      return std::sqrt(Real(dim)) * p0_;
    case ShapeKind::Cusp: {
      Real w = std::pow(p1_, p0_);
      return std::max(std::sqrt(p1_ * p1_ + w * w), 2.0 * w);
    }
    case ShapeKind::Transformed: {
      auto inner = left_->exact_diameter(dim);
      if (!inner) return std::nullopt;
      return p0_ * *inner;
    }
    default:
      return std::nullopt;
  }
}

bool ShapeDescriptor::is_axis_box() const {
  if (kind_ == ShapeKind::Box) return true;
  if (kind_ == ShapeKind::Transformed) return left_->is_axis_box();
  return false;
}

void ShapeDescriptor::to_kv_rec(const std::string& prefix, std::string& out) const {
  out += prefix + "kind = " + kind_name(kind_) + "\n";
  switch (kind_) {
    case ShapeKind::Box:
      out += prefix + "lo = " + coord_str(a_) + "\n";
      out += prefix + "hi = " + coord_str(b_) + "\n";
      break;
    case ShapeKind::Ball:
      out += prefix + "center = " + coord_str(a_) + "\n";
      out += prefix + "radius = " + real_str(p0_) + "\n";
      break;
    case ShapeKind::Annulus:
      out += prefix + "center = " + coord_str(a_) + "\n";
      out += prefix + "r_inner = " + real_str(p0_) + "\n";
      out += prefix + "r_outer = " + real_str(p1_) + "\n";
      break;
    case ShapeKind::LShape:
      out += prefix + "arm = " + real_str(p0_) + "\n";
      out += prefix + "width = " + real_str(p1_) + "\n";
      break;
    case ShapeKind::Cusp:
      out += prefix + "alpha = " + real_str(p0_) + "\n";
      out += prefix + "length = " + real_str(p1_) + "\n";
      break;
    case ShapeKind::Transformed:
      out += prefix + "scale = " + real_str(p0_) + "\n";
      out += prefix + "shift = " + coord_str(b_) + "\n";
      left_->to_kv_rec(prefix + "child.", out);
      break;
    case ShapeKind::Union:
    case ShapeKind::Intersection:
    case ShapeKind::Difference:
      left_->to_kv_rec(prefix + "left.", out);
      right_->to_kv_rec(prefix + "right.", out);
      break;
  }
}

std::string ShapeDescriptor::to_kv() const {
  std::string out;
  to_kv_rec("", out);
  return out;
}

ShapeDescriptor ShapeDescriptor::parse_kv_rec(
    const std::map<std::string, std::string>& kv, const std::string& prefix) {
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(prefix + key);
    if (it == kv.end()) throw ParameterError("shape kv: missing key " + prefix + key);
    return it->second;
  };
  ShapeKind k = kind_from_name(get("kind"));
  switch (k) {
    case ShapeKind::Box:
      return box(parse_coord(get("lo")), parse_coord(get("hi")));
    case ShapeKind::Ball:
      return ball(parse_coord(get("center")), std::stod(get("radius")));
    case ShapeKind::Annulus:
      return annulus(parse_coord(get("center")), std::stod(get("r_inner")),
                     std::stod(get("r_outer")));
    case ShapeKind::LShape:
      return l_shape(std::stod(get("arm")), std::stod(get("width")));
    case ShapeKind::Cusp:
      return cusp(std::stod(get("alpha")), std::stod(get("length")));
    case ShapeKind::Transformed:
      return transformed(parse_kv_rec(kv, prefix + "child."), std::stod(get("scale")),
                         parse_coord(get("shift")));
    default:
      return combine(k, parse_kv_rec(kv, prefix + "left."),
                     parse_kv_rec(kv, prefix + "right."));
  }
}

ShapeDescriptor ShapeDescriptor::parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return parse_kv_rec(kv, "");
}

namespace {

nlohmann::json shape_to_json(const ShapeDescriptor& s) {
  nlohmann::json j;
  j["kind"] = kind_name(s.kind());
  switch (s.kind()) {
    case ShapeKind::Box:
      j["lo"] = s.point_a();
      j["hi"] = s.point_b();
      break;
    case ShapeKind::Ball:
      j["center"] = s.point_a();
      j["radius"] = s.param0();
      break;
    case ShapeKind::Annulus:
      j["center"] = s.point_a();
      j["r_inner"] = s.param0();
      j["r_outer"] = s.param1();
      break;
    case ShapeKind::LShape:
      j["arm"] = s.param0();
      j["width"] = s.param1();
      break;
    case ShapeKind::Cusp:
      j["alpha"] = s.param0();
      j["length"] = s.param1();
      break;
    case ShapeKind::Transformed:
      j["scale"] = s.param0();
      j["shift"] = s.point_b();
      j["child"] = shape_to_json(*s.left());
      break;
    default:
      j["left"] = shape_to_json(*s.left());
      j["right"] = shape_to_json(*s.right());
      break;
  }
  return j;
}

ShapeDescriptor shape_from_json(const nlohmann::json& j) {
  ShapeKind k = kind_from_name(j.at("kind").get<std::string>());
  auto coord = [&](const char* key) {
    Coord c{0, 0, 0};
    auto arr = j.at(key);
    for (int d = 0; d < kMaxDim && d < int(arr.size()); ++d) c[d] = arr[d].get<Real>();
    return c;
  };
  switch (k) {
    case ShapeKind::Box:
      return ShapeDescriptor::box(coord("lo"), coord("hi"));
    case ShapeKind::Ball:
      return ShapeDescriptor::ball(coord("center"), j.at("radius").get<Real>());
    case ShapeKind::Annulus:
      return ShapeDescriptor::annulus(coord("center"), j.at("r_inner").get<Real>(),
                                      j.at("r_outer").get<Real>());
    case ShapeKind::LShape:
      return ShapeDescriptor::l_shape(j.at("arm").get<Real>(), j.at("width").get<Real>());
    case ShapeKind::Cusp:
      return ShapeDescriptor::cusp(j.at("alpha").get<Real>(), j.at("length").get<Real>());
    case ShapeKind::Transformed:
      return ShapeDescriptor::transformed(shape_from_json(j.at("child")),
                                          j.at("scale").get<Real>(), coord("shift"));
    default:
      return ShapeDescriptor::combine(k, shape_from_json(j.at("left")),
                                      shape_from_json(j.at("right")));
  }
}

}  // namespace

std::string ShapeDescriptor::to_json() const { return shape_to_json(*this).dump(); }

ShapeDescriptor ShapeDescriptor::parse_json(const std::string& text) {
  return shape_from_json(nlohmann::json::parse(text));
}

}  // namespace kornlab
