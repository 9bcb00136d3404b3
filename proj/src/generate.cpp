#include "kornlab/generate.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace kornlab {

Real bump_profile(Real t) {
  if (t <= -1.0 || t >= 1.0) return 0.0;
  Real s = 1.0 - t * t;
  return s * s * s;
}

Real bump_profile_deriv(Real t) {
  if (t <= -1.0 || t >= 1.0) return 0.0;
  Real s = 1.0 - t * t;
  return -6.0 * t * s * s;
}

GeneratorSpec GeneratorSpec::bump(std::uint64_t seed) {
  GeneratorSpec g;
  g.kind = GenKind::Bump;
  g.seed = seed;
  return g;
}

GeneratorSpec GeneratorSpec::bump_on(const Coord& lo, const Coord& hi,
                                     std::uint64_t seed) {
  GeneratorSpec g = bump(seed);
  g.support_lo = lo;
  g.support_hi = hi;
  g.has_support_box = true;
  return g;
}

GeneratorSpec GeneratorSpec::trig(const Coord& frequency, std::uint64_t seed) {
  GeneratorSpec g;
  g.kind = GenKind::Trig;
  g.seed = seed;
  g.frequency = frequency;
  return g;
}

GeneratorSpec GeneratorSpec::random_fourier(Real decay, std::uint64_t seed, int modes) {
  if (!(decay > 1.0)) throw ParameterError("random_fourier: decay must exceed 1");
  GeneratorSpec g;
  g.kind = GenKind::RandomFourier;
  g.seed = seed;
  g.decay = decay;
  g.modes = modes;
  return g;
}

GeneratorSpec GeneratorSpec::rigid_motion(const Coord& a, const std::array<Real, 9>& w,
                                          int dim) {
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (std::abs(w[size_t(i * 3 + j)] + w[size_t(j * 3 + i)]) > 0.0)
        throw ParameterError("rigid_motion: W must be skew-symmetric");
  GeneratorSpec g;
  g.kind = GenKind::RigidMotion;
  g.rigid_a = a;
  g.rigid_w = w;
  return g;
}

GeneratorSpec GeneratorSpec::polynomial(int degree, std::uint64_t seed) {
  if (degree < 0 || degree > 3)
    throw ParameterError("polynomial: degree must be in [0,3]");
  GeneratorSpec g;
  g.kind = GenKind::Polynomial;
  g.seed = seed;
  g.degree = degree;
  return g;
}

std::string GeneratorSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case GenKind::Bump: os << "bump"; break;
    case GenKind::Trig: os << "trig"; break;
    case GenKind::RandomFourier: os << "fourier(decay=" << decay << ")"; break;
    case GenKind::RigidMotion: os << "rigid"; break;
    case GenKind::Polynomial: os << "poly(deg=" << degree << ")"; break;
  }
  os << " seed=" << seed;
  return os.str();
}

void safe_interior_box(const DomainMask& mask, Coord& lo, Coord& hi) {
  const GridSpec& g = mask.grid();
  const int N = g.dim;
  Coord ilo{0, 0, 0}, ihi{0, 0, 0};
  bool first = true;
  for (Index k = 0; k < mask.num_interior(); ++k) {
    Coord x = mask.coord(mask.node(mask.interior_node(k)));
    for (int d = 0; d < N; ++d) {
      if (first || x[d] < ilo[d]) ilo[d] = x[d];
      if (first || x[d] > ihi[d]) ihi[d] = x[d];
    }
    first = false;
  }
  Coord c{0, 0, 0}, half{0, 0, 0};
  for (int d = 0; d < N; ++d) {
    c[d] = 0.5 * (ilo[d] + ihi[d]);
    half[d] = 0.5 * (ihi[d] - ilo[d]);
  }
  auto all_interior = [&](Real s) {
    for (Index id = 0; id < g.num_nodes(); ++id) {
      Coord x = g.node_coord(id);
      bool in = true;
      for (int d = 0; d < N; ++d)
        if (std::abs(x[d] - c[d]) > s * half[d]) in = false;
      if (in && mask.classify(id) != NodeClass::Interior) return false;
    }
    return true;
  };
  Real s_ok = 0.0, s_bad = 1.0 + 1e-9;
  if (all_interior(1.0)) {
    s_ok = 1.0;
  } else {
    for (int it = 0; it < 40; ++it) {
      Real s = 0.5 * (s_ok + s_bad);
      (all_interior(s) ? s_ok : s_bad) = s;
    }
  }
  if (s_ok <= 0.0) throw DegenerateDomainError("safe_interior_box: no interior box");
  for (int d = 0; d < N; ++d) {
    lo[d] = c[d] - s_ok * half[d];
    hi[d] = c[d] + s_ok * half[d];
  }
}

namespace {

struct BumpBox {
  Coord lo, hi;
  Real eval(const Coord& x, int N) const {
    Real v = 1.0;
    for (int d = 0; d < N; ++d) {
      Real w = hi[d] - lo[d];
      if (!(w > 0.0)) return 0.0;
      Real t = (2.0 * x[d] - (lo[d] + hi[d])) / w;
      v *= bump_profile(t);
    }
    return v;
  }
};

BumpBox support_box_for(const GeneratorSpec& spec, const DomainMask& mask) {
  BumpBox b;
  if (spec.has_support_box) {
    b.lo = spec.support_lo;
    b.hi = spec.support_hi;
  } else {
    safe_interior_box(mask, b.lo, b.hi);
  }
  return b;
}

void check_support_in_interior(const BumpBox& b, const DomainMask& mask) {
  const int N = mask.dim();
  for (Index k = 0; k < mask.num_nodes(); ++k) {
    Index id = mask.node(k);
    if (mask.classify(id) != NodeClass::Boundary) continue;
    Coord x = mask.coord(id);
    bool strictly_inside = true;
    for (int d = 0; d < N; ++d)
      if (x[d] <= b.lo[d] || x[d] >= b.hi[d]) strictly_inside = false;
    if (strictly_inside)
      throw GeometryError("generate: support box not inside mask interior");
  }
}

}  // namespace

VectorField generate(const GeneratorSpec& spec, MaskPtr mask, bool compact_support) {
  const int N = mask->dim();
  VectorField f(mask, compact_support);
  SplitMix64 rng(spec.seed);

  switch (spec.kind) {
    case GenKind::Bump: {
      BumpBox box = support_box_for(spec, *mask);
      if (compact_support) check_support_in_interior(box, *mask);
      Coord amp{0, 0, 0};
      for (int c = 0; c < N; ++c) amp[c] = 0.25 + 0.75 * rng.next_unit();
      for (Index k = 0; k < mask->num_nodes(); ++k) {
        Coord x = mask->coord(mask->node(k));
        Real v = box.eval(x, N);
        for (int c = 0; c < N; ++c) f(k, c) = amp[c] * v;
      }
      break;
    }
    case GenKind::Trig: {
      for (int d = 0; d < N; ++d)
        if (spec.frequency[d] == 0.0)
          throw ParameterError("trig generator: frequencies must be nonzero");
      Coord amp{0, 0, 0}, phase{0, 0, 0};
      for (int c = 0; c < N; ++c) {
        amp[c] = 0.25 + 0.75 * rng.next_unit();
        phase[c] = 6.283185307179586 * rng.next_unit();
      }
      for (Index k = 0; k < mask->num_nodes(); ++k) {
        Coord x = mask->coord(mask->node(k));
        Real arg = 0.0;
        for (int d = 0; d < N; ++d) arg += spec.frequency[d] * x[d];
        arg *= 6.283185307179586;
        for (int c = 0; c < N; ++c)
          f(k, c) = amp[c] * ((c % 2 == 0) ? std::sin(arg + phase[c])
                                           : std::cos(arg + phase[c]));
      }
      break;
    }
    case GenKind::RandomFourier: {
      if (!(spec.decay > 1.0)) throw ParameterError("random_fourier: decay <= 1");
      // Frequencies are relative to the mask bounding box.
      Coord lo{0, 0, 0}, hi{0, 0, 0};
      mask->shape().bounding_box(N, lo, hi);
      // Enumerate modes m in {0..modes}^N \ {0}; amplitude (1+|m|^2)^(-decay/2).
      std::vector<std::array<int, 3>> ms;
      std::array<int, 3> m{0, 0, 0};
      int M = spec.modes;
      for (int m0 = 0; m0 <= M; ++m0)
        for (int m1 = 0; m1 <= (N > 1 ? M : 0); ++m1)
          for (int m2 = 0; m2 <= (N > 2 ? M : 0); ++m2) {
            if (m0 == 0 && m1 == 0 && m2 == 0) continue;
            ms.push_back({m0, m1, m2});
          }
      (void)m;
      const Real pi = 3.141592653589793;
      const size_t nc = size_t(N);
      std::vector<std::vector<Real>> coef(nc), phase(nc);
      for (int c = 0; c < N; ++c)
        for (size_t q = 0; q < ms.size(); ++q) {
          Real mag2 = 0.0;
          for (int d = 0; d < N; ++d) mag2 += Real(ms[q][size_t(d)] * ms[q][size_t(d)]);
          coef[size_t(c)].push_back(rng.next_symmetric() *
                                    std::pow(1.0 + mag2, -0.5 * spec.decay));
          phase[size_t(c)].push_back(2.0 * pi * rng.next_unit());
        }
      for (Index k = 0; k < mask->num_nodes(); ++k) {
        Coord x = mask->coord(mask->node(k));
        Coord xh{0, 0, 0};
        for (int d = 0; d < N; ++d)
          xh[d] = (hi[d] > lo[d]) ? (x[d] - lo[d]) / (hi[d] - lo[d]) : 0.0;
        for (int c = 0; c < N; ++c) {
          Real v = 0.0;
          for (size_t q = 0; q < ms.size(); ++q) {
            Real arg = phase[size_t(c)][q];
            for (int d = 0; d < N; ++d) arg += pi * Real(ms[q][size_t(d)]) * xh[d];
            v += coef[size_t(c)][q] * std::cos(arg);
          }
          f(k, c) = v;
        }
      }
      break;
    }
    case GenKind::RigidMotion: {
      for (Index k = 0; k < mask->num_nodes(); ++k) {
        Coord x = mask->coord(mask->node(k));
        for (int i = 0; i < N; ++i) {
          Real v = spec.rigid_a[i];
          for (int j = 0; j < N; ++j) v += spec.rigid_w[size_t(i * 3 + j)] * x[j];
          f(k, i) = v;
        }
      }
      break;
    }
    case GenKind::Polynomial: {
      // Coefficients for all monomials x^b with |b| <= degree, per component.
      std::vector<std::array<int, 3>> exps;
      for (int e0 = 0; e0 <= spec.degree; ++e0)
        for (int e1 = 0; e1 <= (N > 1 ? spec.degree : 0); ++e1)
          for (int e2 = 0; e2 <= (N > 2 ? spec.degree : 0); ++e2)
            if (e0 + e1 + e2 <= spec.degree) exps.push_back({e0, e1, e2});
      const size_t nc = size_t(N);
      std::vector<std::vector<Real>> coef(nc);
      for (int c = 0; c < N; ++c)
        for (size_t q = 0; q < exps.size(); ++q)
          coef[size_t(c)].push_back(rng.next_symmetric());
      for (Index k = 0; k < mask->num_nodes(); ++k) {
        Coord x = mask->coord(mask->node(k));
        for (int c = 0; c < N; ++c) {
          Real v = 0.0;
          for (size_t q = 0; q < exps.size(); ++q) {
            Real mono = 1.0;
            for (int d = 0; d < N; ++d)
              for (int e = 0; e < exps[q][size_t(d)]; ++e) mono *= x[d];
            v += coef[size_t(c)][q] * mono;
          }
          f(k, c) = v;
        }
      }
      break;
    }
  }

  if (compact_support && spec.kind != GenKind::Bump) {
    BumpBox box = support_box_for(GeneratorSpec{}, *mask);
    for (Index k = 0; k < mask->num_nodes(); ++k) {
      Coord x = mask->coord(mask->node(k));
      Real v = box.eval(x, N);
      for (int c = 0; c < N; ++c) f(k, c) *= v;
    }
  }
  if (compact_support) f.zero_boundary();
  return f;
}

MatrixField generate_matrix(const GeneratorSpec& column_spec, MaskPtr mask,
                            bool compact_support) {
  const int N = mask->dim();
  MatrixField Phi(mask, compact_support);
  for (int j = 0; j < N; ++j) {
    GeneratorSpec spec = column_spec;
    spec.seed = column_spec.seed + 1000003ull * std::uint64_t(j + 1);
    VectorField col = generate(spec, mask, compact_support);
    for (Index k = 0; k < mask->num_nodes(); ++k)
      for (int i = 0; i < N; ++i) Phi(k, i, j) = col(k, i);
  }
  return Phi;
}

MatrixField generate_matrix(std::uint64_t seed, MaskPtr mask, bool compact_support,
                            Real decay) {
  GeneratorSpec spec = GeneratorSpec::random_fourier(decay, seed);
  return generate_matrix(spec, mask, compact_support);
}

}  // namespace kornlab
