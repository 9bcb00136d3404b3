#pragma once

#include "kornlab/field.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace kornlab {

enum class GenKind { Bump, Trig, RandomFourier, RigidMotion, Polynomial };

/// Deterministic test-field generators.  Same (spec, mask) always produces a
/// bit-identical field.
struct GeneratorSpec {
  GenKind kind = GenKind::Bump;
  std::uint64_t seed = 0;

  // bump: per-axis (1-t^2)^3 profile over [support_lo, support_hi]
  Coord support_lo{0, 0, 0};
  Coord support_hi{1, 1, 1};
  bool has_support_box = false;  // false: use the mask's safe interior box

  // trigonometric: component c is amp_c * sin/cos(2*pi*freq.x + phase_c)
  Coord frequency{1, 1, 1};

  // random Fourier sum: mode amplitudes decay like (1+|m|^2)^(-decay/2)
  Real decay = 2.5;
  int modes = 3;

  // rigid motion u(x) = a + W x with W skew-symmetric (row-major storage)
  Coord rigid_a{0, 0, 0};
  std::array<Real, 9> rigid_w{0, 0, 0, 0, 0, 0, 0, 0, 0};

  // coordinate polynomial with seeded coefficients, total degree <= 3
  int degree = 2;

  static GeneratorSpec bump(std::uint64_t seed);
  static GeneratorSpec bump_on(const Coord& lo, const Coord& hi, std::uint64_t seed);
  static GeneratorSpec trig(const Coord& frequency, std::uint64_t seed);
  static GeneratorSpec random_fourier(Real decay, std::uint64_t seed, int modes = 3);
  static GeneratorSpec rigid_motion(const Coord& a, const std::array<Real, 9>& w,
                                    int dim);
  static GeneratorSpec polynomial(int degree, std::uint64_t seed);

  std::string describe() const;
};

/// Sample the generator on a mask.  With compact_support the field is
/// multiplied by a bump vanishing (with its first derivatives) at the
/// support-box boundary and boundary nodes are zeroed exactly.
VectorField generate(const GeneratorSpec& spec, MaskPtr mask, bool compact_support);

/// Matrix-valued companion: entries are independent seeded Fourier sums,
/// compact-support handling identical to generate().
MatrixField generate_matrix(std::uint64_t seed, MaskPtr mask, bool compact_support,
                            Real decay = 2.5);

/// Matrix field whose column j is generate() of `column_spec` reseeded per
/// column; lets callers choose bump envelopes or frequencies explicitly.
MatrixField generate_matrix(const GeneratorSpec& column_spec, MaskPtr mask,
                            bool compact_support);

/// Largest centered box whose nodes are all interior (used as the default
/// compact-support envelope on non-box masks).
void safe_interior_box(const DomainMask& mask, Coord& lo, Coord& hi);

/// The C^2 bump profile (1-t^2)^3 on [-1,1] and its derivative; exposed so
/// tests can build analytic compactly supported fields.
Real bump_profile(Real t);
Real bump_profile_deriv(Real t);

}  // namespace kornlab
