#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kornlab {

using Real = double;
using Index = std::int64_t;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SparseMat = Eigen::SparseMatrix<Real, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<Real>;

/// Small fixed-capacity coordinate vector; only the first `dim` entries of a
/// point are meaningful (dim in {1,2,3}).
using Coord = std::array<Real, 3>;
using Extent = std::array<Index, 3>;

inline constexpr int kMaxDim = 3;

/// Hard cap on total grid nodes; rasterization and assembly refuse beyond it.
inline constexpr Index kMaxNodes = Index(1) << 24;

// ---------------------------------------------------------------------------
// Error taxonomy.  CLI maps ParameterError/usage to exit 2, SolverError to 3,
// check violations to 1.

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateDomainError : GeometryError {
  using GeometryError::GeometryError;
};

struct ParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MaskMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when every restart of a quotient ascent fails its line search.
/// Carries the best quotient seen so the caller can still report it.
struct OptimizationStallError : std::runtime_error {
  Real best_value;
  explicit OptimizationStallError(const std::string& what, Real best)
      : std::runtime_error(what), best_value(best) {}
};

// ---------------------------------------------------------------------------
// Deterministic PRNG.  splitmix64 is used everywhere randomness is needed so
// that results are bit-reproducible across platforms and standard libraries.

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  Real next_unit() { return Real(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  Real next_symmetric() { return 2.0 * next_unit() - 1.0; }

 private:
  std::uint64_t state_;
};

}  // namespace kornlab
