#pragma once

#include <cstddef>

// Numerical thresholds shared by every module. All values assume IEEE double
// precision and at most ~1e5 quadrature nodes per integral.
namespace ppsm::tol {

/// Below this post-selection probability the conditional pointer density is
/// not computed.
inline constexpr double kPostSelectionFloor = 1e-15;

/// |<psi_f|psi_i>| below this makes the weak value undefined.
inline constexpr double kOverlapFloor = 1e-12;

/// Gaussian-weighted integrals are truncated at q0 +/- kTailSigmas * sigma.
inline constexpr double kTailSigmas = 12.0;

/// Relative slack for cfi <= F_d <= F^Q_max.
inline constexpr double kHierarchySlack = 1e-6;

/// A sample whose conditional density falls below this is incompatible
/// with the candidate coupling.
inline constexpr double kDensityFloor = 1e-300;

/// |q0| below kDegeneratePointer * sigma is treated as a balanced pointer.
inline constexpr double kDegeneratePointer = 1e-12;

/// Default quadrature tolerances.
inline constexpr double kQuadAbsTol = 1e-14;
inline constexpr double kQuadRelTol = 1e-13;
inline constexpr std::size_t kQuadMaxNodes = 200000;

/// Minimum quadrature nodes per period of the fastest oscillation.
inline constexpr double kNodesPerPeriod = 20.0;

/// Inverse-CDF table size used when sampling pointer readouts.
inline constexpr std::size_t kInverseCdfNodes = std::size_t{1} << 14;

/// Default fraction of the region rule |g' sigma| <= fraction * |phi|.
inline constexpr double kDefaultRegionFraction = 0.1;

}  // namespace ppsm::tol
