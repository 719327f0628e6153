#pragma once

#include "ppsm/core/pps.hpp"
#include "ppsm/core/states.hpp"

namespace ppsm {

/// Information content of one setup, in pointer-units^2.
struct FisherReport {
    double qfi_joint = 0.0;       ///< QFI of the joint state before post-selection
    double qfi_joint_max = 0.0;   ///< 4 q0^2 + 2 sigma^2
    double fd_postselected = 0.0; ///< F_d = p_d Q_d
    double cfi = 0.0;             ///< classical FI of the readout, times p_d
    double p_d = 0.0;
    double at_g = 0.0;

    /// 0 <= cfi <= F_d + tol and F_d <= F^Q_max + tol, tol = slack * F^Q_max.
    bool hierarchy_holds(double relative_slack) const;
};

/// QFI of the joint state: 4 q0^2 + 2 sigma^2 - 4 cos^2(theta_i) q0^2.
/// Independent of g and g_M.
double qfi_joint(const QubitState& pre, const GaussianPointer& pointer);

/// 4 q0^2 + 2 sigma^2, reached when cos(theta_i) = 0.
double qfi_joint_max(const GaussianPointer& pointer);

/// Joint-state QFI 4(<dPsi|dPsi> - |<Psi|dPsi>|^2) evaluated by quadrature
/// with the analytic g-derivative of each branch.
double qfi_joint_numeric(const PPSMSetup& setup);

/// QFI retained by the successfully post-selected pointer, F_d = p_d Q_d.
///
/// The normalized state is Phi = psi / xi with xi = sqrt(p_d); its
/// derivative dPhi = dpsi / xi - psi xi' / xi^2 uses the analytic
/// xi' = p_d' / (2 xi). The two inner products are integrated numerically.
/// Throws ZeroPostSelection when p_d <= 1e-15.
double qfi_postselected(const PPSMSetup& setup);

/// Classical FI of the conditional readout density, scaled by p_d:
///   I(g) = p_d * integral P(q|g) (d_g ln P(q|g))^2 dq
/// with the g-derivative taken analytically.
/// Throws ZeroPostSelection when p_d <= 1e-15.
double cfi(const PPSMSetup& setup);

FisherReport fisher_report(const PPSMSetup& setup);

/// Modulation placing the information maximum at `g_nominal`:
///   balanced:   g_M = -g_nominal
///   unbalanced: g_M = phi / (2 q0) - g_nominal
/// Throws DegeneratePointer for the unbalanced case when |q0| < 1e-12 sigma.
double optimal_modulation(double g_nominal, const GaussianPointer& pointer, double phi,
                          PointerCase which);

/// d(pointer_shift)/dg, analytic.
/// Throws ZeroPostSelection when p_d <= 1e-15.
double sensitivity(const PPSMSetup& setup);

/// Coupling interval of the linear (balanced) or nonlinear intermediate
/// (unbalanced) region.
struct RegionBounds {
    PointerCase which;
    double center_g;
    double lower_g;
    double upper_g;
    double fraction;

    bool contains(double g) const { return lower_g <= g && g <= upper_g; }
};

/// balanced:   |g' sigma| <= fraction |phi|, centered at g = -g_M.
/// unbalanced: |g' q0 - phi/2| <= fraction |g' sigma| with g' taking the
///             sign of phi / q0; centered at g = phi / (2 q0) - g_M.
///
/// fraction must lie in (0, 1/2). Throws EmptyRegion when the unbalanced
/// inequalities have no solution and DegeneratePointer when
/// |q0| <= fraction * sigma (the unbalanced region is then unbounded).
RegionBounds region_bounds(const PPSMSetup& setup, double fraction, PointerCase which);

}  // namespace ppsm
