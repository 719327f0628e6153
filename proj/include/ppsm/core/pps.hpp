#pragma once

#include <cstddef>
#include <vector>

#include "ppsm/core/states.hpp"
#include "ppsm/numerics/quadrature.hpp"

namespace ppsm {

/// <psi_f|A|psi_i> / <psi_f|psi_i> with A = |0><0| - |1><1|.
/// Throws OrthogonalSelection when |<psi_f|psi_i>| < 1e-12.
Complex weak_value(const QubitState& pre, const QubitState& post);

/// Unnormalized post-selected pointer amplitude <q|<psi_f|Psi'>:
///   f(q) [c e^{i g' q} + s e^{i Delta} e^{-i g' q}]
/// with c = cos(theta_i/2) cos(theta_f/2), s = sin(theta_i/2) sin(theta_f/2)
/// and Delta the pre/post phase gap.
Complex post_selected_amplitude(const PPSMSetup& setup, double q);

/// d/dg of post_selected_amplitude at fixed g_M.
Complex post_selected_amplitude_derivative(const PPSMSetup& setup, double q);

/// p_d = integral of |amplitude|^2, from the Gaussian identity
///   c^2 + s^2 + 2 c s exp(-sigma^2 g'^2) cos(2 q0 g' - Delta).
/// For the optimal family this is [1 - exp(-sigma^2 g'^2) cos(2 q0 g' - phi)] / 2.
double post_selection_probability(const PPSMSetup& setup);

/// d p_d / dg, analytic.
double post_selection_probability_derivative(const PPSMSetup& setup);

/// p_d by adaptive quadrature of |amplitude|^2 over q0 +/- 12 sigma.
double post_selection_probability_numeric(const PPSMSetup& setup);

/// Quadrature spec over the pointer support, resolved for the setup's
/// fastest oscillation (angular frequency 2 g').
numerics::QuadratureSpec pointer_quadrature(const PPSMSetup& setup);

/// Support and node count for tabulating a pointer density.
struct PointerGrid {
    double lower;
    double upper;
    std::size_t nodes;
};

/// q0 +/- 12 sigma with at least 2^14 nodes and 20 nodes per oscillation.
PointerGrid default_grid(const PPSMSetup& setup);

/// Conditional readout density P(q|g) = |amplitude(q)|^2 / p_d.
class PointerDistribution {
public:
    PointerDistribution(PPSMSetup setup, PointerGrid grid);

    double operator()(double q) const;

    double p_d() const { return p_d_; }
    const PointerGrid& grid() const { return grid_; }
    const PPSMSetup& setup() const { return setup_; }

    /// Density sampled on the grid nodes (uniform spacing, endpoints included).
    std::vector<double> nodes() const;
    std::vector<double> tabulate() const;

    /// Integral of the density over the grid support (adaptive quadrature).
    double total_mass() const;
    /// First moment minus q0, by quadrature.
    double mean_shift() const;

private:
    PPSMSetup setup_;
    PointerGrid grid_;
    double p_d_;
};

/// Throws ZeroPostSelection when p_d <= 1e-15.
PointerDistribution pointer_pdf(const PPSMSetup& setup, PointerGrid grid);
PointerDistribution pointer_pdf(const PPSMSetup& setup);

/// Exact shift of the pointer mean, <q> - q0, from the closed form
///   -2 c s sigma^2 g' eta sin(2 q0 g' - Delta) / p_d,  eta = exp(-sigma^2 g'^2).
/// For the optimal family this is
///   sigma^2 g' eta sin(2 q0 g' - phi) / [1 - eta cos(2 q0 g' - phi)].
/// Throws ZeroPostSelection when p_d <= 1e-15.
double pointer_shift(const PPSMSetup& setup);

/// Linear-response approximations of pointer_shift.
///
/// balanced:   -sigma^2 g' Im(A_w). The sign follows the amplitude
///             convention used throughout (pointer_shift's closed form);
///             for the optimal states this is -sigma^2 g' cot(phi/2).
///             Requires |g' sigma| < |phi| / 2.
/// unbalanced: (2 q0 g' - phi) / g'. Requires g' != 0.
///
/// Throws RegimeViolation outside those regions.
double linearized_shift(const PPSMSetup& setup, PointerCase which);

}  // namespace ppsm
