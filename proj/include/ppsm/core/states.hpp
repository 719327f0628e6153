#pragma once

#include <array>
#include <complex>
#include <string_view>

namespace ppsm {

using Complex = std::complex<double>;

/// Maps an angle to [-pi, pi). -pi is kept, pi maps to -pi.
double normalize_angle(double angle);

enum class PointerCase { balanced, unbalanced };

std::string_view to_string(PointerCase c);

/// Pure two-level state cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>.
///
/// Only the two angles are stored, so the state is normalized by
/// construction. theta must lie in [0, pi]; phi is normalized to [-pi, pi).
class QubitState {
public:
    QubitState(double theta, double phi);

    double theta() const { return theta_; }
    double phi() const { return phi_; }

    /// Amplitudes on |0> and |1>.
    std::array<Complex, 2> amplitudes() const;

private:
    double theta_;
    double phi_;
};

/// (|0> + |1>) / sqrt(2): the pre-selection that maximizes the joint QFI.
QubitState optimal_pre_state();

/// (|0> e^{i phi/2} - |1> e^{-i phi/2}) / sqrt(2) up to global phase, i.e.
/// theta = pi/2 and phase pi - phi. `phi` is the post-selection angle.
QubitState optimal_post_state(double phi);

/// Gaussian pointer wavefunction (pi sigma^2)^{-1/4} exp[-(q-q0)^2 / 2 sigma^2].
class GaussianPointer {
public:
    GaussianPointer(double q0, double sigma);

    double q0() const { return q0_; }
    double sigma() const { return sigma_; }

    double amplitude(double q) const;
    /// |f(q)|^2, a normal density with mean q0 and variance sigma^2 / 2.
    double density(double q) const;

private:
    double q0_;
    double sigma_;
};

/// True coupling g plus the modulation g_M; g' = g + g_M is always derived.
struct CouplingConfig {
    double g = 0.0;
    double g_mod = 0.0;

    double total() const { return g + g_mod; }
};

/// Full measurement configuration. The observable is fixed to
/// |0><0| - |1><1|.
class PPSMSetup {
public:
    PPSMSetup(QubitState pre, QubitState post, GaussianPointer pointer, CouplingConfig coupling);

    /// Optimal pre/post pair for post-selection angle `phi`.
    static PPSMSetup optimal(double phi, GaussianPointer pointer, CouplingConfig coupling);

    const QubitState& pre() const { return pre_; }
    const QubitState& post() const { return post_; }
    const GaussianPointer& pointer() const { return pointer_; }
    const CouplingConfig& coupling() const { return coupling_; }

    /// pre.phi - post.phi, normalized.
    double phase_gap() const { return normalize_angle(pre_.phi() - post_.phi()); }

    /// Post-selection angle phi as it appears in the optimal post state:
    /// phase_gap + pi, normalized. For the optimal family this recovers the
    /// argument passed to optimal().
    double postselection_angle() const { return normalize_angle(phase_gap() + kPi); }

    PPSMSetup with_coupling(CouplingConfig coupling) const;
    PPSMSetup with_g(double g) const;

    /// Weight of the |0> branch, cos(theta_i/2) cos(theta_f/2).
    double branch_zero() const;
    /// Weight of the |1> branch, sin(theta_i/2) sin(theta_f/2).
    double branch_one() const;

private:
    static constexpr double kPi = 3.14159265358979323846;

    QubitState pre_;
    QubitState post_;
    GaussianPointer pointer_;
    CouplingConfig coupling_;
};

}  // namespace ppsm
