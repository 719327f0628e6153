#include "ppsm/core/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ppsm {

double normalize_angle(double angle) {
    if (!std::isfinite(angle)) {
        throw std::invalid_argument("angle must be finite");
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::fmod(angle + std::numbers::pi, two_pi);
    if (a < 0.0) {
        a += two_pi;
    }
    a -= std::numbers::pi;
    // fmod can land exactly on the excluded endpoint after the shift.
    if (a >= std::numbers::pi) {
        a -= two_pi;
    }
    return a;
}

std::string_view to_string(PointerCase c) {
    return c == PointerCase::balanced ? "balanced" : "unbalanced";
}

QubitState::QubitState(double theta, double phi) : theta_(theta), phi_(normalize_angle(phi)) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw std::invalid_argument("polar angle must lie in [0, pi]");
    }
}

std::array<Complex, 2> QubitState::amplitudes() const {
    return {Complex(std::cos(0.5 * theta_), 0.0), std::sin(0.5 * theta_) * std::polar(1.0, phi_)};
}

QubitState optimal_pre_state() { return QubitState(0.5 * std::numbers::pi, 0.0); }

QubitState optimal_post_state(double phi) {
    return QubitState(0.5 * std::numbers::pi, std::numbers::pi - phi);
}

GaussianPointer::GaussianPointer(double q0, double sigma) : q0_(q0), sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("pointer width sigma must be positive");
    }
    if (!std::isfinite(q0)) {
        throw std::invalid_argument("pointer center must be finite");
    }
}

double GaussianPointer::amplitude(double q) const {
    const double u = (q - q0_) / sigma_;
    return std::pow(std::numbers::pi * sigma_ * sigma_, -0.25) * std::exp(-0.5 * u * u);
}

double GaussianPointer::density(double q) const {
    const double u = (q - q0_) / sigma_;
    return std::exp(-u * u) / (std::sqrt(std::numbers::pi) * sigma_);
}

PPSMSetup::PPSMSetup(QubitState pre, QubitState post, GaussianPointer pointer,
                     CouplingConfig coupling)
    : pre_(pre), post_(post), pointer_(pointer), coupling_(coupling) {}

PPSMSetup PPSMSetup::optimal(double phi, GaussianPointer pointer, CouplingConfig coupling) {
    return PPSMSetup(optimal_pre_state(), optimal_post_state(phi), pointer, coupling);
}

PPSMSetup PPSMSetup::with_coupling(CouplingConfig coupling) const {
    return PPSMSetup(pre_, post_, pointer_, coupling);
}

PPSMSetup PPSMSetup::with_g(double g) const {
    return with_coupling(CouplingConfig{g, coupling_.g_mod});
}

double PPSMSetup::branch_zero() const {
    return std::cos(0.5 * pre_.theta()) * std::cos(0.5 * post_.theta());
}

double PPSMSetup::branch_one() const {
    return std::sin(0.5 * pre_.theta()) * std::sin(0.5 * post_.theta());
}

}  // namespace ppsm
