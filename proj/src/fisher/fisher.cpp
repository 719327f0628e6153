#include "ppsm/fisher/fisher.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ppsm/errors.hpp"
#include "ppsm/numerics/quadrature.hpp"
#include "ppsm/tolerances.hpp"

namespace ppsm {

namespace {

double require_post_selection(const PPSMSetup& setup) {
    const double p_d = post_selection_probability(setup);
    if (!(p_d > tol::kPostSelectionFloor)) {
        std::ostringstream msg;
        msg << "post-selection probability " << p_d << " is at or below "
            << tol::kPostSelectionFloor;
        throw ZeroPostSelection(msg.str());
    }
    return p_d;
}

}  // namespace

bool FisherReport::hierarchy_holds(double relative_slack) const {
    const double slack = relative_slack * qfi_joint_max;
    return cfi >= -slack && cfi <= fd_postselected + slack &&
           fd_postselected <= qfi_joint_max + slack;
}

double qfi_joint(const QubitState& pre, const GaussianPointer& pointer) {
    const double q0 = pointer.q0();
    const double sigma = pointer.sigma();
    const double c = std::cos(pre.theta());
    return 4.0 * q0 * q0 + 2.0 * sigma * sigma - 4.0 * c * c * q0 * q0;
}

double qfi_joint_max(const GaussianPointer& pointer) {
    return 4.0 * pointer.q0() * pointer.q0() + 2.0 * pointer.sigma() * pointer.sigma();
}

double qfi_joint_numeric(const PPSMSetup& setup) {
    const auto amps = setup.pre().amplitudes();
    const double gp = setup.coupling().total();
    const auto& pointer = setup.pointer();
    // Branch k carries e^{+-i g' q}; its g-derivative multiplies by +-i q.
    auto branch = [&](double q, int k) {
        const double sign = k == 0 ? 1.0 : -1.0;
        return amps[static_cast<std::size_t>(k)] * std::polar(1.0, sign * gp * q) *
               pointer.amplitude(q);
    };
    const auto spec = pointer_quadrature(setup);
    const double norm_d = numerics::integrate(
        [&](double q) {
            return std::norm(Complex(0.0, q) * branch(q, 0)) +
                   std::norm(Complex(0.0, -q) * branch(q, 1));
        },
        spec);
    auto overlap_spec = spec;
    overlap_spec.abs_tol = std::max(spec.abs_tol, spec.rel_tol * std::sqrt(norm_d));
    auto overlap_part = [&](bool imag) {
        return numerics::integrate(
            [&](double q) {
                const Complex v = std::conj(branch(q, 0)) * Complex(0.0, q) * branch(q, 0) +
                                  std::conj(branch(q, 1)) * Complex(0.0, -q) * branch(q, 1);
                return imag ? v.imag() : v.real();
            },
            overlap_spec);
    };
    const Complex overlap(overlap_part(false), overlap_part(true));
    return 4.0 * (norm_d - std::norm(overlap));
}

double qfi_postselected(const PPSMSetup& setup) {
    const double p_d = require_post_selection(setup);
    const double xi = std::sqrt(p_d);
    const double d_xi = post_selection_probability_derivative(setup) / (2.0 * xi);
    auto phi_f = [&](double q) { return post_selected_amplitude(setup, q) / xi; };
    auto d_phi_f = [&](double q) {
        return post_selected_amplitude_derivative(setup, q) / xi -
               post_selected_amplitude(setup, q) * (d_xi / (xi * xi));
    };
    // Near destructive interference the normalized amplitude carries a
    // relative rounding error of about eps (|c| + |s|) / xi, which bounds the
    // attainable accuracy of both integrals.
    const double amplitude_noise = 200.0 * std::numeric_limits<double>::epsilon() *
                                   (std::abs(setup.branch_zero()) + std::abs(setup.branch_one())) / xi;
    auto spec = pointer_quadrature(setup);
    spec.rel_tol = std::max(spec.rel_tol, amplitude_noise);
    const double dd = numerics::integrate([&](double q) { return std::norm(d_phi_f(q)); }, spec);
    // The overlap only matters on the scale sqrt(dd); a tighter absolute
    // target would chase rounding noise when it vanishes.
    auto overlap_spec = spec;
    overlap_spec.abs_tol = std::max(spec.abs_tol, spec.rel_tol * std::sqrt(dd));
    const double overlap_re = numerics::integrate(
        [&](double q) { return (std::conj(phi_f(q)) * d_phi_f(q)).real(); }, overlap_spec);
    const double overlap_im = numerics::integrate(
        [&](double q) { return (std::conj(phi_f(q)) * d_phi_f(q)).imag(); }, overlap_spec);
    const double q_d = 4.0 * (dd - (overlap_re * overlap_re + overlap_im * overlap_im));
    return p_d * q_d;
}

double cfi(const PPSMSetup& setup) {
    const double p_d = require_post_selection(setup);
    const double score_shift = post_selection_probability_derivative(setup) / p_d;
    const double gp = setup.coupling().total();
    const double c = setup.branch_zero();
    const double s = setup.branch_one();
    const double delta = setup.phase_gap();
    const auto& pointer = setup.pointer();
    // With psi = f(q) A(q) and h = g' q - Delta/2:
    //   |A|^2 = (c - s)^2 + 4 c s cos^2 h,  d_g |A|^2 = -8 c s q sin h cos h,
    //   p_d P (d ln P)^2 = f^2 (d_g |A|^2 - |A|^2 p'/p)^2 / |A|^2.
    // The half-angle form keeps the ratio accurate near zeros of A.
    auto integrand = [&](double q) {
        const double h = gp * q - 0.5 * delta;
        const double ch = std::cos(h);
        const double weight = (c - s) * (c - s) + 4.0 * c * s * ch * ch;
        if (weight < tol::kDensityFloor) {
            return 0.0;  // isolated node of the amplitude; integrand stays bounded there
        }
        const double score = -8.0 * c * s * q * std::sin(h) * ch - weight * score_shift;
        return pointer.density(q) * score * score / weight;
    };
    return numerics::integrate(integrand, pointer_quadrature(setup));
}

FisherReport fisher_report(const PPSMSetup& setup) {
    FisherReport r;
    r.qfi_joint = qfi_joint(setup.pre(), setup.pointer());
    r.qfi_joint_max = qfi_joint_max(setup.pointer());
    r.p_d = post_selection_probability(setup);
    r.fd_postselected = qfi_postselected(setup);
    r.cfi = cfi(setup);
    r.at_g = setup.coupling().g;
    return r;
}

double optimal_modulation(double g_nominal, const GaussianPointer& pointer, double phi,
                          PointerCase which) {
    if (which == PointerCase::balanced) {
        return -g_nominal;
    }
    if (std::abs(pointer.q0()) < tol::kDegeneratePointer * pointer.sigma()) {
        throw DegeneratePointer("unbalanced modulation needs a pointer centered away from zero");
    }
    return phi / (2.0 * pointer.q0()) - g_nominal;
}

double sensitivity(const PPSMSetup& setup) {
    const double p_d = require_post_selection(setup);
    const double c = setup.branch_zero();
    const double s = setup.branch_one();
    const double sigma = setup.pointer().sigma();
    const double q0 = setup.pointer().q0();
    const double gp = setup.coupling().total();
    const double eta = std::exp(-sigma * sigma * gp * gp);
    const double d_eta = -2.0 * sigma * sigma * gp * eta;
    const double beta = 2.0 * q0 * gp - setup.phase_gap();
    const double k = -2.0 * c * s * sigma * sigma;
    const double num = k * gp * eta * std::sin(beta);
    const double d_num =
        k * (eta * std::sin(beta) + gp * d_eta * std::sin(beta) + gp * eta * 2.0 * q0 * std::cos(beta));
    const double d_den = post_selection_probability_derivative(setup);
    return (d_num * p_d - num * d_den) / (p_d * p_d);
}

RegionBounds region_bounds(const PPSMSetup& setup, double fraction, PointerCase which) {
    if (!(fraction > 0.0 && fraction < 0.5)) {
        throw std::invalid_argument("region fraction must lie in (0, 1/2)");
    }
    const double phi = setup.postselection_angle();
    const double sigma = setup.pointer().sigma();
    const double q0 = setup.pointer().q0();
    const double g_mod = setup.coupling().g_mod;

    if (which == PointerCase::balanced) {
        const double half = fraction * std::abs(phi) / sigma;
        return {which, -g_mod, -g_mod - half, -g_mod + half, fraction};
    }
    if (std::abs(q0) <= fraction * sigma) {
        throw DegeneratePointer("unbalanced region is unbounded when |q0| <= fraction * sigma");
    }
    if (phi == 0.0) {
        // Only g' = 0 could satisfy |g' q0| <= fraction |g' sigma| with |q0| > fraction sigma,
        // and g' = 0 carries no sign.
        throw EmptyRegion("unbalanced region is empty for a zero post-selection angle");
    }
    // Write g' = sign(phi / q0) t with t > 0: | t |q0| - |phi|/2 | <= fraction sigma t.
    const double sign = (phi > 0.0) == (q0 > 0.0) ? 1.0 : -1.0;
    const double half_phase = 0.5 * std::abs(phi);
    const double t_lo = half_phase / (std::abs(q0) + fraction * sigma);
    const double t_hi = half_phase / (std::abs(q0) - fraction * sigma);
    const double center_t = half_phase / std::abs(q0);
    double lo = sign * t_lo - g_mod;
    double hi = sign * t_hi - g_mod;
    if (lo > hi) {
        std::swap(lo, hi);
    }
    return {which, sign * center_t - g_mod, lo, hi, fraction};
}

}  // namespace ppsm
