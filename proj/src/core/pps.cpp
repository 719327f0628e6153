#include "ppsm/core/pps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ppsm/errors.hpp"
#include "ppsm/tolerances.hpp"

namespace ppsm {

namespace {

struct Branches {
    double c;      // |0> branch weight
    double s;      // |1> branch weight
    double delta;  // phase gap
};

Branches branches(const PPSMSetup& setup) {
    return {setup.branch_zero(), setup.branch_one(), setup.phase_gap()};
}

double gaussian_damping(const PPSMSetup& setup) {
    const double x = setup.pointer().sigma() * setup.coupling().total();
    return std::exp(-x * x);
}

void require_post_selection(double p_d) {
    if (!(p_d > tol::kPostSelectionFloor)) {
        std::ostringstream msg;
        msg << "post-selection probability " << p_d << " is at or below "
            << tol::kPostSelectionFloor;
        throw ZeroPostSelection(msg.str());
    }
}

}  // namespace

Complex weak_value(const QubitState& pre, const QubitState& post) {
    const auto i = pre.amplitudes();
    const auto f = post.amplitudes();
    const Complex overlap = std::conj(f[0]) * i[0] + std::conj(f[1]) * i[1];
    if (std::abs(overlap) < tol::kOverlapFloor) {
        throw OrthogonalSelection("pre- and post-selected states are orthogonal");
    }
    const Complex observable = std::conj(f[0]) * i[0] - std::conj(f[1]) * i[1];
    return observable / overlap;
}

Complex post_selected_amplitude(const PPSMSetup& setup, double q) {
    const auto [c, s, delta] = branches(setup);
    const double gq = setup.coupling().total() * q;
    return setup.pointer().amplitude(q) * (c * std::polar(1.0, gq) + s * std::polar(1.0, delta - gq));
}

Complex post_selected_amplitude_derivative(const PPSMSetup& setup, double q) {
    const auto [c, s, delta] = branches(setup);
    const double gq = setup.coupling().total() * q;
    const Complex inner = c * std::polar(1.0, gq) - s * std::polar(1.0, delta - gq);
    return setup.pointer().amplitude(q) * Complex(0.0, q) * inner;
}

double post_selection_probability(const PPSMSetup& setup) {
    const auto [c, s, delta] = branches(setup);
    const double beta = 2.0 * setup.pointer().q0() * setup.coupling().total() - delta;
    const double p = c * c + s * s + 2.0 * c * s * gaussian_damping(setup) * std::cos(beta);
    // Clamp rounding below zero at exact destructive interference.
    return std::clamp(p, 0.0, 1.0);
}

double post_selection_probability_derivative(const PPSMSetup& setup) {
    const auto [c, s, delta] = branches(setup);
    const double sigma = setup.pointer().sigma();
    const double q0 = setup.pointer().q0();
    const double gp = setup.coupling().total();
    const double eta = gaussian_damping(setup);
    const double d_eta = -2.0 * sigma * sigma * gp * eta;
    const double beta = 2.0 * q0 * gp - delta;
    return 2.0 * c * s * (d_eta * std::cos(beta) - 2.0 * q0 * eta * std::sin(beta));
}

numerics::QuadratureSpec pointer_quadrature(const PPSMSetup& setup) {
    return numerics::gaussian_support(setup.pointer().q0(), setup.pointer().sigma(),
                                      2.0 * setup.coupling().total());
}

double post_selection_probability_numeric(const PPSMSetup& setup) {
    return numerics::integrate(
        [&setup](double q) { return std::norm(post_selected_amplitude(setup, q)); },
        pointer_quadrature(setup));
}

PointerGrid default_grid(const PPSMSetup& setup) {
    const auto spec = pointer_quadrature(setup);
    const double span = spec.upper - spec.lower;
    const double period = std::numbers::pi / std::max(std::abs(setup.coupling().total()), 1e-300);
    const double per_oscillation = tol::kNodesPerPeriod * span / period;
    const auto nodes = std::max<double>(static_cast<double>(tol::kInverseCdfNodes),
                                        std::ceil(per_oscillation) + 1.0);
    return {spec.lower, spec.upper, static_cast<std::size_t>(nodes)};
}

PointerDistribution::PointerDistribution(PPSMSetup setup, PointerGrid grid)
    : setup_(setup), grid_(grid), p_d_(post_selection_probability(setup)) {
    if (!(grid.lower < grid.upper) || grid.nodes < 2) {
        throw std::invalid_argument("pointer grid needs lower < upper and at least 2 nodes");
    }
    require_post_selection(p_d_);
}

double PointerDistribution::operator()(double q) const {
    return std::norm(post_selected_amplitude(setup_, q)) / p_d_;
}

std::vector<double> PointerDistribution::nodes() const {
    std::vector<double> q(grid_.nodes);
    const double step = (grid_.upper - grid_.lower) / static_cast<double>(grid_.nodes - 1);
    for (std::size_t i = 0; i < grid_.nodes; ++i) {
        q[i] = grid_.lower + step * static_cast<double>(i);
    }
    q.back() = grid_.upper;
    return q;
}

std::vector<double> PointerDistribution::tabulate() const {
    auto q = nodes();
    for (auto& x : q) {
        x = (*this)(x);
    }
    return q;
}

double PointerDistribution::total_mass() const {
    auto spec = pointer_quadrature(setup_);
    spec.lower = grid_.lower;
    spec.upper = grid_.upper;
    return numerics::integrate([this](double q) { return (*this)(q); }, spec);
}

double PointerDistribution::mean_shift() const {
    auto spec = pointer_quadrature(setup_);
    spec.lower = grid_.lower;
    spec.upper = grid_.upper;
    const double q0 = setup_.pointer().q0();
    // Integrating (q - q0) P avoids cancelling two O(q0) numbers.
    return numerics::integrate([this, q0](double q) { return (q - q0) * (*this)(q); }, spec);
}

PointerDistribution pointer_pdf(const PPSMSetup& setup, PointerGrid grid) {
    return PointerDistribution(setup, grid);
}

PointerDistribution pointer_pdf(const PPSMSetup& setup) {
    return PointerDistribution(setup, default_grid(setup));
}

double pointer_shift(const PPSMSetup& setup) {
    const double p_d = post_selection_probability(setup);
    require_post_selection(p_d);
    const auto [c, s, delta] = branches(setup);
    const double sigma = setup.pointer().sigma();
    const double gp = setup.coupling().total();
    const double beta = 2.0 * setup.pointer().q0() * gp - delta;
    return -2.0 * c * s * sigma * sigma * gp * gaussian_damping(setup) * std::sin(beta) / p_d;
}

double linearized_shift(const PPSMSetup& setup, PointerCase which) {
    const double gp = setup.coupling().total();
    const double sigma = setup.pointer().sigma();
    const double phi = setup.postselection_angle();
    if (which == PointerCase::balanced) {
        if (!(std::abs(gp * sigma) < 0.5 * std::abs(phi))) {
            throw RegimeViolation("balanced linear response needs |g' sigma| < |phi| / 2");
        }
        return -sigma * sigma * gp * weak_value(setup.pre(), setup.post()).imag();
    }
    if (gp == 0.0) {
        throw RegimeViolation("unbalanced approximation needs a nonzero total coupling");
    }
    return (2.0 * setup.pointer().q0() * gp - phi) / gp;
}

}  // namespace ppsm
