#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ppsm/tolerances.hpp"

namespace ppsm::numerics {

/// Integration interval plus the stopping rule for adaptive quadrature.
///
/// `min_panels` seeds the adaptive partition. Callers integrating
/// oscillatory integrands set it so that every initial panel spans at most
/// one period of the fastest oscillation; together with the 16-point rule
/// this keeps at least kNodesPerPeriod nodes per period.
struct QuadratureSpec {
    double lower = 0.0;
    double upper = 1.0;
    std::size_t max_nodes = tol::kQuadMaxNodes;
    double abs_tol = tol::kQuadAbsTol;
    double rel_tol = tol::kQuadRelTol;
    std::size_t min_panels = 1;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t nodes_used = 0;
};

using RealFunction = std::function<double(double)>;

/// Globally adaptive Gauss-Legendre quadrature. Each panel is estimated with
/// a 16-point rule on the whole panel and on both halves; the panel with the
/// largest discrepancy is bisected until the summed error estimate meets
/// max(abs_tol, rel_tol * |value|, 200 eps * integral of |f|). The last term
/// is the rounding floor for integrands with heavy cancellation.
///
/// Throws NoConvergence when max_nodes would be exceeded.
QuadratureResult integrate_detailed(const RealFunction& f, const QuadratureSpec& spec);

double integrate(const RealFunction& f, const QuadratureSpec& spec);

/// Fixed composite Gauss-Legendre rule: `panels` equal panels with `order`
/// nodes each. Used for convergence studies and cheap tabulation.
double integrate_fixed(const RealFunction& f, double lower, double upper,
                       std::size_t panels, std::size_t order);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(std::size_t order);

/// Spec covering q0 +/- kTailSigmas * sigma with the panel count scaled to
/// resolve an oscillation of angular frequency `max_frequency` (rad per
/// pointer unit).
QuadratureSpec gaussian_support(double q0, double sigma, double max_frequency);

}  // namespace ppsm::numerics
