#pragma once

#include <cstddef>

#include "ppsm/numerics/quadrature.hpp"

namespace ppsm::numerics {

struct Interval {
    double lower;
    double upper;

    double width() const { return upper - lower; }
    double center() const { return 0.5 * (lower + upper); }
    bool contains(double x) const { return lower <= x && x <= upper; }
};

/// Coarse scan of `coarse_n` equally spaced points (endpoints included)
/// followed by golden-section refinement around the best scan point until the
/// bracket is narrower than `refine_tol`.
///
/// Non-finite samples (e.g. -inf log-likelihoods) are skipped by the scan.
/// Throws FlatFunction when the finite scan values differ by less than 1e-14
/// relative to their magnitude.
double argmax_1d(const RealFunction& f, Interval interval, std::size_t coarse_n,
                 double refine_tol);

/// Bisection root of f on [lower, upper]; throws NoBracket when the end
/// values do not differ in sign.
double bisect_root(const RealFunction& f, Interval interval, double x_tol);

}  // namespace ppsm::numerics
