#pragma once

#include "ppsm/numerics/quadrature.hpp"

namespace ppsm::numerics {

/// (f(x + h) - f(x - h)) / 2h. Requires h > 0.
double central_diff(const RealFunction& f, double x, double h);

/// (f(x + h) - 2 f(x) + f(x - h)) / h^2. Requires h > 0.
double second_diff(const RealFunction& f, double x, double h);

}  // namespace ppsm::numerics
