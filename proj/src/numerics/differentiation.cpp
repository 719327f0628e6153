#include "ppsm/numerics/differentiation.hpp"

#include <stdexcept>

namespace ppsm::numerics {

double central_diff(const RealFunction& f, double x, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite-difference step must be positive");
    }
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double second_diff(const RealFunction& f, double x, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite-difference step must be positive");
    }
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace ppsm::numerics
