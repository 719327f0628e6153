#include "ppsm/numerics/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ppsm/errors.hpp"

namespace ppsm::numerics {

double argmax_1d(const RealFunction& f, Interval interval, std::size_t coarse_n,
                 double refine_tol) {
    if (!(interval.lower < interval.upper)) {
        throw std::invalid_argument("argmax interval must satisfy lower < upper");
    }
    if (coarse_n < 3) {
        throw std::invalid_argument("argmax coarse scan needs at least 3 points");
    }
    if (!(refine_tol > 0.0)) {
        throw std::invalid_argument("argmax refinement tolerance must be positive");
    }

    const double step = interval.width() / static_cast<double>(coarse_n - 1);
    auto grid = [&](std::size_t i) {
        return i + 1 == coarse_n ? interval.upper
                                 : interval.lower + step * static_cast<double>(i);
    };

    std::size_t best = coarse_n;
    double best_value = -std::numeric_limits<double>::infinity();
    double worst_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < coarse_n; ++i) {
        const double v = f(grid(i));
        if (!std::isfinite(v)) {
            continue;
        }
        if (best == coarse_n || v > best_value) {
            best = i;
            best_value = v;
        }
        worst_value = std::min(worst_value, v);
    }
    if (best == coarse_n) {
        throw FlatFunction("argmax scan produced no finite values");
    }
    const double scale = std::max(std::abs(best_value), std::abs(worst_value));
    if (best_value - worst_value <= 1e-14 * scale) {
        std::ostringstream msg;
        msg << "function is flat over [" << interval.lower << ", " << interval.upper << "]";
        throw FlatFunction(msg.str());
    }

    double a = grid(best == 0 ? 0 : best - 1);
    double b = grid(std::min(best + 1, coarse_n - 1));
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    auto eval = [&f](double x) {
        const double v = f(x);
        return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
    };
    double fc = eval(c);
    double fd = eval(d);
    while (b - a > refine_tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = eval(d);
        }
        if (!(a < c && c < b)) {
            break;  // bracket reached floating-point resolution
        }
    }
    const double x = 0.5 * (a + b);
    // The refined point must not lose against the coarse winner.
    return eval(x) >= best_value ? x : grid(best);
}

double bisect_root(const RealFunction& f, Interval interval, double x_tol) {
    if (!(interval.lower < interval.upper)) {
        throw std::invalid_argument("root interval must satisfy lower < upper");
    }
    double a = interval.lower;
    double b = interval.upper;
    double fa = f(a);
    const double fb = f(b);
    if (fa == 0.0) {
        return a;
    }
    if (fb == 0.0) {
        return b;
    }
    if ((fa > 0.0) == (fb > 0.0)) {
        throw NoBracket("root interval does not bracket a sign change");
    }
    while (b - a > x_tol) {
        const double m = 0.5 * (a + b);
        if (!(a < m && m < b)) {
            break;
        }
        const double fm = f(m);
        if (fm == 0.0) {
            return m;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace ppsm::numerics
