#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ppsm/core/pps.hpp"
#include "ppsm/errors.hpp"
#include "ppsm/fisher/fisher.hpp"
#include "ppsm/numerics/differentiation.hpp"
#include "ppsm/numerics/rng.hpp"
#include "ppsm/numerics/search.hpp"
#include "reference_values.hpp"

using namespace ppsm;
using std::numbers::pi;

namespace {

bool rel_close(double got, double want, double rel) {
    return std::abs(got - want) <= rel * std::abs(want);
}

PPSMSetup balanced(double phi, double sigma, double g, double g_mod = 0.0) {
    return PPSMSetup::optimal(phi, GaussianPointer(0.0, sigma), {g, g_mod});
}

}  // namespace

TEST_SUITE("joint QFI") {
    TEST_CASE("closed form") {
        const GaussianPointer f(2.0, 1.0);
        CHECK(qfi_joint(QubitState(pi / 2.0, 0.3), f) == doctest::Approx(18.0).epsilon(1e-15));
        CHECK(qfi_joint_max(f) == 18.0);
        CHECK(qfi_joint(QubitState(pi / 3.0, 0.0), f) == doctest::Approx(14.0).epsilon(1e-14));
        for (double theta : {0.0, 0.7, 2.0}) {
            CHECK(qfi_joint(QubitState(theta, 1.0), GaussianPointer(0.0, 3.0)) == 18.0);
        }
    }

    TEST_CASE("quadrature of the definition agrees and is g-independent") {
        const QubitState pre(pi / 3.0, 0.2);
        const GaussianPointer f(2.0, 1.0);
        const double closed = qfi_joint(pre, f);
        for (double g : {0.0, 0.4, -1.5}) {
            for (double g_mod : {0.0, 0.3}) {
                const PPSMSetup setup(pre, QubitState(1.0, 0.0), f, {g, g_mod});
                CHECK(rel_close(qfi_joint_numeric(setup), closed, 1e-8));
                CHECK(qfi_joint(setup.pre(), setup.pointer()) == closed);
            }
        }
    }
}

TEST_SUITE("post-selected QFI and classical FI") {
    TEST_CASE("reference values") {
        struct Case {
            PPSMSetup setup;
            reference::Values v;
        };
        const Case cases[] = {
            {balanced(0.6, 1.3, 0.4, 0.1), reference::kBalancedModulated},
            {PPSMSetup::optimal(0.6, GaussianPointer(0.7, 1.3), {0.4, 0.1}), reference::kOffsetPointer},
            {PPSMSetup(QubitState(1.1, 0.3), QubitState(2.0, -0.9), GaussianPointer(0.5, 0.8),
                       {0.35, 0.0}),
             reference::kGeneralStates},
            {PPSMSetup::optimal(0.5, GaussianPointer(2400.0, 200.0), {1e-4, 0.0}), reference::kTimeDelay},
        };
        for (const auto& c : cases) {
            CHECK(rel_close(qfi_postselected(c.setup), c.v.fd, 1e-11));
            CHECK(rel_close(cfi(c.setup), c.v.cfi, 1e-11));
            CHECK(rel_close(sensitivity(c.setup), c.v.sensitivity, 1e-11));
        }
    }

    TEST_CASE("balanced retention limit") {
        const double sigma = 200.0;
        const double phi = 1e-3;
        for (double g : {0.0, 1e-9, -5e-9}) {
            CHECK(rel_close(qfi_postselected(balanced(phi, sigma, g)), 2.0 * sigma * sigma, 1e-2));
        }
        // Away from the center the retained fraction falls as 1 / (1 + 2 (g' sigma / phi)^2).
        for (double x : {0.3e-3, 1e-3}) {
            const double ratio = qfi_postselected(balanced(phi, sigma, x / sigma)) / (2.0 * sigma * sigma);
            CHECK(rel_close(ratio, 1.0 / (1.0 + 2.0 * x * x / (phi * phi)), 2e-3));
        }
    }

    TEST_CASE("unbalanced retention limit at phi = 2 g' q0") {
        const GaussianPointer f(2400.0, 200.0);
        for (double x : {1e-4, 5e-4, 1e-3}) {
            const double g = x / f.sigma();
            const auto setup = PPSMSetup::optimal(2.0 * g * f.q0(), f, {g, 0.0});
            CHECK(rel_close(qfi_postselected(setup), qfi_joint_max(f), 1e-2));
        }
    }

    TEST_CASE("classical FI at the balanced center") {
        const double sigma = 200.0;
        const auto setup = balanced(1e-2, sigma, 0.0);
        CHECK(rel_close(cfi(setup), 2.0 * sigma * sigma, 1e-2));
        CHECK(rel_close(cfi(setup), 2.0 * sigma * sigma * std::pow(std::cos(5e-3), 2), 1e-10));
    }

    TEST_CASE("information hierarchy over random setups") {
        numerics::RngStream rng(2024, 3);
        for (int i = 0; i < 60; ++i) {
            const double theta_i = pi * rng.uniform();
            const double theta_f = pi * rng.uniform();
            const double q0 = 4.0 * rng.uniform() - 2.0;
            const double sigma = 0.2 + 2.0 * rng.uniform();
            const double g = (4.0 * rng.uniform() - 2.0) / sigma;
            const PPSMSetup setup(QubitState(theta_i, 2.0 * pi * rng.uniform()),
                                  QubitState(theta_f, 2.0 * pi * rng.uniform()),
                                  GaussianPointer(q0, sigma), {g, 0.0});
            if (post_selection_probability(setup) <= 1e-10) {
                continue;
            }
            const auto r = fisher_report(setup);
            CHECK(r.hierarchy_holds(tol::kHierarchySlack));
            CHECK(r.qfi_joint <= r.qfi_joint_max * (1.0 + 1e-15));
        }
    }

    TEST_CASE("standard balanced curve is symmetric") {
        for (double k : {0.001, 0.004, 0.02}) {
            CHECK(rel_close(cfi(balanced(0.2, 200.0, k)), cfi(balanced(0.2, 200.0, -k)), 1e-10));
        }
    }

    TEST_CASE("modulated balanced peak sits at -g_M") {
        const double sigma = 1.0;
        const double phi = 0.1;
        const double k_m = -0.5;
        auto curve = [&](double k) { return cfi(balanced(phi, sigma, k, k_m)); };
        const double step = 1e-3 * phi / sigma;
        const double peak = numerics::argmax_1d(curve, {0.0, 1.0}, 201, step);
        CHECK(std::abs(peak - 0.5) <= step);
    }

    TEST_CASE("vanishing post-selection") {
        CHECK_THROWS_AS(cfi(balanced(0.0, 1.0, 0.0)), ZeroPostSelection);
        CHECK_THROWS_AS(qfi_postselected(balanced(0.0, 1.0, 0.0)), ZeroPostSelection);
        CHECK_THROWS_AS(sensitivity(balanced(0.0, 1.0, 0.0)), ZeroPostSelection);
    }
}

TEST_SUITE("optimal modulation") {
    TEST_CASE("both pointer cases") {
        CHECK(optimal_modulation(5.0, GaussianPointer(0.0, 1.0), 0.3, PointerCase::balanced) == -5.0);
        CHECK(optimal_modulation(0.0, GaussianPointer(0.0, 1.0), 0.3, PointerCase::balanced) == 0.0);
        CHECK(optimal_modulation(1e-3, GaussianPointer(2400.0, 200.0), pi / 4.0,
                                 PointerCase::unbalanced) ==
              doctest::Approx(pi / 19200.0 - 1e-3).epsilon(1e-15));
        CHECK_THROWS_AS(
            optimal_modulation(1e-3, GaussianPointer(0.0, 200.0), 0.3, PointerCase::unbalanced),
            DegeneratePointer);
    }
}

TEST_SUITE("sensitivity") {
    TEST_CASE("matches central differences of the exact shift") {
        numerics::RngStream rng(77, 0);
        for (int i = 0; i < 40; ++i) {
            const double phi = 0.05 + 2.5 * rng.uniform();
            const double q0 = rng.uniform() < 0.5 ? 0.0 : 3.0 * rng.uniform();
            const double g = 3.0 * rng.uniform() - 1.5;
            const auto setup = PPSMSetup::optimal(phi, GaussianPointer(q0, 1.0), {g, 0.0});
            if (post_selection_probability(setup) < 1e-6) {
                continue;
            }
            auto shift = [&](double x) { return pointer_shift(setup.with_g(x)); };
            const double fd = numerics::central_diff(shift, g, 1e-6);
            CHECK(std::abs(sensitivity(setup) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
        }
    }

    TEST_CASE("balanced slope at the center is -sigma^2 cot(phi/2)") {
        for (double phi : {0.01, 0.1, 0.5}) {
            CHECK(rel_close(sensitivity(balanced(phi, 2.0, 0.0)), -4.0 / std::tan(phi / 2.0), 1e-10));
        }
    }

    TEST_CASE("balanced slope is even in g'") {
        for (double g : {0.01, 0.2, 1.0}) {
            CHECK(rel_close(sensitivity(balanced(0.4, 1.0, g)), sensitivity(balanced(0.4, 1.0, -g)), 1e-12));
        }
    }

    TEST_CASE("unbalanced slope at the crossing") {
        const GaussianPointer f(12.0, 1.0);
        const double phi = 0.1;
        const double g0 = phi / 24.0;
        const auto setup = PPSMSetup::optimal(phi, f, {g0, 0.0});
        auto shift = [&](double x) { return pointer_shift(setup.with_g(x)); };
        CHECK(rel_close(sensitivity(setup), numerics::central_diff(shift, g0, 1e-9), 1e-5));
        // The approximation (2 q0 g' - phi) / g' has slope 2 q0 / g' at the crossing.
        CHECK(rel_close(sensitivity(setup), 2.0 * f.q0() / g0, 1e-2));
    }
}

TEST_SUITE("region bounds") {
    TEST_CASE("balanced linear region") {
        const auto r = region_bounds(balanced(0.2, 1.0, 0.0), 0.1, PointerCase::balanced);
        CHECK(r.lower_g == doctest::Approx(-0.02));
        CHECK(r.upper_g == doctest::Approx(0.02));
        CHECK(r.center_g == 0.0);
        const auto shifted = region_bounds(balanced(0.2, 1.0, 0.0, 0.3), 0.1, PointerCase::balanced);
        CHECK(shifted.center_g == doctest::Approx(-0.3));
        CHECK(shifted.lower_g < shifted.center_g);
        CHECK(shifted.center_g < shifted.upper_g);
    }

    TEST_CASE("unbalanced intermediate region") {
        const double phi = pi / 4.0;
        const auto setup = PPSMSetup::optimal(phi, GaussianPointer(2400.0, 200.0), {});
        const auto r = region_bounds(setup, 0.1, PointerCase::unbalanced);
        CHECK(r.lower_g == doctest::Approx(phi / 2.0 / (2400.0 + 20.0)).epsilon(1e-14));
        CHECK(r.upper_g == doctest::Approx(phi / 2.0 / (2400.0 - 20.0)).epsilon(1e-14));
        CHECK(r.center_g == doctest::Approx(phi / 4800.0).epsilon(1e-14));
        // Both edges satisfy the defining equality.
        for (double g : {r.lower_g, r.upper_g}) {
            CHECK(std::abs(g * 2400.0 - phi / 2.0) == doctest::Approx(0.1 * g * 200.0).epsilon(1e-12));
        }
    }

    TEST_CASE("vanishing fraction collapses onto the center") {
        const auto r = region_bounds(balanced(0.2, 1.0, 0.0, 0.1), 1e-12, PointerCase::balanced);
        CHECK(r.upper_g - r.lower_g < 1e-12);
        const auto u = region_bounds(PPSMSetup::optimal(0.5, GaussianPointer(10.0, 1.0), {}), 1e-12,
                                     PointerCase::unbalanced);
        CHECK(u.upper_g - u.lower_g < 1e-12);
        CHECK(u.contains(u.center_g));
    }

    TEST_CASE("errors") {
        CHECK_THROWS_AS(region_bounds(balanced(0.2, 1.0, 0.0), 0.5, PointerCase::balanced),
                        std::invalid_argument);
        CHECK_THROWS_AS(region_bounds(balanced(0.2, 1.0, 0.0), 0.0, PointerCase::balanced),
                        std::invalid_argument);
        CHECK_THROWS_AS(region_bounds(PPSMSetup::optimal(0.0, GaussianPointer(10.0, 1.0), {}), 0.1,
                                      PointerCase::unbalanced),
                        EmptyRegion);
        CHECK_THROWS_AS(region_bounds(PPSMSetup::optimal(0.3, GaussianPointer(0.05, 1.0), {}), 0.1,
                                      PointerCase::unbalanced),
                        DegeneratePointer);
    }
}
