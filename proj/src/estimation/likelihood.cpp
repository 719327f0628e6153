#include "ppsm/estimation/likelihood.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ppsm/errors.hpp"
#include "ppsm/fisher/fisher.hpp"
#include "ppsm/tolerances.hpp"

namespace ppsm {

double log_likelihood(const MeasurementRecord& record, const PPSMSetup& setup_template, double g) {
    if (record.successes.empty()) {
        throw std::invalid_argument("log-likelihood needs at least one post-selected readout");
    }
    const auto setup = setup_template.with_g(g);
    const double p_d = post_selection_probability(setup);
    if (!(p_d > tol::kPostSelectionFloor)) {
        throw ZeroDensity("candidate coupling has vanishing post-selection probability");
    }
    const double c = setup.branch_zero();
    const double s = setup.branch_one();
    const double delta = setup.phase_gap();
    const double gp = setup.coupling().total();
    const auto& pointer = setup.pointer();

    double sum = 0.0;
    for (const double q : record.successes) {
        // |amplitude|^2 = f^2(q) [c^2 + s^2 + 2 c s cos(2 g' q - delta)]
        const double fringe = c * c + s * s + 2.0 * c * s * std::cos(2.0 * gp * q - delta);
        const double density = pointer.density(q) * fringe / p_d;
        if (!(density >= tol::kDensityFloor)) {
            std::ostringstream msg;
            msg << "readout " << q << " has density " << density << " at g = " << g;
            throw ZeroDensity(msg.str());
        }
        sum += std::log(density);
    }
    return sum;
}

EstimationReport mle(const MeasurementRecord& record, const PPSMSetup& setup_template,
                     numerics::Interval search, const MleOptions& options) {
    auto objective = [&](double g) {
        try {
            return log_likelihood(record, setup_template, g);
        } catch (const ZeroDensity&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    const double width = search.width();
    const double g_hat =
        numerics::argmax_1d(objective, search, options.coarse_n, options.refine_rel_tol * width);
    if (g_hat - search.lower < options.edge_fraction * width ||
        search.upper - g_hat < options.edge_fraction * width) {
        std::ostringstream msg;
        msg << "likelihood maximum g = " << g_hat << " lies at the edge of [" << search.lower
            << ", " << search.upper << "]";
        throw BoundaryMaximum(msg.str());
    }

    const double h = options.curvature_rel_step * width;
    const double observed =
        -(objective(g_hat + h) - 2.0 * objective(g_hat) + objective(g_hat - h)) / (h * h);
    if (!(observed > 0.0) || !std::isfinite(observed)) {
        throw FlatFunction("observed information at the likelihood maximum is not positive");
    }

    EstimationReport report;
    report.g_hat = g_hat;
    report.stderr_hat = 1.0 / std::sqrt(observed);
    report.n_total = record.n_total;
    report.n_success = record.n_success();
    report.fisher_info = cfi(setup_template.with_g(g_hat));
    report.fisher_bound = 1.0 / (static_cast<double>(record.n_total) * report.fisher_info);
    report.crb_ratio = report.stderr_hat * report.stderr_hat / report.fisher_bound;
    return report;
}

}  // namespace ppsm
