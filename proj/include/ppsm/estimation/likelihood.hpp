#pragma once

#include <cstddef>
#include <cstdint>

#include "ppsm/core/states.hpp"
#include "ppsm/estimation/sampling.hpp"
#include "ppsm/numerics/search.hpp"

namespace ppsm {

/// Conditional log-likelihood sum_i ln P(q_i | g) over the successful
/// trials. The success/failure counts do not enter.
///
/// `setup_template` supplies states, pointer and g_M; its g is replaced by
/// the candidate. Throws ZeroDensity when some P(q_i | g) < 1e-300 and
/// std::invalid_argument for a record without successes.
double log_likelihood(const MeasurementRecord& record, const PPSMSetup& setup_template, double g);

struct EstimationReport {
    double g_hat = 0.0;
    double stderr_hat = 0.0;
    std::uint64_t n_total = 0;
    std::uint64_t n_success = 0;
    double fisher_info = 0.0;   ///< per-trial CFI at g_hat
    double fisher_bound = 0.0;  ///< 1 / (n_total * fisher_info)
    double crb_ratio = 0.0;     ///< stderr_hat^2 / fisher_bound
};

struct MleOptions {
    std::size_t coarse_n = 401;
    /// Golden-section tolerance relative to the interval width.
    double refine_rel_tol = 1e-9;
    /// Observed-information step relative to the interval width.
    double curvature_rel_step = 1e-3;
    /// Maxima closer than this fraction of the width to an edge are rejected.
    double edge_fraction = 0.01;
};

/// Maximum-likelihood estimate of g on `search`.
///
/// stderr_hat comes from the observed information (negative second
/// difference of the log-likelihood at g_hat); fisher_bound uses the
/// classical FI at g_hat.
///
/// Throws FlatFunction when the likelihood carries no information on the
/// interval and BoundaryMaximum when g_hat lies within 1% of an edge.
EstimationReport mle(const MeasurementRecord& record, const PPSMSetup& setup_template,
                     numerics::Interval search, const MleOptions& options = {});

}  // namespace ppsm
