#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "ppsm/estimation/adaptive.hpp"
#include "ppsm/estimation/replication.hpp"
#include "ppsm/figures/scenario.hpp"

namespace ppsm::figures {

enum class EstimateMode { single, adaptive };

struct EstimateRun {
    EstimateMode mode = EstimateMode::single;
    std::vector<EstimationReport> reports;
    std::vector<AdaptiveTrace> traces;  ///< adaptive mode only
    std::optional<ReplicationSummary> summary;  ///< two or more replications
};

/// Replication study against a simulated apparatus hiding scenario.g_true.
///
/// single:   phi = first phi value, g_M from the scenario (auto centers it on
///           the g range), MLE over [g_min, g_max] with n_total trials.
/// adaptive: three-step modulated protocol with budget n_total and
///           phi_final.
///
/// Replication i draws from RngStream(seed, i). Throws ValidationError when
/// n_total < 1000; RegionMiss and numerical errors propagate.
EstimateRun run_estimate(const Scenario& scenario, EstimateMode mode, unsigned workers = 0);

/// CSV with header replication,g_hat,stderr,crb_ratio.
void write_estimate_csv(const EstimateRun& run, std::ostream& out);

/// Human-readable report: the last replication's fields, the adaptive trace
/// of replication 0, and the replication summary.
void write_estimate_report(const EstimateRun& run, const Scenario& scenario, std::ostream& out);

}  // namespace ppsm::figures
