#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "ppsm/core/states.hpp"
#include "ppsm/errors.hpp"
#include "ppsm/estimation/likelihood.hpp"
#include "ppsm/estimation/sampling.hpp"
#include "ppsm/numerics/rng.hpp"
#include "ppsm/numerics/search.hpp"

namespace ppsm {

/// Knobs the experimenter controls between runs.
struct ProbeSettings {
    double phi = 0.0;
    double g_mod = 0.0;
};

/// Black box returning a measurement record for the given settings; the
/// true coupling stays hidden inside.
using Apparatus = std::function<MeasurementRecord(const ProbeSettings&, std::uint64_t n_total,
                                                  numerics::RngStream&)>;

/// Simulated apparatus with optimal pre/post states and a hidden g_true.
Apparatus simulated_apparatus(double g_true, GaussianPointer pointer);

enum class Stage { rough, modulated, final };

std::string_view to_string(Stage stage);

struct StageRecord {
    Stage stage;
    double phi;
    double g_mod;
    double estimate;
    double stderr_est;
    std::uint64_t trials;
    std::uint64_t successes;
};

struct AdaptiveTrace {
    std::vector<StageRecord> stages;
};

struct AdaptiveResult {
    AdaptiveTrace trace;
    EstimationReport report;  ///< stage-3 MLE; g_hat = g0 + delta_g_hat
};

/// The rough estimate failed to land the coupling in the modulated region.
class RegionMiss : public Error {
public:
    RegionMiss(const std::string& what, AdaptiveTrace trace)
        : Error(what), trace_(std::move(trace)) {}

    const AdaptiveTrace& trace() const { return trace_; }

private:
    AdaptiveTrace trace_;
};

struct AdaptiveOptions {
    double rough_fraction = 0.2;
    double settle_fraction = 0.1;
    double rough_phi = 0.78539816339744831;  // pi / 4
    double region_fraction = 0.1;
    /// Region miss tolerance in standard errors.
    double miss_threshold = 3.0;
    /// Stage-2/3 success counts must lie within this many binomial standard
    /// deviations of p_d near the estimate.
    double count_threshold = 5.0;
    /// Half-width of the stage-2/3 search window in stage-1 standard errors.
    double window_stderrs = 6.0;
    /// Stage-1 search range for g. Defaults: balanced |g sigma| <= 1.5;
    /// unbalanced, the branch of the stage-1 shift curve around its zero
    /// crossing on which the shift is monotone.
    std::optional<numerics::Interval> rough_search;
    MleOptions mle;
};

/// Three-step modulated protocol.
///
///  1. rough: phi = pi/4; g_M = 0 (balanced) or phi/(8 q0) (unbalanced).
///     Balanced pointers are estimated by MLE; unbalanced pointers by
///     inverting the exact pointer-shift curve for the observed mean shift.
///  2. modulated: phi = phi_final and g_M = optimal_modulation(g0); the
///     estimate from this stage verifies that the coupling sits in the
///     modulated region.
///  3. final: same settings, MLE over the remaining budget.
///
/// Budget split defaults to 20% / 10% / 70%. Throws RegionMiss (carrying the
/// partial trace) when
///  - stage 1 cannot produce an estimate,
///  - the stage-3 estimate lies outside the modulated region by more than
///    miss_threshold stage-1 standard errors (stage 2: combined stage-1 and
///    stage-2 errors),
///  - the stage-3 likelihood peaks on the edge of the window around g0,
///  - a stage's success count contradicts p_d near its estimate.
/// A stage-2 likelihood that cannot be resolved (too few events) is recorded
/// with a NaN estimate and only the success-count check applies.
AdaptiveResult adaptive_protocol(const Apparatus& apparatus, PointerCase which,
                                 std::uint64_t budget, const GaussianPointer& pointer,
                                 double phi_final, numerics::RngStream& rng,
                                 const AdaptiveOptions& options = {});

/// Default stage-1 search range (see AdaptiveOptions::rough_search).
numerics::Interval default_rough_search(PointerCase which, const GaussianPointer& pointer,
                                        double rough_phi);

}  // namespace ppsm
