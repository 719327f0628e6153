#pragma once

#include <cstdint>
#include <vector>

#include "ppsm/core/pps.hpp"
#include "ppsm/numerics/rng.hpp"

namespace ppsm {

/// Outcome of n_total PPS trials. Only successful post-selections carry a
/// pointer readout.
struct MeasurementRecord {
    std::vector<double> successes;
    std::uint64_t n_total = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    std::uint64_t n_success() const { return successes.size(); }
};

/// Piecewise-linear inverse of the CDF of a PointerDistribution tabulated on
/// its grid (cumulative trapezoid, renormalized to end at exactly 1).
class InverseCdfSampler {
public:
    explicit InverseCdfSampler(const PointerDistribution& pdf);

    /// Readout for a uniform variate u in [0, 1).
    double operator()(double u) const;

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& cdf() const { return cdf_; }

private:
    std::vector<double> nodes_;
    std::vector<double> cdf_;
};

/// Each trial succeeds with probability p_d; a success draws its readout
/// from P(q|g) through an inverse-CDF table built once per call with 2^14
/// nodes. Draws: one uniform per trial, one more per success.
///
/// Throws ZeroPostSelection when p_d <= 1e-15 and std::invalid_argument for
/// n_total == 0.
MeasurementRecord sample_record(const PPSMSetup& setup, std::uint64_t n_total,
                                numerics::RngStream& rng);

}  // namespace ppsm
