#include "ppsm/estimation/sampling.hpp"

#include <algorithm>
#include <stdexcept>


namespace ppsm {

InverseCdfSampler::InverseCdfSampler(const PointerDistribution& pdf) : nodes_(pdf.nodes()) {
    const auto density = pdf.tabulate();
    cdf_.assign(nodes_.size(), 0.0);
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        cdf_[i] = cdf_[i - 1] + 0.5 * (density[i] + density[i - 1]) * (nodes_[i] - nodes_[i - 1]);
    }
    const double total = cdf_.back();
    for (auto& c : cdf_) {
        c /= total;
    }
    cdf_.back() = 1.0;
}

double InverseCdfSampler::operator()(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.begin()) {
        return nodes_.front();
    }
    if (it == cdf_.end()) {
        return nodes_.back();
    }
    const auto hi = static_cast<std::size_t>(it - cdf_.begin());
    const std::size_t lo = hi - 1;
    const double span = cdf_[hi] - cdf_[lo];
    const double t = span > 0.0 ? (u - cdf_[lo]) / span : 0.0;
    return nodes_[lo] + t * (nodes_[hi] - nodes_[lo]);
}

MeasurementRecord sample_record(const PPSMSetup& setup, std::uint64_t n_total,
                                numerics::RngStream& rng) {
    if (n_total == 0) {
        throw std::invalid_argument("a measurement record needs at least one trial");
    }
    // default_grid gives 2^14 nodes, more when the fringes need them.
    const auto pdf = pointer_pdf(setup);
    const InverseCdfSampler sampler(pdf);

    MeasurementRecord record;
    record.n_total = n_total;
    record.seed = rng.seed();
    record.stream_id = rng.stream_id();
    const double p_d = pdf.p_d();
    for (std::uint64_t i = 0; i < n_total; ++i) {
        if (rng.uniform() < p_d) {
            record.successes.push_back(sampler(rng.uniform()));
        }
    }
    return record;
}

}  // namespace ppsm
