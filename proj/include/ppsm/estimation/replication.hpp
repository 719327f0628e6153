#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <thread>
#include <vector>

#include "ppsm/estimation/likelihood.hpp"
#include "ppsm/numerics/rng.hpp"

namespace ppsm {

/// Neumaier-compensated running sum; gives the same result for any
/// partition of work as long as the input order is fixed.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

double compensated_mean(std::span<const double> xs);
/// Unbiased sample variance.
double compensated_variance(std::span<const double> xs);

/// Runs body(i, rng_i) for i in [0, count) where rng_i = RngStream(seed, i),
/// spreading indices over `workers` threads (0 means hardware concurrency).
/// Results are ordered by index regardless of worker count. If any body
/// throws, the exception from the lowest failing index is rethrown after all
/// workers finish.
template <typename Result>
std::vector<Result> parallel_map(std::size_t count, std::uint64_t seed,
                                 const std::function<Result(std::size_t, numerics::RngStream&)>& body,
                                 unsigned workers = 0) {
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    std::vector<Result> out(count);
    std::vector<std::exception_ptr> errors(count);
    auto run = [&](unsigned w) {
        for (std::size_t i = w; i < count; i += workers) {
            try {
                numerics::RngStream rng(seed, i);
                out[i] = body(i, rng);
            } catch (...) {
                errors[i] = std::current_exception();
                return;
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(run, w);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

struct ReplicationSummary {
    std::size_t replications = 0;
    double mean_g_hat = 0.0;
    double var_g_hat = 0.0;
    double mean_stderr = 0.0;
    double mean_crb_ratio = 0.0;
    double mean_fisher_bound = 0.0;
    /// var(g_hat) across replications divided by the mean Fisher bound.
    double empirical_crb_ratio = 0.0;
};

ReplicationSummary summarize(std::span<const EstimationReport> reports);

}  // namespace ppsm
