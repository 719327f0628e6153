#include "ppsm/estimation/replication.hpp"

#include <cmath>
#include <stdexcept>

namespace ppsm {

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        carry_ += (sum_ - t) + x;
    } else {
        carry_ += (x - t) + sum_;
    }
    sum_ = t;
}

double compensated_mean(std::span<const double> xs) {
    if (xs.empty()) {
        throw std::invalid_argument("mean of an empty sample");
    }
    CompensatedSum s;
    for (const double x : xs) {
        s.add(x);
    }
    return s.value() / static_cast<double>(xs.size());
}

double compensated_variance(std::span<const double> xs) {
    if (xs.size() < 2) {
        throw std::invalid_argument("variance needs at least two values");
    }
    const double m = compensated_mean(xs);
    CompensatedSum s;
    for (const double x : xs) {
        s.add((x - m) * (x - m));
    }
    return s.value() / static_cast<double>(xs.size() - 1);
}

ReplicationSummary summarize(std::span<const EstimationReport> reports) {
    if (reports.size() < 2) {
        throw std::invalid_argument("summary needs at least two replications");
    }
    std::vector<double> g, se, ratio, bound;
    for (const auto& r : reports) {
        g.push_back(r.g_hat);
        se.push_back(r.stderr_hat);
        ratio.push_back(r.crb_ratio);
        bound.push_back(r.fisher_bound);
    }
    ReplicationSummary s;
    s.replications = reports.size();
    s.mean_g_hat = compensated_mean(g);
    s.var_g_hat = compensated_variance(g);
    s.mean_stderr = compensated_mean(se);
    s.mean_crb_ratio = compensated_mean(ratio);
    s.mean_fisher_bound = compensated_mean(bound);
    s.empirical_crb_ratio = s.var_g_hat / s.mean_fisher_bound;
    return s;
}

}  // namespace ppsm
