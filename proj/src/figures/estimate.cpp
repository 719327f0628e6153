#include "ppsm/figures/estimate.hpp"

#include <ostream>

#include "ppsm/figures/curve.hpp"

namespace ppsm::figures {

namespace {

struct ReplicationOutcome {
    EstimationReport report;
    AdaptiveTrace trace;
};

}  // namespace

EstimateRun run_estimate(const Scenario& scenario, EstimateMode mode, unsigned workers) {
    scenario.validate();
    if (scenario.n_total < 1000) {
        throw ValidationError("n_total must be at least 1000 for estimation runs");
    }
    const auto pointer = scenario.pointer();
    const auto apparatus = simulated_apparatus(scenario.g_true, pointer);

    std::function<ReplicationOutcome(std::size_t, numerics::RngStream&)> body;
    if (mode == EstimateMode::single) {
        const double phi = scenario.phis.front();
        const ProbeSettings settings{phi, resolved_modulation(scenario, phi)};
        const auto templ = PPSMSetup::optimal(phi, pointer, CouplingConfig{0.0, settings.g_mod});
        const numerics::Interval search{scenario.g_min, scenario.g_max};
        body = [=, &apparatus](std::size_t, numerics::RngStream& rng) {
            const auto record = apparatus(settings, scenario.n_total, rng);
            return ReplicationOutcome{mle(record, templ, search), {}};
        };
    } else {
        body = [&](std::size_t, numerics::RngStream& rng) {
            auto result = adaptive_protocol(apparatus, scenario.which, scenario.n_total, pointer,
                                            scenario.phi_final, rng);
            return ReplicationOutcome{result.report, std::move(result.trace)};
        };
    }
    const auto outcomes =
        parallel_map<ReplicationOutcome>(scenario.replications, scenario.seed, body, workers);

    EstimateRun run;
    run.mode = mode;
    for (const auto& o : outcomes) {
        run.reports.push_back(o.report);
        if (mode == EstimateMode::adaptive) {
            run.traces.push_back(o.trace);
        }
    }
    if (run.reports.size() >= 2) {
        run.summary = summarize(run.reports);
    }
    return run;
}

void write_estimate_csv(const EstimateRun& run, std::ostream& out) {
    out << "replication,g_hat,stderr,crb_ratio\n";
    for (std::size_t i = 0; i < run.reports.size(); ++i) {
        const auto& r = run.reports[i];
        out << i << ',' << format_number(r.g_hat) << ',' << format_number(r.stderr_hat) << ','
            << format_number(r.crb_ratio) << '\n';
    }
}

void write_estimate_report(const EstimateRun& run, const Scenario& scenario, std::ostream& out) {
    out << "mode: " << (run.mode == EstimateMode::single ? "single" : "adaptive")
        << "  case: " << to_string(scenario.which) << "  q0: " << format_number(scenario.q0)
        << "  sigma: " << format_number(scenario.sigma) << ' ' << scenario.units << '\n';
    if (!run.traces.empty()) {
        out << "trace (replication 0):\n";
        for (const auto& s : run.traces.front().stages) {
            out << "  " << to_string(s.stage) << ": phi=" << format_number(s.phi)
                << " g_mod=" << format_number(s.g_mod) << " estimate=" << format_number(s.estimate)
                << " stderr=" << format_number(s.stderr_est) << " trials=" << s.trials
                << " successes=" << s.successes << '\n';
        }
    }
    if (!run.reports.empty()) {
        const auto& r = run.reports.back();
        out << "g_hat: " << format_number(r.g_hat) << '\n'
            << "stderr_hat: " << format_number(r.stderr_hat) << '\n'
            << "n_total: " << r.n_total << '\n'
            << "n_success: " << r.n_success << '\n'
            << "fisher_bound: " << format_number(r.fisher_bound) << '\n'
            << "crb_ratio: " << format_number(r.crb_ratio) << '\n';
    }
    if (run.summary) {
        const auto& s = *run.summary;
        out << "replications: " << s.replications << '\n'
            << "mean g_hat: " << format_number(s.mean_g_hat) << '\n'
            << "var g_hat: " << format_number(s.var_g_hat) << '\n'
            << "mean stderr: " << format_number(s.mean_stderr) << '\n'
            << "mean crb_ratio: " << format_number(s.mean_crb_ratio) << '\n'
            << "var(g_hat) / mean fisher_bound: " << format_number(s.empirical_crb_ratio) << '\n';
    }
}

}  // namespace ppsm::figures
