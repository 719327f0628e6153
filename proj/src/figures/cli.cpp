#include "ppsm/figures/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>

#include "ppsm/estimation/adaptive.hpp"
#include "ppsm/figures/curve.hpp"
#include "ppsm/figures/estimate.hpp"

namespace ppsm::figures {

namespace {

struct FlagSpec {
    const char* flag;
    const char* key;
    const char* help;
};

constexpr FlagSpec kValueFlags[] = {
    {"--preset", "preset", "beam-deflection or time-delay"},
    {"--case", "case", "balanced or unbalanced"},
    {"--q0", "q0", "pointer center"},
    {"--sigma", "sigma", "pointer width"},
    {"--units", "units", "unit label for the pointer"},
    {"--phi", "phi", "comma-separated post-selection angles"},
    {"--g-min", "g_min", "lower end of the coupling grid / search"},
    {"--g-max", "g_max", "upper end of the coupling grid / search"},
    {"--g-steps", "steps", "number of grid points"},
    {"--g-mod", "g_mod", "modulation value or auto"},
    {"--seed", "seed", "RNG seed"},
    {"--n-total", "n_total", "trials per replication (adaptive: total budget)"},
    {"--replications", "replications", "number of replications"},
    {"--kind", "kind", "shift|sensitivity|cfi|psel|fd"},
    {"--g-true", "g_true", "coupling hidden in the simulated apparatus"},
    {"--phi-final", "phi_final", "adaptive stage-2/3 post-selection angle"},
    {"--fraction", "fraction", "region half-width fraction"},
};

struct CommandInputs {
    std::string scenario_path;
    std::string out_path;
    bool phi_track = false;
    std::map<std::string, std::string> values;  // key -> raw text
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& description,
                      CommandInputs& in) {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("--scenario", in.scenario_path, "key = value scenario file");
    sub->add_option("--out", in.out_path, "CSV destination (default stdout)");
    for (const auto& spec : kValueFlags) {
        const std::string key = spec.key;
        sub->add_option_function<std::string>(
            spec.flag, [&in, key](const std::string& v) { in.values[key] = v; }, spec.help);
    }
    sub->add_flag("--phi-track", in.phi_track, "set phi = 2 q0 g' on every row");
    return sub;
}

Scenario load_scenario(const CommandInputs& in) {
    std::vector<Assignment> file;
    if (!in.scenario_path.empty()) {
        file = parse_config_file(in.scenario_path);
    }
    std::vector<Assignment> flags;
    for (const auto& [key, value] : in.values) {
        flags.push_back({key, value, 0});
    }
    if (in.phi_track) {
        flags.push_back({"phi_track", "true", 0});
    }
    return resolve_scenario(file, flags);
}

/// Opens --out when given; otherwise returns the fallback stream.
class OutputSink {
public:
    OutputSink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw ParseError("cannot open output file '" + path + "'", 0);
            }
            stream_ = file_.get();
        }
    }

    std::ostream& stream() { return *stream_; }
    bool to_file() const { return file_ != nullptr; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

int run_curve_command(const CommandInputs& in, std::ostream& out, std::ostream& err) {
    const auto scenario = load_scenario(in);
    const auto table = run_curve(scenario);
    OutputSink sink(in.out_path, out);
    write_curve_csv(table, sink.stream());
    (sink.to_file() ? out : err) << "rows " << table.rows.size() << ", hierarchy checked on "
                                 << table.hierarchy_checked << "\n";
    if (table.hierarchy_violations > 0) {
        err << "error: information hierarchy violated on " << table.hierarchy_violations << " of "
            << table.hierarchy_checked << " rows\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int run_estimate_command(const CommandInputs& in, EstimateMode mode, std::ostream& out,
                         std::ostream& err) {
    const auto scenario = load_scenario(in);
    const auto run = run_estimate(scenario, mode);
    OutputSink sink(in.out_path, out);
    write_estimate_csv(run, sink.stream());
    write_estimate_report(run, scenario, sink.to_file() ? out : err);
    return kExitOk;
}

void list_presets(std::ostream& out) {
    out << "name,case,q0,sigma,units,g_min,g_max,steps,phi\n";
    for (const auto& name : preset_names()) {
        const auto s = preset(name);
        out << name << ',' << to_string(s.which) << ',' << format_number(s.q0) << ','
            << format_number(s.sigma) << ',' << s.units << ',' << format_number(s.g_min) << ','
            << format_number(s.g_max) << ',' << s.g_steps << ",\"";
        for (std::size_t i = 0; i < s.phis.size(); ++i) {
            out << (i ? "," : "") << format_number(s.phis[i]);
        }
        out << "\"\n";
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Modulated pre-/post-selected measurement toolkit", "ppsm"};
    app.require_subcommand(1);
    CommandInputs curve_in, estimate_in, adaptive_in, presets_in;
    auto* curve = add_command(app, "curve", "response and information curves as CSV", curve_in);
    auto* estimate =
        add_command(app, "estimate", "single-stage MLE replication study", estimate_in);
    auto* adaptive =
        add_command(app, "adaptive", "three-step modulated protocol replication study", adaptive_in);
    auto* presets = app.add_subcommand("presets", "list the built-in scenario presets");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (curve->parsed()) {
            return run_curve_command(curve_in, out, err);
        }
        if (estimate->parsed()) {
            return run_estimate_command(estimate_in, EstimateMode::single, out, err);
        }
        if (adaptive->parsed()) {
            return run_estimate_command(adaptive_in, EstimateMode::adaptive, out, err);
        }
        if (presets->parsed()) {
            list_presets(out);
            return kExitOk;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "invalid scenario: " << e.what() << '\n';
        return kExitUsage;
    } catch (const RegionMiss& e) {
        err << "protocol failure: " << e.what() << '\n';
        for (const auto& s : e.trace().stages) {
            err << "  " << to_string(s.stage) << ": phi=" << format_number(s.phi)
                << " g_mod=" << format_number(s.g_mod) << " estimate=" << format_number(s.estimate)
                << " stderr=" << format_number(s.stderr_est) << '\n';
        }
        return kExitProtocol;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace ppsm::figures
