#include "ppsm/figures/scenario.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ppsm::figures {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const Assignment& a) {
    const std::string v = trim(a.value);
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
        throw ParseError("'" + a.key + "' expects a number, got '" + a.value + "'", a.line);
    }
    return x;
}

std::uint64_t parse_unsigned(const Assignment& a) {
    const std::string v = trim(a.value);
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ParseError("'" + a.key + "' expects a non-negative integer, got '" + a.value + "'",
                         a.line);
    }
    return x;
}

bool parse_bool(const Assignment& a) {
    const std::string v = trim(a.value);
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    throw ParseError("'" + a.key + "' expects true or false, got '" + a.value + "'", a.line);
}

std::vector<double> parse_list(const Assignment& a) {
    std::vector<double> out;
    std::stringstream ss(a.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double({a.key, item, a.line}));
    }
    if (out.empty()) {
        throw ParseError("'" + a.key + "' expects a comma-separated list of numbers", a.line);
    }
    return out;
}

bool is_known(const std::string& key) {
    const auto& keys = config_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

}  // namespace

std::string_view to_string(CurveKind kind) {
    switch (kind) {
        case CurveKind::shift:
            return "shift";
        case CurveKind::sensitivity:
            return "sensitivity";
        case CurveKind::cfi:
            return "cfi";
        case CurveKind::psel:
            return "psel";
        case CurveKind::fd:
            return "fd";
    }
    return "unknown";
}

CurveKind parse_curve_kind(const std::string& text) {
    for (const auto k : {CurveKind::shift, CurveKind::sensitivity, CurveKind::cfi, CurveKind::psel,
                         CurveKind::fd}) {
        if (to_string(k) == text) {
            return k;
        }
    }
    throw ParseError("unknown curve kind '" + text + "' (shift|sensitivity|cfi|psel|fd)", 0);
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "preset", "case",  "q0",      "sigma",   "units",     "phi",
        "g_min",  "g_max", "steps",   "g_mod",   "seed",      "n_total",
        "replications", "kind", "phi_track", "g_true", "phi_final", "fraction"};
    return keys;
}

void Scenario::validate() const {
    if (g_steps < 2) {
        throw ValidationError("steps must be at least 2");
    }
    if (!std::isfinite(g_min) || !std::isfinite(g_max)) {
        throw ValidationError("g range must be finite");
    }
    if (!(g_min < g_max)) {
        throw ValidationError("g_min must be below g_max");
    }
    if (!std::isfinite(q0)) {
        throw ValidationError("q0 must be finite");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ValidationError("sigma must be positive and finite");
    }
    if (phis.empty()) {
        throw ValidationError("at least one phi value is required");
    }
    for (const double p : phis) {
        if (!std::isfinite(p)) {
            throw ValidationError("phi values must be finite");
        }
    }
    if (g_mod && !std::isfinite(*g_mod)) {
        throw ValidationError("g_mod must be finite or auto");
    }
    if (n_total < 1) {
        throw ValidationError("n_total must be at least 1");
    }
    if (replications < 1) {
        throw ValidationError("replications must be at least 1");
    }
    if (!(region_fraction > 0.0 && region_fraction < 0.5)) {
        throw ValidationError("fraction must lie in (0, 0.5)");
    }
    if (which == PointerCase::unbalanced && !(std::abs(q0) > region_fraction * sigma)) {
        throw ValidationError("unbalanced case needs |q0| > fraction * sigma");
    }
    if (phi_track && q0 == 0.0) {
        throw ValidationError("phi_track needs q0 != 0");
    }
    if (!std::isfinite(g_true) || !std::isfinite(phi_final)) {
        throw ValidationError("g_true and phi_final must be finite");
    }
}

std::vector<std::string> preset_names() { return {"beam-deflection", "time-delay"}; }

Scenario preset(const std::string& name) {
    Scenario s;
    s.preset = name;
    if (name == "beam-deflection") {
        s.which = PointerCase::balanced;
        s.q0 = 0.0;
        s.sigma = 200.0;
        s.units = "um";
        s.g_min = -0.01;
        s.g_max = 0.01;
    } else if (name == "time-delay") {
        s.which = PointerCase::unbalanced;
        s.q0 = 2400.0;
        s.sigma = 200.0;
        s.units = "THz";
        s.g_min = 0.0;
        s.g_max = 3e-4;
    } else {
        throw ParseError("unknown preset '" + name + "'", 0);
    }
    return s;
}

std::vector<Assignment> parse_config_text(const std::string& text) {
    std::vector<Assignment> out;
    std::stringstream ss(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", line);
        }
        Assignment a{trim(body.substr(0, eq)), trim(body.substr(eq + 1)), line};
        if (a.key.empty()) {
            throw ParseError("empty key", line);
        }
        if (!is_known(a.key)) {
            throw ParseError("unknown key '" + a.key + "'", line);
        }
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<Assignment> parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open scenario file '" + path.string() + "'", 0);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

void apply(Scenario& s, const Assignment& a) {
    const std::string v = trim(a.value);
    if (a.key == "preset") {
        const Scenario base = preset(v);
        s = base;
    } else if (a.key == "case") {
        if (v == "balanced") {
            s.which = PointerCase::balanced;
        } else if (v == "unbalanced") {
            s.which = PointerCase::unbalanced;
        } else {
            throw ParseError("'case' expects balanced or unbalanced, got '" + v + "'", a.line);
        }
    } else if (a.key == "q0") {
        s.q0 = parse_double(a);
    } else if (a.key == "sigma") {
        s.sigma = parse_double(a);
    } else if (a.key == "units") {
        s.units = v;
    } else if (a.key == "phi") {
        s.phis = parse_list(a);
    } else if (a.key == "g_min") {
        s.g_min = parse_double(a);
    } else if (a.key == "g_max") {
        s.g_max = parse_double(a);
    } else if (a.key == "steps") {
        s.g_steps = parse_unsigned(a);
    } else if (a.key == "g_mod") {
        if (v == "auto") {
            s.g_mod.reset();
        } else {
            s.g_mod = parse_double(a);
        }
    } else if (a.key == "seed") {
        s.seed = parse_unsigned(a);
    } else if (a.key == "n_total") {
        s.n_total = parse_unsigned(a);
    } else if (a.key == "replications") {
        s.replications = parse_unsigned(a);
    } else if (a.key == "kind") {
        try {
            s.kind = parse_curve_kind(v);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), a.line);
        }
    } else if (a.key == "phi_track") {
        s.phi_track = parse_bool(a);
    } else if (a.key == "g_true") {
        s.g_true = parse_double(a);
    } else if (a.key == "phi_final") {
        s.phi_final = parse_double(a);
    } else if (a.key == "fraction") {
        s.region_fraction = parse_double(a);
    } else {
        throw ParseError("unknown key '" + a.key + "'", a.line);
    }
}

Scenario resolve_scenario(const std::vector<Assignment>& file,
                          const std::vector<Assignment>& flags) {
    auto find_preset = [](const std::vector<Assignment>& list) -> const Assignment* {
        const Assignment* found = nullptr;
        for (const auto& a : list) {
            if (a.key == "preset") {
                found = &a;
            }
        }
        return found;
    };
    Scenario s;
    const Assignment* chosen = find_preset(flags);
    if (chosen == nullptr) {
        chosen = find_preset(file);
    }
    if (chosen != nullptr) {
        apply(s, *chosen);
    }
    for (const auto* list : {&file, &flags}) {
        for (const auto& a : *list) {
            if (a.key != "preset") {
                apply(s, a);
            }
        }
    }
    s.validate();
    return s;
}

}  // namespace ppsm::figures
