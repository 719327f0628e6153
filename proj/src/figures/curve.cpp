#include "ppsm/figures/curve.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ppsm/core/pps.hpp"
#include "ppsm/fisher/fisher.hpp"
#include "ppsm/tolerances.hpp"

namespace ppsm::figures {

namespace {

constexpr const char* kCurveHeader = "g,phi,value,p_d,region_flag";

bool same_bits(double a, double b) {
    if (std::isnan(a) || std::isnan(b)) {
        return std::isnan(a) && std::isnan(b);
    }
    return std::memcmp(&a, &b, sizeof a) == 0;
}

double kind_value(CurveKind kind, const PPSMSetup& setup, const FisherReport& report) {
    switch (kind) {
        case CurveKind::shift:
            return pointer_shift(setup);
        case CurveKind::sensitivity:
            return sensitivity(setup);
        case CurveKind::cfi:
            return report.cfi;
        case CurveKind::psel:
            return report.p_d;
        case CurveKind::fd:
            return report.fd_postselected;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

RegionFlag flag_for(const PPSMSetup& setup, const Scenario& scenario) {
    try {
        const auto region = region_bounds(setup, scenario.region_fraction, scenario.which);
        return region.contains(setup.coupling().g) ? RegionFlag::inside : RegionFlag::outside;
    } catch (const EmptyRegion&) {
        return RegionFlag::outside;
    } catch (const DegeneratePointer&) {
        return RegionFlag::outside;
    }
}

double parse_field(const std::string& text, std::size_t line) {
    if (text == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    char* end = nullptr;
    const double x = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw ParseError("bad number '" + text + "'", line);
    }
    return x;
}

}  // namespace

std::string_view to_string(RegionFlag flag) {
    return flag == RegionFlag::inside ? "inside" : "outside";
}

bool CurveRow::defined() const { return !std::isnan(value); }

bool CurveRow::same_as(const CurveRow& other) const {
    return same_bits(g, other.g) && same_bits(phi, other.phi) && same_bits(value, other.value) &&
           same_bits(p_d, other.p_d) && region == other.region;
}

double grid_point(const Scenario& scenario, std::size_t i) {
    const double t = static_cast<double>(i) / static_cast<double>(scenario.g_steps - 1);
    return scenario.g_min + t * (scenario.g_max - scenario.g_min);
}

double resolved_modulation(const Scenario& scenario, double phi) {
    if (scenario.g_mod) {
        return *scenario.g_mod;
    }
    const double center = 0.5 * (scenario.g_min + scenario.g_max);
    return optimal_modulation(center, scenario.pointer(), phi, scenario.which);
}

CurveTable run_curve(const Scenario& scenario) {
    scenario.validate();
    CurveTable table;
    table.kind = scenario.kind;
    const auto pointer = scenario.pointer();

    auto emit = [&](double g, double phi, double g_mod) {
        const auto setup = PPSMSetup::optimal(phi, pointer, CouplingConfig{g, g_mod});
        CurveRow row{g, phi, std::numeric_limits<double>::quiet_NaN(),
                     post_selection_probability(setup), flag_for(setup, scenario)};
        if (row.p_d > tol::kPostSelectionFloor) {
            try {
                const auto report = fisher_report(setup);
                row.value = kind_value(scenario.kind, setup, report);
                ++table.hierarchy_checked;
                if (!report.hierarchy_holds(tol::kHierarchySlack)) {
                    ++table.hierarchy_violations;
                }
            } catch (const ZeroPostSelection&) {
                row.value = std::numeric_limits<double>::quiet_NaN();
            }
        }
        table.rows.push_back(row);
    };

    if (scenario.phi_track) {
        const double g_mod = scenario.g_mod.value_or(0.0);
        for (std::size_t i = 0; i < scenario.g_steps; ++i) {
            const double g = grid_point(scenario, i);
            emit(g, 2.0 * scenario.q0 * (g + g_mod), g_mod);
        }
        return table;
    }
    for (const double phi : scenario.phis) {
        const double g_mod = resolved_modulation(scenario, phi);
        for (std::size_t i = 0; i < scenario.g_steps; ++i) {
            emit(grid_point(scenario, i), phi, g_mod);
        }
    }
    return table;
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_curve_csv(const CurveTable& table, std::ostream& out) {
    out << kCurveHeader << '\n';
    for (const auto& r : table.rows) {
        out << format_number(r.g) << ',' << format_number(r.phi) << ',' << format_number(r.value)
            << ',' << format_number(r.p_d) << ',' << to_string(r.region) << '\n';
    }
}

CurveTable parse_curve_csv(std::istream& in, CurveKind kind) {
    CurveTable table;
    table.kind = kind;
    std::string line;
    std::size_t number = 1;
    if (!std::getline(in, line) || line != kCurveHeader) {
        throw ParseError("expected header '" + std::string(kCurveHeader) + "'", number);
    }
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 5) {
            throw ParseError("expected 5 fields", number);
        }
        CurveRow row;
        row.g = parse_field(fields[0], number);
        row.phi = parse_field(fields[1], number);
        row.value = parse_field(fields[2], number);
        row.p_d = parse_field(fields[3], number);
        if (fields[4] == "inside") {
            row.region = RegionFlag::inside;
        } else if (fields[4] == "outside") {
            row.region = RegionFlag::outside;
        } else {
            throw ParseError("bad region flag '" + fields[4] + "'", number);
        }
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace ppsm::figures
