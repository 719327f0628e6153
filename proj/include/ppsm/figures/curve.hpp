#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ppsm/figures/scenario.hpp"

namespace ppsm::figures {

enum class RegionFlag { inside, outside };

std::string_view to_string(RegionFlag flag);

struct CurveRow {
    double g = 0.0;
    double phi = 0.0;
    double value = 0.0;  ///< NaN when the post-selection probability vanishes
    double p_d = 0.0;
    RegionFlag region = RegionFlag::outside;

    bool defined() const;
    /// Bitwise-equal fields (NaN values compare equal to NaN).
    bool same_as(const CurveRow& other) const;
};

struct CurveTable {
    CurveKind kind = CurveKind::shift;
    std::vector<CurveRow> rows;

    /// Rows on which cfi <= F_d <= F^Q_max was checked, and how many failed.
    std::size_t hierarchy_checked = 0;
    std::size_t hierarchy_violations = 0;
};

/// Evaluates `scenario.kind` on the g grid for each phi (phi-major, g in grid
/// order). With phi_track, a single pass sets phi = 2 q0 g' per row.
///
/// Rows whose post-selection probability is at or below 1e-15 carry value
/// NaN. Every defined row also checks the information hierarchy with
/// relative slack 1e-6.
CurveTable run_curve(const Scenario& scenario);

/// g_M used for one phi: the explicit value, or for "auto" the modulation
/// that centers the information peak on the middle of the g range.
double resolved_modulation(const Scenario& scenario, double phi);

/// Grid point i of steps equally spaced points, endpoints included.
double grid_point(const Scenario& scenario, std::size_t i);

/// CSV with header g,phi,value,p_d,region_flag; numbers at 17 significant
/// digits, NaN written as `nan`, LF line endings.
void write_curve_csv(const CurveTable& table, std::ostream& out);
/// Inverse of write_curve_csv. The kind is not stored and is set to `kind`.
/// Throws ParseError with the offending line.
CurveTable parse_curve_csv(std::istream& in, CurveKind kind);

/// `%.17g` formatting with `nan` for NaN.
std::string format_number(double x);

}  // namespace ppsm::figures
