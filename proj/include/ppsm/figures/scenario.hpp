#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppsm/core/states.hpp"
#include "ppsm/errors.hpp"

namespace ppsm::figures {

/// Malformed configuration text. line() is 0 for command-line input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Well-formed configuration that violates a scenario invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

enum class CurveKind { shift, sensitivity, cfi, psel, fd };

std::string_view to_string(CurveKind kind);
CurveKind parse_curve_kind(const std::string& text);

struct Scenario {
    std::string preset;  ///< empty when no preset was applied
    PointerCase which = PointerCase::balanced;
    double q0 = 0.0;
    double sigma = 1.0;
    std::string units = "arb";
    std::vector<double> phis{0.05, 0.2, 0.5, 1.0};
    double g_min = -1.0;
    double g_max = 1.0;
    std::size_t g_steps = 400;
    std::optional<double> g_mod = 0.0;  ///< nullopt means "auto"
    std::uint64_t seed = 1;
    std::uint64_t n_total = 100000;
    std::size_t replications = 1;
    CurveKind kind = CurveKind::shift;
    /// Set phi = 2 q0 g' on every grid row instead of using `phis`.
    bool phi_track = false;
    double g_true = 0.0;
    double phi_final = 0.05;
    double region_fraction = 0.1;

    GaussianPointer pointer() const { return {q0, sigma}; }
    /// Throws ValidationError naming the first violated invariant.
    void validate() const;
};

/// Preset names in a stable order.
std::vector<std::string> preset_names();
/// Throws ParseError for an unknown name.
Scenario preset(const std::string& name);

/// Ordered `key = value` assignments with the line each came from (0 for
/// command-line flags).
struct Assignment {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

/// Reads `key = value` lines; `#` starts a comment, blank lines are skipped.
/// Throws ParseError on a line without `=`, an empty key, or an unknown key.
std::vector<Assignment> parse_config_text(const std::string& text);
std::vector<Assignment> parse_config_file(const std::filesystem::path& path);

/// Builds a scenario from defaults, then the preset (taken from `flags` if
/// given there, otherwise from `file`), then the remaining file keys, then
/// the remaining flags. Validates the result.
Scenario resolve_scenario(const std::vector<Assignment>& file, const std::vector<Assignment>& flags);

/// Applies one assignment. Throws ParseError for an unknown key or a value
/// that does not parse.
void apply(Scenario& scenario, const Assignment& assignment);

/// Recognized configuration keys.
const std::vector<std::string>& config_keys();

}  // namespace ppsm::figures
