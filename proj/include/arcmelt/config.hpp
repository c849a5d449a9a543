#pragma once

// Line-oriented config files: [section] headers, key = value pairs, '#'
// comments. Coefficient families live in [coefficients.phaseN.NAME] sections
// as kind + params (or repeated "point = theta, value" lines for tables).

#include <filesystem>
#include <optional>
#include <string>

#include "arcmelt/coefficients.hpp"
#include "arcmelt/fixed_point.hpp"
#include "arcmelt/vapor.hpp"

namespace arcmelt::config {

struct BoundsOverrides {
    std::optional<double> L_m, L_M, N_m, N_M, K_m, K_M;
    std::optional<double> Ntilde1, Ntilde2, Ltilde1, Ltilde2, Ktilde1, Ktilde2;
    bool any() const;
    void apply(coeffs::CoefficientBounds& b) const;
};

struct SolverSettings {
    fixedpoint::PicardSettings picard;
    special::QuadratureSpec quad;
    double root_tol = 1e-9;
    int scan_points = 32;
    double snapshot_time = 1.0; // t used for the theta column of profile CSVs
    double eta_decay = 1e-16;   // solid-domain truncation target
    int residual_refine = 4;    // grid refinement for the residual checks
};

struct RunConfig {
    vapor::PhysicalParams params;
    coeffs::CoefficientSet coefficients;
    coeffs::BoundsEstimationSettings bounds_est;
    BoundsOverrides bounds_overrides;
    SolverSettings solver;

    void validate() const; // throws ConfigError with a field path

    // estimate_bounds + overrides, validated
    coeffs::CoefficientBounds resolve_bounds() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

// Round-trips through parse_config_text; used by the sweep command and tests.
std::string serialize_config(const RunConfig& cfg);

} // namespace arcmelt::config
