#pragma once

// Pipeline driver behind the CLI: hypothesis checks, windows and existence
// flags, the xi* solve, residual suites, report rendering, profile export.

#include <filesystem>
#include <string>
#include <vector>

#include "arcmelt/config.hpp"
#include "arcmelt/reconstruct.hpp"
#include "arcmelt/stefan.hpp"

namespace arcmelt::solver {

using config::RunConfig;

struct ContractionCheck {
    double max_ratio = 0;   // measured Picard ratio at xi*
    double epsilon = 0;     // bound eps(xi*)
    bool inside_window = false;
    bool certified() const { return !inside_window || max_ratio <= epsilon * (1 + 1e-9); }
};

struct SolveReport {
    // check stage
    bool ignition = false;
    double arc_power = 0;
    double ignition_threshold = 0;
    vapor::VaporFront front;
    double p_star = 0;
    double stefan_m = 0;
    coeffs::CoefficientBounds bounds;
    coeffs::HypothesisReport hypotheses;
    stefan::Window window;
    stefan::ExistenceFlags flags;
    double epsilon2_at_alpha0 = 0;
    bool checks_pass = false;

    // solve stage
    bool solved = false;
    bool forced = false;
    stefan::XiSolveResult xi;
    reconstruct::PhysicalSolution solution;
    reconstruct::BcResiduals bc;
    reconstruct::OdeResidual ode_liquid, ode_solid;
    ContractionCheck contraction_liquid, contraction_solid;
    coeffs::HypothesisReport iterate_hypotheses; // source-decay checks at xi*
    int iterate_violations = 0;                  // across all solid iterates

    double seconds = 0; // excluded from the comparable report section
    std::vector<std::string> notes;
};

// Hypothesis and window computations only; no xi solve.
SolveReport run_check(const RunConfig& cfg);

// Full pipeline. When `force` is set, window/existence failures are recorded
// in the report instead of aborting the solve.
SolveReport run_solve(const RunConfig& cfg, bool force = false);

struct OracleReport {
    double xi_star = 0;
    double sup_liquid = 0;
    double sup_solid = 0;
    double threshold = 1e-6;
    bool pass() const { return sup_liquid <= threshold && sup_solid <= threshold; }
    double seconds = 0;
};

// Solves with both methods at the same xi* and reports sup-norm differences.
OracleReport run_oracle(const RunConfig& cfg);

struct SweepRow {
    double value = 0;
    bool ok = false;
    double alpha0 = 0;
    double xi_star = 0;
    double z_residual = 0;
    double max_bc_residual = 0;
    std::string error;
};

struct SweepResult {
    std::string parameter;
    std::vector<SweepRow> rows;
};

// Repeats run_solve with the named physical parameter swept over
// [lo, hi] in `count` equal steps; per-row failures are recorded.
SweepResult run_sweep(const RunConfig& cfg, const std::string& parameter, double lo,
                      double hi, int count);

// Rendering. The machine section is deterministic; timing goes to a separate
// trailing section excluded from byte-for-byte comparisons.
std::string render_report(const SolveReport& rep);
std::string render_sweep(const SweepResult& sweep);
std::string render_oracle(const OracleReport& rep);

// CSV with header "eta,u,theta_at_t1,phase" at the configured snapshot time.
void write_profile_csv(const std::filesystem::path& path,
                       const profile::SimilarityProfile& u, double theta_m,
                       double snapshot_scale_unused = 0);

// Writes report.txt, liquid_profile.csv, solid_profile.csv into out_dir.
void export_solution(const std::filesystem::path& out_dir, const SolveReport& rep,
                     const RunConfig& cfg);

} // namespace arcmelt::solver
