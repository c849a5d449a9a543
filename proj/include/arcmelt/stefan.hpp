#pragma once

// The melt-front condition. For each trial xi the two integral equations are
// solved by Picard iteration and the scalar balance
//   Z(xi) = (-1 + phi2(inf))/chi2(inf) + Q(xi) E1(xi)  =  M xi^3
// is evaluated; solve_xi brackets and polishes the smallest root inside the
// certified window (alpha0, xi_hat).

#include <optional>
#include <vector>

#include "arcmelt/fixed_point.hpp"

namespace arcmelt::stefan {

using coeffs::CoefficientBounds;
using coeffs::CoefficientSet;
using fixedpoint::PicardResult;
using fixedpoint::PicardSettings;
using profile::SimilarityProfile;
using special::QuadratureSpec;
using vapor::PhysicalParams;
using vapor::VaporFront;

struct Context {
    const CoefficientSet& set;
    PhysicalParams params;
    VaporFront front;
    CoefficientBounds bounds;
    PicardSettings picard;
    QuadratureSpec quad;
    double eta_decay = 1e-16; // solid-domain truncation target
    fixedpoint::IterateObserver solid_observer = nullptr;
};

struct ZBoundsPair {
    double z1 = 0;         // upper envelope
    double z2 = 0;         // lower envelope (derivation form)
    double z2_display = 0; // literal display variant, reported for comparison
};

// Envelopes of Z, independent of the unknowns. xi_hat enters z1's Mills-ratio
// factor. Throws ModelError when the denominator 1 - G(..) degenerates.
ZBoundsPair z_bounds(double xi, double xi_hat, const Context& ctx);

struct ZEvaluation {
    double xi = 0;
    double z = 0;          // flux-consistent value used for the root solve
    double z_quotient = 0; // variant with the coefficient-quotient source term
    ZBoundsPair bounds;
    bool sandwich_ok = true;
    double e1_xi = 0;
    double chi2_inf = 0;
    double phi2_inf = 0;
    kernels::SourceIntegrals source;
    PicardResult liquid;
    PicardResult solid;
};

ZEvaluation evaluate_z(const Context& ctx, double xi, double xi_hat,
                       std::optional<double> picard_tol_override = std::nullopt);

struct Window {
    double alpha0 = 0;
    double xi_bar1 = 0;       // may be +inf
    double xi_bar2 = 0;       // may be +inf; alpha0 when the condition fails
    double xi_hat = 0;        // min(xi_bar1, xi_bar2), may be +inf
    double xi_cap = 0;        // crossing of z1(xi) = M xi^3
    double xi_hat_effective = 0; // min(xi_hat, xi_cap): scan upper end
    bool solid_condition = true; // eps2(alpha0) < 1
};

Window compute_window(const Context& ctx);

struct ExistenceFlags {
    bool upper_bound_ok = false; // Z1(xi_hat_eff) <= M xi_hat_eff^3
    bool lower_bound_ok = false; // Z2(alpha0) >= M alpha0^3
    double z1_at_hat = 0, m_xi3_at_hat = 0;
    double z2_at_alpha0 = 0, m_alpha03 = 0;
};

ExistenceFlags check_existence_window(const Context& ctx, const Window& w);

struct XiSolveResult {
    double xi_star = 0;
    double z_residual = 0; // |Z(xi*) - M xi*^3|
    std::pair<double, double> bracket{0, 0};
    int iterations = 0;
    Window window;
    ExistenceFlags flags;
    std::vector<std::pair<double, double>> scan; // (xi, Z - M xi^3)
    std::vector<std::pair<double, double>> all_brackets;
    int sandwich_violations = 0;
    ZEvaluation at_root; // full-tolerance evaluation at xi*
};

// Scans the window (coarse Picard tolerance), brackets every sign change of
// F = Z - M xi^3, then bisects the smallest bracket and polishes at full
// tolerance until |F| <= root_tol * max(1, M xi^3).
XiSolveResult solve_xi(const Context& ctx, double root_tol = 1e-9, int scan_points = 32);

} // namespace arcmelt::stefan
