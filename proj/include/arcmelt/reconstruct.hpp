#pragma once

// Maps similarity profiles back to physical fields theta(r, t) and the moving
// fronts, checks the reduced-ODE and boundary-condition residuals by finite
// differences, and provides the independent shooting-method solver used to
// cross-validate the Picard path.

#include "arcmelt/kernels.hpp"
#include "arcmelt/profile.hpp"
#include "arcmelt/vapor.hpp"

namespace arcmelt::reconstruct {

using coeffs::CoefficientSet;
using coeffs::Phase;
using profile::SimilarityProfile;
using vapor::PhysicalParams;
using vapor::VaporFront;

struct PhysicalSolution {
    SimilarityProfile u1;
    SimilarityProfile u2;
    double xi_star = 0;
    double alpha0 = 0;
    PhysicalParams params;

    double alpha_of_t(double t) const; // vapor front 2 a alpha0 sqrt(t)
    double beta_of_t(double t) const;  // melt front 2 a xi* sqrt(t)
};

// theta at (r, t): theta_m (u(eta) + 1) with eta = r/(2 a sqrt(t)); u = u1 on
// [alpha0, xi*], u2 beyond, -1 past the solid grid. Throws ModelError inside
// the vapor zone (use vapor::vapor_temperature there).
double temperature(const PhysicalSolution& sol, double r, double t);

struct OdeResidual {
    double max_normalized = 0; // max |residual| / max term magnitude
    double at_eta = 0;
};

// Residual of [L* eta^2 u']' + 2 a^2 eta^3 N* u' + k^2 K*/(16 a^2 pi^2 eta^2)
// on the profile's own grid, with fourth-order centered differences (one
// interval is trimmed at each end where the stencil does not fit).
OdeResidual ode_residual(const SimilarityProfile& u, const CoefficientSet& set, double a,
                         double k);

struct BcResiduals {
    double flux_inner = 0;   // |L1* u1'(alpha0) + P*| / P*
    double u1_at_xi = 0;     // |u1(xi)|
    double u2_at_xi = 0;     // |u2(xi)|
    double stefan_jump = 0;  // |L1* u1'(xi) - L2* u2'(xi) + M xi| / (M xi)
    double far_field = 0;    // |u2(eta_max) + 1|
    double max() const;
};

BcResiduals bc_residuals(const PhysicalSolution& sol, const CoefficientSet& set,
                         const VaporFront& front);

// Derivative of grid values at an endpoint by one-sided 4th-order differences.
double endpoint_derivative(const std::vector<double>& nodes, const std::vector<double>& values,
                           bool at_front);

struct ShootingSettings {
    int steps = 4096;      // fixed RK4 steps across the domain
    double tol = 1e-10;    // secant tolerance on the endpoint value
    int max_secant = 60;
};

// Direct two-point boundary-value solves of the reduced ODEs written as the
// first-order system (u, nu = L* eta^2 u'):
//   liquid: nu(alpha0) = -alpha0^2 P*, shoot on u(alpha0) to hit u(xi) = 0
//   solid:  u(xi) = 0, shoot on nu(xi) to hit u(eta_max) = -1
// Returns profiles sampled on the requested grids.
SimilarityProfile shoot_liquid(const CoefficientSet& set, const PhysicalParams& p,
                               const VaporFront& front, const std::vector<double>& grid,
                               const ShootingSettings& st = {});

SimilarityProfile shoot_solid(const CoefficientSet& set, const PhysicalParams& p,
                              const std::vector<double>& grid,
                              const ShootingSettings& st = {});

} // namespace arcmelt::reconstruct
