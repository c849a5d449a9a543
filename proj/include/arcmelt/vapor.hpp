#pragma once

// Vapor-zone model: ignition condition, the front coefficient alpha0 from its
// quadratic, the linear vapor temperature profile, and the flux-balance
// residual used to verify the constructed root.

#include <optional>

#include "arcmelt/errors.hpp"

namespace arcmelt::vapor {

struct PhysicalParams {
    double P = 0;         // arc power
    double a = 0;         // diffusivity-like scale; appears as a and a^2
    double lambda_b = 0;  // vapor-boundary conductivity
    double L_b = 0;       // latent boiling heat
    double gamma_b = 0;   // vapor reference density
    double theta_ion = 0; // ionization temperature
    double theta_b = 0;   // boiling temperature
    double theta_m = 0;   // melting temperature
    double l_m = 0;       // latent melting heat
    double gamma_m = 0;   // reference density at melting
    double k = 0;         // current ramp coefficient, I(t) ~ k sqrt(t)

    void validate() const; // throws ConfigError on violated invariants

    // k from a sinusoidal current I0 sin(omega t) sampled at arcing time t_a
    static double ramp_coefficient(double I0, double omega, double t_a);
};

struct VaporFront {
    double alpha0 = 0;
    double A = 0;
    double B = 0;
    double discriminant = 0;
};

// Arc power reaches the boiling threshold:
//   P >= 2 a sqrt(2 pi) sqrt(lambda_b L_b gamma_b (theta_ion - theta_b))
bool check_ignition(const PhysicalParams& p);
double ignition_threshold(const PhysicalParams& p);

// Physical root of alpha0^2 - A alpha0 + B = 0 (the larger one, which grows
// with P). Throws ModelError when the ignition condition fails.
VaporFront solve_front(const PhysicalParams& p);

double front_position(double t, const VaporFront& f, const PhysicalParams& p); // alpha(t)

// theta_ion at r=0 falling linearly to theta_b at r = alpha(t)
double vapor_temperature(double r, double t, const VaporFront& f, const PhysicalParams& p);

// P/(2a sqrt(pi t)) - [lambda_b (theta_ion-theta_b)/alpha(t) + L_b gamma_b alpha'(t)];
// identically zero when alpha0 is a root of the quadratic
double flux_residual(double t, const VaporFront& f, const PhysicalParams& p);

// P* = P exp(-alpha0^2) / (sqrt(pi) theta_m)
double p_star(const VaporFront& f, const PhysicalParams& p);

// M = 2 a^2 l_m gamma_m / theta_m (melt-front latent coefficient)
double stefan_coefficient(const PhysicalParams& p);

} // namespace arcmelt::vapor
