#pragma once

// Similarity profiles: u_1 on [alpha0, xi] (liquid) or u_2 on [xi, eta_max]
// (solid), as grid values with a monotone cubic interpolation contract.

#include <vector>

#include "arcmelt/coefficients.hpp"
#include "arcmelt/interp.hpp"

namespace arcmelt::profile {

using coeffs::Phase;

struct SimilarityProfile {
    Phase phase = Phase::liquid;
    std::vector<double> nodes;  // strictly ascending; endpoints = domain
    std::vector<double> values; // u at nodes

    // Throws ModelError when the melting-front endpoint value (u=0 at xi)
    // is violated beyond tol or the grid is malformed.
    void validate(double tol = 1e-9) const;

    interp::MonotoneCubic interpolant() const { return {nodes, values}; }

    double lower() const { return nodes.front(); }
    double upper() const { return nodes.back(); }

    double sup_distance(const SimilarityProfile& other) const;
};

// Uniform grid helper.
std::vector<double> linspace(double lo, double hi, int n);

// Truncation point of the solid domain: E_2's slowest-decay envelope reaches
// `decay` at eta_max, i.e. exp(-a^2 (N_m/L_M)(eta_max^2 - xi^2)) = decay.
double solid_eta_max(double xi, const coeffs::CoefficientBounds& b, double a,
                     double decay = 1e-16);

// Default initial iterates: u1 = 0, u2(eta) = -(1 - xi/eta).
SimilarityProfile initial_liquid(double alpha0, double xi, int grid_size);
SimilarityProfile initial_solid(double xi, double eta_max, int grid_size);

} // namespace arcmelt::profile
