#pragma once

// Kernel functionals of the reduced similarity ODEs on a profile grid:
//   C(eta)   = int v N*(u)/L*(u) dv                 (exponent integral)
//   E(eta)   = exp(-2 a^2 C(eta))                   (integrating factor)
//   chi(eta) = int E(v)/(v^2 L*(u(v))) dv           (homogeneous response)
//   S(eta)   = int K*(u(s))/(s^2 E(s)) ds           (source accumulation)
//   phi(eta) = k^2/(16 a^2 pi^2) int E/(v^2 L*) S dv (source response)
// Lower limits are alpha0 (liquid) or xi (solid). The solid tables carry the
// tail-completed chi(inf) and phi(inf). S is stored in the overflow-safe
// scaled form W = E*S, accumulated with exponent differences so 1/E is never
// formed from a stored (possibly tiny) E value.

#include <vector>

#include "arcmelt/coefficients.hpp"
#include "arcmelt/profile.hpp"
#include "arcmelt/special.hpp"

namespace arcmelt::kernels {

using coeffs::CoefficientBounds;
using coeffs::CoefficientSet;
using coeffs::Phase;
using profile::SimilarityProfile;
using special::QuadratureSpec;

struct KernelTable {
    Phase phase = Phase::liquid;
    std::vector<double> nodes;
    std::vector<double> C;   // exponent integral, C[0] = 0
    std::vector<double> E;   // E[0] = 1, positive, nonincreasing
    std::vector<double> chi; // chi[0] = 0, nondecreasing
    std::vector<double> W;   // E*S; W[0] = 0; zero throughout when k = 0
    std::vector<double> phi; // phi[0] = 0; includes the k^2 prefactor
    double chi_inf = 0;      // solid only: chi completed past eta_max
    double phi_inf = 0;      // solid only
    double a = 0, k = 0;

    double source_at_upper() const; // S(eta_last) = W/E at the last node
};

// Builds every kernel on the profile's grid. For solid profiles the
// semi-infinite tails are integrated with the far-field coefficient values
// frozen at the last node.
KernelTable build_tables(const SimilarityProfile& u, const CoefficientSet& set, double a,
                         double k, const QuadratureSpec& spec, bool with_tail);

struct SourceIntegrals {
    double I_quotient = 0; // int K*/(s^2 L*) ds over the liquid domain
    double I_flux = 0;     // int K*/(s^2 E) ds; the flux-exact variant
    double Q_quotient = 0; // alpha0^2 P* + k^2 I_quotient /(16 a^2 pi^2)
    double Q_flux = 0;     // alpha0^2 P* + k^2 I_flux /(16 a^2 pi^2)
};

// Both variants of the liquid source integral. Q_flux reproduces the exact
// melt-front flux carried by the converged liquid profile (it is the value
// the Stefan balance needs); Q_quotient is the coefficient-quotient variant
// whose analytic envelopes back the existence window. Both are reported.
SourceIntegrals source_integrals(const KernelTable& liquid, const SimilarityProfile& u,
                                 const CoefficientSet& set, double alpha0_sq_pstar,
                                 const QuadratureSpec& spec);

// ---- analytic envelopes of the kernels (pointwise, from the bounds) ----

double e_envelope_lo(double eta, double lower, const CoefficientBounds& b, double a);
double e_envelope_hi(double eta, double lower, const CoefficientBounds& b, double a);
double chi1_envelope_hi(double eta, double alpha0, const CoefficientBounds& b, double a);
double chi2_envelope_lo(double eta, double xi, const CoefficientBounds& b, double a);
double chi2_envelope_hi(double eta, double xi, const CoefficientBounds& b, double a);
double chi2_envelope_elementary(double eta, double xi, const CoefficientBounds& b);
double phi2_envelope_hi(double xi, const CoefficientBounds& b, double a, double k);

// ---- Lipschitz envelopes: |F(u) - F(u*)| <= lip_F * sup|u - u*| ----

double lip_e1(double eta, double alpha0, const CoefficientBounds& b, double a);
double lip_chi1(double eta, double alpha0, const CoefficientBounds& b, double a);
double lip_e2(double eta, double xi, const CoefficientBounds& b, double a);
double lip_chi2(double eta, double xi, const CoefficientBounds& b, double a);
double lip_phi1(double eta, double alpha0, const CoefficientBounds& b, double a, double k);
double lip_phi2(double xi, const CoefficientBounds& b, double a, double k);

} // namespace arcmelt::kernels
