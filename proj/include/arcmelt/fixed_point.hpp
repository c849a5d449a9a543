#pragma once

// Picard operators for the two integral equations, the fixed-point iteration,
// and the contraction-window functions eps1/eps2 with their unit roots.
//
//   liquid: u1 -> alpha0^2 P* (chi1(xi) - chi1(eta)) + phi1(xi) - phi1(eta)
//   solid:  u2 -> (-1 + phi2(inf)) chi2(eta)/chi2(inf) - phi2(eta)

#include <functional>
#include <vector>

#include "arcmelt/kernels.hpp"
#include "arcmelt/profile.hpp"
#include "arcmelt/vapor.hpp"

namespace arcmelt::fixedpoint {

using coeffs::CoefficientBounds;
using coeffs::CoefficientSet;
using kernels::KernelTable;
using profile::SimilarityProfile;
using special::QuadratureSpec;
using vapor::PhysicalParams;
using vapor::VaporFront;

struct PicardSettings {
    double tol = 1e-10;  // sup-norm stopping tolerance
    int max_iter = 200;
    int grid_size = 257; // nodes per domain

    void validate() const;
};

struct PicardResult {
    SimilarityProfile profile;
    int iterations = 0;
    double final_update_norm = 0;
    std::vector<double> contraction_ratios; // ||d_{n+1}||/||d_n||
};

// One application of each operator, mapping a kernel table back to a profile.
SimilarityProfile apply_liquid(const KernelTable& t, double alpha0_sq_pstar);
SimilarityProfile apply_solid(const KernelTable& t);

// Called after each iterate with (iteration, previous, next); used by the
// solve pipeline to verify the per-iterate source-decay hypotheses.
using IterateObserver = std::function<void(int, const SimilarityProfile&,
                                           const SimilarityProfile&)>;

PicardResult picard_liquid(const SimilarityProfile& init, const CoefficientSet& set,
                           double a, double k, double alpha0_sq_pstar,
                           const PicardSettings& ps, const QuadratureSpec& spec,
                           const IterateObserver& observer = nullptr);

PicardResult picard_solid(const SimilarityProfile& init, const CoefficientSet& set, double a,
                          double k, const PicardSettings& ps, const QuadratureSpec& spec,
                          const IterateObserver& observer = nullptr);

// Contraction bound for the liquid operator,
//   eps1(z) = 2 alpha0^2 P* lip_chi1(z) + 2 lip_phi1(z),
// increasing from 0 at z = alpha0.
double epsilon1(double z, const VaporFront& front, const CoefficientBounds& b,
                const PhysicalParams& p);

// Contraction bound for the solid operator; increasing in z, finite only for
// R > a^2 N_M/L_m when the solid source constants are nonzero.
double epsilon2(double z, const VaporFront& front, const CoefficientBounds& b,
                const PhysicalParams& p);

// eps2(alpha0) < 1: the solid window opens at all.
bool check_solid_window_condition(const VaporFront& front, const CoefficientBounds& b,
                                  const PhysicalParams& p);

// Unique roots of eps = 1 (bisection on a geometrically grown bracket).
// +infinity when eps stays below 1 forever (constant coefficients).
double xi_bar1(const VaporFront& front, const CoefficientBounds& b, const PhysicalParams& p);
double xi_bar2(const VaporFront& front, const CoefficientBounds& b, const PhysicalParams& p);

} // namespace arcmelt::fixedpoint
