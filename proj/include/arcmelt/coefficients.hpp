#pragma once

// Temperature-dependent material coefficients, their dimensionless starred
// forms, and the a-priori constants (bounds + Lipschitz moduli) the
// contraction machinery needs. All types are immutable after construction
// and all operations are pure.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arcmelt/errors.hpp"

namespace arcmelt::coeffs {

enum class FamilyKind { constant, affine, exponential, tabulated };

// One material property as a function of temperature:
//   constant    c0
//   affine      c0 + c1*theta
//   exponential c0 * exp(c1*theta)
//   tabulated   piecewise-linear through strictly increasing (theta, value)
class CoefficientFamily {
public:
    static CoefficientFamily constant(double value);
    static CoefficientFamily affine(double intercept, double slope);
    static CoefficientFamily exponential(double scale, double rate);
    static CoefficientFamily tabulated(std::vector<std::pair<double, double>> points);

    double operator()(double theta) const;
    FamilyKind kind() const { return kind_; }
    const std::vector<double>& parameters() const { return params_; }
    const std::vector<std::pair<double, double>>& points() const { return points_; }

    // true when every value over [theta_lo, theta_hi] is strictly positive
    bool positive_on(double theta_lo, double theta_hi, int samples = 257) const;

private:
    CoefficientFamily(FamilyKind kind, std::vector<double> params,
                      std::vector<std::pair<double, double>> points);
    FamilyKind kind_;
    std::vector<double> params_;
    std::vector<std::pair<double, double>> points_;
};

enum class Phase { liquid = 1, solid = 2 };

struct StarredCoeffs {
    double N; // c * gamma at theta_m(u+1)
    double L; // lambda at theta_m(u+1)
    double K; // rho at theta_m(u+1), divided by theta_m
};

// The eight families plus the melting temperature used by the u -> theta map.
struct CoefficientSet {
    CoefficientFamily c1, gamma1, lambda1, rho1;
    CoefficientFamily c2, gamma2, lambda2, rho2;
    double theta_m = 1.0;

    StarredCoeffs starred(Phase phase, double u) const;
    double N_star(Phase phase, double u) const;
    double L_star(Phase phase, double u) const;
    double K_star(Phase phase, double u) const;
};

struct CoefficientBounds {
    double L_m = 0, L_M = 0;
    double N_m = 0, N_M = 0;
    double K_m = 0, K_M = 0;
    double R = 0;
    double Ntilde1 = 0, Ntilde2 = 0;
    double Ltilde1 = 0, Ltilde2 = 0;
    double Ktilde1 = 0, Ktilde2 = 0;

    void validate(double a) const; // throws ConfigError on violated invariants
};

struct BoundsEstimationSettings {
    double u_min = -1.0;
    double u_max = 3.0;
    int samples = 4097;
    double safety_factor = 1.1;        // inflates sampled difference quotients
    std::optional<double> R_override;  // default R = a^2 N_M / L_m
};

// Empirical sup/inf of the starred coefficients over u in [u_min, u_max] and
// Lipschitz constants from sampled difference quotients (inflated by the
// safety factor). K_m comes from the liquid phase; K_M covers both phases so
// one constant serves both source hypotheses.
CoefficientBounds estimate_bounds(const CoefficientSet& set,
                                  const BoundsEstimationSettings& settings, double a);

struct HypothesisCheck {
    std::string tag;        // inequality identifier used in reports
    bool pass = true;
    bool evaluated = true;  // false when the check needs a solid iterate
    double worst_point = 0; // u (or eta for the decay checks) of worst margin
    double lhs = 0, rhs = 0;
    std::string note;
};

struct HypothesisReport {
    std::vector<HypothesisCheck> checks;
    bool all_pass() const;
    const HypothesisCheck* find(const std::string& tag) const;
};

// Verifies the boundedness and Lipschitz hypotheses by dense sampling over
// [u_min, u_max]. The two source-decay conditions couple the coefficients to
// the solid unknown; they are checked pointwise when a solid iterate is
// supplied (eta-grid + values) and marked unevaluated otherwise.
HypothesisReport check_hypotheses(const CoefficientBounds& bounds, const CoefficientSet& set,
                                  const BoundsEstimationSettings& settings, double a,
                                  const std::vector<double>* solid_nodes = nullptr,
                                  const std::vector<double>* solid_values = nullptr);

} // namespace arcmelt::coeffs
