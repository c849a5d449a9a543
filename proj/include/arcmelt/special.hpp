#pragma once

// Special functions and the adaptive quadrature engine shared by all kernel
// computations. Everything here is pure and thread-safe.

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "arcmelt/errors.hpp"

namespace arcmelt::special {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Gauss error function. Absolute accuracy <= 1e-15, odd, |erf| <= 1.
double erf(double x);

// Scaled complementary error function exp(x^2) erfc(x), x >= 0.
// Never forms exp(x^2) on its own, so it stays finite for all x.
double erfcx(double x);

// mills_g(x) = sqrt(pi) x exp(x^2)(1 - erf(x)) for x >= 0.
// Strictly increasing, 0 <= mills_g(x) < 1, asymptote 1 as x -> inf.
double mills_g(double x);

// 1 - mills_g(x) without cancellation for large x (series beyond x = 12).
double one_minus_mills_g(double x);

// h(eta, N, L, z) =   sqrt(pi) erf(a sqrt(N/L) z) - sqrt(pi) erf(a sqrt(N/L) eta)
//                   + (sqrt(L)/(a sqrt(N) z)) exp(-a^2 (N/L) z^2)
//                   - (sqrt(L)/(a sqrt(N) eta)) exp(-a^2 (N/L) eta^2)
// for eta >= z > 0; eta may be +infinity (erf term -> 1, 1/eta term -> 0).
double h_envelope(double eta, double N, double L, double z, double a);

// exp(+a^2 (N/L) z^2) * h_envelope(eta, N, L, z, a), evaluated without forming
// either exponential factor alone. Safe for large a sqrt(N/L) z.
double h_envelope_scaled(double eta, double N, double L, double z, double a);

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_depth = 50;
};

// Thrown when adaptive refinement hits max_depth; carries the partial result.
class QuadratureError : public SolverError {
public:
    QuadratureError(const std::string& what, double partial, double error_estimate)
        : SolverError(what), partial_result(partial), error_estimate(error_estimate) {}
    double partial_result;
    double error_estimate;
};

// Adaptive Simpson integral of f over (lo, hi) with Richardson extrapolation.
// hi may be +infinity; the tail is mapped through v = lo + s/(1-s), s in [0,1).
// Estimated error <= max(rel_tol*|result|, abs_tol).
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec = {});

// Running integral F(nodes[i]) = int_{nodes[0]}^{nodes[i]} f, accumulated
// panel by panel so that F[i+1] - F[i] is exactly the panel integral.
std::vector<double> cumulative(const std::function<double(double)>& f,
                               std::span<const double> nodes,
                               const QuadratureSpec& spec = {});

} // namespace arcmelt::special
