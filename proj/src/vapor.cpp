#include "arcmelt/vapor.hpp"

#include <cmath>

namespace arcmelt::vapor {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void PhysicalParams::validate() const {
    auto pos = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v))
            throw ConfigError(std::string("physical params: ") + name + " must be positive");
    };
    pos(P, "P");
    pos(a, "a");
    pos(lambda_b, "lambda_b");
    pos(L_b, "L_b");
    pos(gamma_b, "gamma_b");
    pos(theta_ion, "theta_ion");
    pos(theta_b, "theta_b");
    pos(theta_m, "theta_m");
    pos(l_m, "l_m");
    pos(gamma_m, "gamma_m");
    if (k < 0 || !std::isfinite(k)) throw ConfigError("physical params: k must be >= 0");
    if (!(theta_ion > theta_b && theta_b > theta_m))
        throw ConfigError("physical params: need theta_ion > theta_b > theta_m > 0");
}

double PhysicalParams::ramp_coefficient(double I0, double omega, double t_a) {
    if (!(t_a > 0)) throw ConfigError("ramp_coefficient: t_a must be positive");
    return I0 * std::sin(omega * t_a) / std::sqrt(t_a);
}

double ignition_threshold(const PhysicalParams& p) {
    return 2.0 * p.a * std::sqrt(2.0 * kPi) *
           std::sqrt(p.lambda_b * p.L_b * p.gamma_b * (p.theta_ion - p.theta_b));
}

bool check_ignition(const PhysicalParams& p) { return p.P >= ignition_threshold(p); }

VaporFront solve_front(const PhysicalParams& p) {
    if (!check_ignition(p))
        throw ModelError("vapor front: arc power below the ignition threshold");
    VaporFront f;
    const double denom = 2.0 * p.a * p.a * p.L_b * p.gamma_b;
    f.A = p.P / (denom * std::sqrt(kPi));
    f.B = p.lambda_b * (p.theta_ion - p.theta_b) / denom;
    f.discriminant = f.A * f.A - 4.0 * f.B;
    // larger root; (A + sqrt(disc))/2 is the cancellation-free form of
    // 2B/(A - sqrt(disc))
    f.alpha0 = 0.5 * (f.A + std::sqrt(std::max(f.discriminant, 0.0)));
    return f;
}

double front_position(double t, const VaporFront& f, const PhysicalParams& p) {
    return 2.0 * p.a * f.alpha0 * std::sqrt(t);
}

double vapor_temperature(double r, double t, const VaporFront& f, const PhysicalParams& p) {
    if (!(t > 0)) throw ModelError("vapor_temperature: t must be positive");
    const double alpha = front_position(t, f, p);
    if (r < 0 || r > alpha)
        throw ModelError("vapor_temperature: r outside the vapor zone [0, alpha(t)]");
    return p.theta_ion - (p.theta_ion - p.theta_b) * r / alpha;
}

double flux_residual(double t, const VaporFront& f, const PhysicalParams& p) {
    const double alpha = front_position(t, f, p);
    const double alpha_dot = p.a * f.alpha0 / std::sqrt(t);
    return p.P / (2.0 * p.a * std::sqrt(kPi * t)) -
           (p.lambda_b * (p.theta_ion - p.theta_b) / alpha + p.L_b * p.gamma_b * alpha_dot);
}

double p_star(const VaporFront& f, const PhysicalParams& p) {
    return p.P * std::exp(-f.alpha0 * f.alpha0) / (std::sqrt(kPi) * p.theta_m);
}

double stefan_coefficient(const PhysicalParams& p) {
    return 2.0 * p.a * p.a * p.l_m * p.gamma_m / p.theta_m;
}

} // namespace arcmelt::vapor
