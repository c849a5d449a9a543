#include "arcmelt/reconstruct.hpp"

#include <cmath>

namespace arcmelt::reconstruct {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Derivative at x of the Lagrange polynomial through (t[i], v[i]), i < m.
double lagrange_derivative(const double* t, const double* v, int m, double x) {
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
        double denom = 1.0;
        for (int l = 0; l < m; ++l)
            if (l != k) denom *= t[k] - t[l];
        double num = 0.0;
        for (int j = 0; j < m; ++j) {
            if (j == k) continue;
            double prod = 1.0;
            for (int l = 0; l < m; ++l)
                if (l != k && l != j) prod *= x - t[l];
            num += prod;
        }
        acc += v[k] * num / denom;
    }
    return acc;
}

std::vector<double> grid_derivative4(const std::vector<double>& x,
                                     const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = i >= 2 ? i - 2 : 0;
        j = std::min(j, n - 5);
        d[i] = lagrange_derivative(&x[j], &y[j], 5, x[i]);
    }
    return d;
}

} // namespace

double PhysicalSolution::alpha_of_t(double t) const {
    return 2.0 * params.a * alpha0 * std::sqrt(t);
}

double PhysicalSolution::beta_of_t(double t) const {
    return 2.0 * params.a * xi_star * std::sqrt(t);
}

double temperature(const PhysicalSolution& sol, double r, double t) {
    if (!(t > 0)) throw ModelError("temperature: t must be positive");
    const double eta = r / (2.0 * sol.params.a * std::sqrt(t));
    if (eta < sol.alpha0 * (1.0 - 1e-12))
        throw ModelError("temperature: point inside the vapor zone; use vapor_temperature");
    const double theta_m = sol.params.theta_m;
    if (eta <= sol.xi_star) return theta_m * (sol.u1.interpolant()(eta) + 1.0);
    if (eta <= sol.u2.upper()) return theta_m * (sol.u2.interpolant()(eta) + 1.0);
    return 0.0; // far field: u2 -> -1
}

OdeResidual ode_residual(const SimilarityProfile& u, const CoefficientSet& set, double a,
                         double k) {
    const auto& x = u.nodes;
    const auto& y = u.values;
    const std::size_t n = x.size();
    if (n < 11) throw ModelError("ode_residual: grid too coarse for the stencils");

    const auto du = grid_derivative4(x, y);
    std::vector<double> G(n), term2(n), term3(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto st = set.starred(u.phase, y[i]);
        G[i] = st.L * x[i] * x[i] * du[i];
        term2[i] = 2.0 * a * a * x[i] * x[i] * x[i] * st.N * du[i];
        term3[i] = k == 0.0 ? 0.0
                            : k * k * st.K / (16.0 * a * a * kPi * kPi * x[i] * x[i]);
    }
    const auto dG = grid_derivative4(x, G);

    // scale: largest of the three term magnitudes anywhere on the grid
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        scale = std::max({scale, std::abs(dG[i]), std::abs(term2[i]), std::abs(term3[i])});
    if (scale == 0.0) scale = 1.0;

    // centered stencils only: skip 4 nodes at each end (du one-sided there)
    OdeResidual r;
    for (std::size_t i = 4; i + 4 < n; ++i) {
        const double res = std::abs(dG[i] + term2[i] + term3[i]) / scale;
        if (res > r.max_normalized) {
            r.max_normalized = res;
            r.at_eta = x[i];
        }
    }
    return r;
}

double endpoint_derivative(const std::vector<double>& nodes, const std::vector<double>& values,
                           bool at_front) {
    if (nodes.size() < 5) throw ModelError("endpoint_derivative: need >= 5 nodes");
    if (at_front) return lagrange_derivative(&nodes[0], &values[0], 5, nodes[0]);
    const std::size_t j = nodes.size() - 5;
    return lagrange_derivative(&nodes[j], &values[j], 5, nodes.back());
}

double BcResiduals::max() const {
    return std::max({flux_inner, u1_at_xi, u2_at_xi, stefan_jump, far_field});
}

BcResiduals bc_residuals(const PhysicalSolution& sol, const CoefficientSet& set,
                         const VaporFront& front) {
    BcResiduals r;
    const auto& p = sol.params;
    const double pstar = vapor::p_star(front, p);
    const double M = vapor::stefan_coefficient(p);
    const double xi = sol.xi_star;

    const double du1_a0 = endpoint_derivative(sol.u1.nodes, sol.u1.values, true);
    const double L1_a0 = set.L_star(Phase::liquid, sol.u1.values.front());
    r.flux_inner = std::abs(L1_a0 * du1_a0 + pstar) / pstar;

    r.u1_at_xi = std::abs(sol.u1.values.back());
    r.u2_at_xi = std::abs(sol.u2.values.front());

    const double du1_xi = endpoint_derivative(sol.u1.nodes, sol.u1.values, false);
    const double du2_xi = endpoint_derivative(sol.u2.nodes, sol.u2.values, true);
    const double L1_xi = set.L_star(Phase::liquid, sol.u1.values.back());
    const double L2_xi = set.L_star(Phase::solid, sol.u2.values.front());
    r.stefan_jump = std::abs(L1_xi * du1_xi - L2_xi * du2_xi + M * xi) / (M * xi);

    r.far_field = std::abs(sol.u2.values.back() + 1.0);
    return r;
}

namespace {

struct OdeRhs {
    const CoefficientSet& set;
    Phase phase;
    double a, k;

    void operator()(double eta, double u, double nu, double& du, double& dnu) const {
        const auto st = set.starred(phase, u);
        du = nu / (st.L * eta * eta);
        dnu = -2.0 * a * a * eta * st.N / st.L * nu;
        if (k != 0.0) dnu -= k * k * st.K / (16.0 * a * a * kPi * kPi * eta * eta);
    }
};

// RK4 across the grid, substepping each panel; records u at the grid nodes.
std::vector<double> integrate_rk4(const OdeRhs& rhs, const std::vector<double>& grid,
                                  double u0, double nu0, int total_steps) {
    const std::size_t n = grid.size();
    std::vector<double> out(n);
    out[0] = u0;
    double u = u0, nu = nu0;
    const int per_panel = std::max(1, static_cast<int>(total_steps / (n - 1)));
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double h = (grid[j + 1] - grid[j]) / per_panel;
        double eta = grid[j];
        for (int s = 0; s < per_panel; ++s) {
            double k1u, k1n, k2u, k2n, k3u, k3n, k4u, k4n;
            rhs(eta, u, nu, k1u, k1n);
            rhs(eta + 0.5 * h, u + 0.5 * h * k1u, nu + 0.5 * h * k1n, k2u, k2n);
            rhs(eta + 0.5 * h, u + 0.5 * h * k2u, nu + 0.5 * h * k2n, k3u, k3n);
            rhs(eta + h, u + h * k3u, nu + h * k3n, k4u, k4n);
            u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
            nu += h / 6.0 * (k1n + 2 * k2n + 2 * k3n + k4n);
            eta += h;
        }
        out[j + 1] = u;
    }
    return out;
}

double secant_solve(const std::function<double(double)>& miss, double s0, double s1,
                    double tol, int max_iter, double& out_param) {
    double m0 = miss(s0);
    if (std::abs(m0) <= tol) {
        out_param = s0;
        return m0;
    }
    double m1 = miss(s1);
    for (int i = 0; i < max_iter; ++i) {
        if (std::abs(m1) <= tol) {
            out_param = s1;
            return m1;
        }
        const double denom = m1 - m0;
        if (denom == 0.0) break;
        const double s2 = s1 - m1 * (s1 - s0) / denom;
        s0 = s1;
        m0 = m1;
        s1 = s2;
        m1 = miss(s1);
    }
    if (std::abs(m1) <= tol) {
        out_param = s1;
        return m1;
    }
    throw SolverError("shooting: secant iteration did not reach the endpoint tolerance (|miss| = " +
                      std::to_string(std::abs(m1)) + ")");
}

} // namespace

SimilarityProfile shoot_liquid(const CoefficientSet& set, const PhysicalParams& p,
                               const VaporFront& front, const std::vector<double>& grid,
                               const ShootingSettings& st) {
    const OdeRhs rhs{set, Phase::liquid, p.a, p.k};
    const double nu0 = -front.alpha0 * front.alpha0 * vapor::p_star(front, p);
    std::vector<double> values;
    auto miss = [&](double s) {
        values = integrate_rk4(rhs, grid, s, nu0, st.steps);
        return values.back();
    };
    double s_found = 0.0;
    const double m0 = miss(0.0);
    secant_solve(miss, 0.0, -m0, st.tol, st.max_secant, s_found);
    miss(s_found);
    SimilarityProfile out;
    out.phase = Phase::liquid;
    out.nodes = grid;
    out.values = values;
    out.values.back() = 0.0; // endpoint hit to within st.tol by construction
    return out;
}

SimilarityProfile shoot_solid(const CoefficientSet& set, const PhysicalParams& p,
                              const std::vector<double>& grid, const ShootingSettings& st) {
    const OdeRhs rhs{set, Phase::solid, p.a, p.k};
    std::vector<double> values;
    auto miss = [&](double w) {
        values = integrate_rk4(rhs, grid, 0.0, w, st.steps);
        return values.back() + 1.0;
    };
    double w_found = 0.0;
    secant_solve(miss, 0.0, -1.0, st.tol, st.max_secant, w_found);
    miss(w_found);
    SimilarityProfile out;
    out.phase = Phase::solid;
    out.nodes = grid;
    out.values = values;
    out.values.front() = 0.0;
    return out;
}

} // namespace arcmelt::reconstruct
