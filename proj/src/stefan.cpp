#include "arcmelt/stefan.hpp"

#include <cmath>

namespace arcmelt::stefan {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

ZBoundsPair z_bounds(double xi, double xi_hat, const Context& ctx) {
    const auto& b = ctx.bounds;
    const auto& p = ctx.params;
    const double a = p.a;
    const double a0 = ctx.front.alpha0;
    const double ps = vapor::p_star(ctx.front, p);
    const double k = p.k;

    const double den_hat = special::one_minus_mills_g(a * xi_hat * std::sqrt(b.N_M / b.L_m));
    const double den_xi = special::one_minus_mills_g(a * xi * std::sqrt(b.N_M / b.L_m));
    if (!(den_hat > 0.0) || !(den_xi > 0.0))
        throw ModelError("z_bounds: Mills-ratio denominator degenerated");

    ZBoundsPair out;
    out.z1 = a0 * a0 * ps +
             b.K_M * k * k / (16.0 * a * a * kPi * kPi * b.L_m) *
                 (1.0 / a0 + b.L_M / (xi * den_hat));
    const double d = xi * xi - a0 * a0;
    out.z2 = a0 * a0 * ps * std::exp(-a * a * b.N_m / b.L_M * d) - b.L_M * xi / den_xi;
    out.z2_display = a0 * ps * std::exp(a * a * b.N_M / b.L_m * d) - b.L_M * xi / den_xi;
    return out;
}

ZEvaluation evaluate_z(const Context& ctx, double xi, double xi_hat,
                       std::optional<double> picard_tol_override) {
    const double a0 = ctx.front.alpha0;
    if (!(xi > a0)) throw ModelError("evaluate_z: xi must exceed alpha0");

    PicardSettings ps = ctx.picard;
    if (picard_tol_override) ps.tol = *picard_tol_override;

    const auto& p = ctx.params;
    const double a02_pstar = a0 * a0 * vapor::p_star(ctx.front, p);

    ZEvaluation ev;
    ev.xi = xi;
    ev.liquid = fixedpoint::picard_liquid(profile::initial_liquid(a0, xi, ps.grid_size),
                                          ctx.set, p.a, p.k, a02_pstar, ps, ctx.quad);
    const double eta_max = profile::solid_eta_max(xi, ctx.bounds, p.a, ctx.eta_decay);
    ev.solid = fixedpoint::picard_solid(profile::initial_solid(xi, eta_max, ps.grid_size),
                                        ctx.set, p.a, p.k, ps, ctx.quad,
                                        ctx.solid_observer);

    const auto lt = kernels::build_tables(ev.liquid.profile, ctx.set, p.a, p.k, ctx.quad, false);
    const auto st = kernels::build_tables(ev.solid.profile, ctx.set, p.a, p.k, ctx.quad, true);
    ev.source = kernels::source_integrals(lt, ev.liquid.profile, ctx.set, a02_pstar, ctx.quad);
    ev.e1_xi = lt.E.back();
    ev.chi2_inf = st.chi_inf;
    ev.phi2_inf = st.phi_inf;
    if (!(ev.chi2_inf > 0.0)) throw SolverError("evaluate_z: chi2(inf) must be positive");

    const double head = (-1.0 + ev.phi2_inf) / ev.chi2_inf;
    ev.z = head + ev.source.Q_flux * ev.e1_xi;
    ev.z_quotient = head + ev.source.Q_quotient * ev.e1_xi;
    ev.bounds = z_bounds(xi, xi_hat, ctx);
    const double slack = 1e-9 * std::max({1.0, std::abs(ev.bounds.z1), std::abs(ev.bounds.z2)});
    ev.sandwich_ok = ev.z >= ev.bounds.z2 - slack && ev.z <= ev.bounds.z1 + slack;
    return ev;
}

Window compute_window(const Context& ctx) {
    Window w;
    w.alpha0 = ctx.front.alpha0;
    w.xi_bar1 = fixedpoint::xi_bar1(ctx.front, ctx.bounds, ctx.params);
    w.solid_condition =
        fixedpoint::check_solid_window_condition(ctx.front, ctx.bounds, ctx.params);
    w.xi_bar2 = fixedpoint::xi_bar2(ctx.front, ctx.bounds, ctx.params);
    w.xi_hat = std::min(w.xi_bar1, w.xi_bar2);

    // Crossing of z1(xi) = M xi^3 with the Mills factor evaluated at the same
    // xi. Past this point F = Z - M xi^3 cannot be positive, so it caps the
    // scan; for unbounded contraction windows it doubles as the xi-hat the
    // first existence flag is tested at.
    const double M = vapor::stefan_coefficient(ctx.params);
    auto f = [&](double x) { return z_bounds(x, x, ctx).z1 - M * x * x * x; };
    double lo = w.alpha0 * (1.0 + 1e-9);
    double cap;
    if (f(lo) <= 0.0) {
        cap = lo;
    } else {
        double hi = 2.0 * lo;
        while (f(hi) > 0.0) {
            hi *= 2.0;
            if (hi > 1e9) throw SolverError("compute_window: no z1 = M xi^3 crossing found");
        }
        for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            (f(mid) > 0.0 ? lo : hi) = mid;
        }
        cap = 0.5 * (lo + hi);
    }
    w.xi_cap = cap;
    w.xi_hat_effective = std::min(w.xi_hat, w.xi_cap);
    return w;
}

ExistenceFlags check_existence_window(const Context& ctx, const Window& w) {
    const double M = vapor::stefan_coefficient(ctx.params);
    ExistenceFlags fl;
    const double xh = w.xi_hat_effective;
    const auto at_hat = z_bounds(xh, xh, ctx);
    fl.z1_at_hat = at_hat.z1;
    fl.m_xi3_at_hat = M * xh * xh * xh;
    fl.upper_bound_ok = fl.z1_at_hat <= fl.m_xi3_at_hat * (1.0 + 1e-9) + 1e-12;

    const double a0 = w.alpha0;
    const auto at_a0 = z_bounds(a0 * (1.0 + 1e-12), xh, ctx);
    fl.z2_at_alpha0 = at_a0.z2;
    fl.m_alpha03 = M * a0 * a0 * a0;
    fl.lower_bound_ok = fl.z2_at_alpha0 >= fl.m_alpha03 * (1.0 - 1e-9) - 1e-12;
    return fl;
}

XiSolveResult solve_xi(const Context& ctx, double root_tol, int scan_points) {
    if (scan_points < 2) throw ConfigError("solve_xi: need at least 2 scan points");
    XiSolveResult r;
    r.window = compute_window(ctx);
    r.flags = check_existence_window(ctx, r.window);

    const double a0 = r.window.alpha0;
    const double hi = r.window.xi_hat_effective;
    if (!(hi > a0)) throw ModelError("solve_xi: empty window (xi_hat <= alpha0)");
    const double M = vapor::stefan_coefficient(ctx.params);

    // coarse scan (interior points; Z is singular at xi = alpha0)
    auto F = [&](double xi, std::optional<double> tol) {
        auto ev = evaluate_z(ctx, xi, hi, tol);
        if (!ev.sandwich_ok) ++r.sandwich_violations;
        return ev.z - M * xi * xi * xi;
    };
    std::vector<double> xs(scan_points);
    for (int i = 0; i < scan_points; ++i)
        xs[i] = a0 + (hi - a0) * (i + 1) / (scan_points + 1);
    std::vector<double> fs(scan_points);
    for (int i = 0; i < scan_points; ++i) {
        fs[i] = F(xs[i], 1e-6);
        r.scan.emplace_back(xs[i], fs[i]);
    }
    for (int i = 0; i + 1 < scan_points; ++i)
        if (fs[i] == 0.0 || (fs[i] > 0.0) != (fs[i + 1] > 0.0))
            r.all_brackets.emplace_back(xs[i], xs[i + 1]);
    if (r.all_brackets.empty()) {
        std::string msg = "solve_xi: no sign change of Z - M xi^3 on the scan grid; F = [";
        for (int i = 0; i < scan_points; ++i)
            msg += (i ? ", " : "") + std::to_string(fs[i]);
        throw SolverError(msg + "]");
    }

    // bisect the smallest bracket at coarse tolerance, then polish
    auto [blo, bhi] = r.all_brackets.front();
    double flo = F(blo, 1e-6);
    int iters = 0;
    while (bhi - blo > 1e-4 * (hi - a0) && iters < 40) {
        const double mid = 0.5 * (blo + bhi);
        const double fm = F(mid, 1e-6);
        ++iters;
        if ((fm > 0.0) == (flo > 0.0)) {
            blo = mid;
            flo = fm;
        } else {
            bhi = mid;
        }
    }

    // full-tolerance polish with bisection on the tight bracket
    double lo2 = blo, hi2 = bhi;
    double xi_star = 0.5 * (lo2 + hi2);
    ZEvaluation best;
    for (int i = 0; i < 80; ++i) {
        xi_star = 0.5 * (lo2 + hi2);
        best = evaluate_z(ctx, xi_star, hi, std::nullopt);
        if (!best.sandwich_ok) ++r.sandwich_violations;
        const double f = best.z - M * xi_star * xi_star * xi_star;
        ++iters;
        if (std::abs(f) <= root_tol * std::max(1.0, M * xi_star * xi_star * xi_star)) break;
        if ((f > 0.0) == (flo > 0.0)) {
            lo2 = xi_star;
        } else {
            hi2 = xi_star;
        }
        if (hi2 - lo2 <= 1e-15 * std::max(1.0, hi2)) break;
    }
    r.xi_star = xi_star;
    r.at_root = best;
    r.z_residual = std::abs(best.z - M * xi_star * xi_star * xi_star);
    r.bracket = {lo2, hi2};
    r.iterations = iters;
    return r;
}

} // namespace arcmelt::stefan
