#include "arcmelt/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace arcmelt::solver {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

stefan::Context make_context(const RunConfig& cfg, const coeffs::CoefficientBounds& b,
                             const vapor::VaporFront& front,
                             fixedpoint::IterateObserver observer = nullptr) {
    return stefan::Context{cfg.coefficients, cfg.params,    front,
                           b,                cfg.solver.picard, cfg.solver.quad,
                           cfg.solver.eta_decay, std::move(observer)};
}

// Source-decay checks between consecutive solid iterates, counting violations.
class IterateWatcher {
public:
    IterateWatcher(const RunConfig& cfg, const coeffs::CoefficientBounds& b)
        : set_(cfg.coefficients), b_(b) {}

    fixedpoint::IterateObserver observer() {
        return [this](int, const profile::SimilarityProfile& prev,
                      const profile::SimilarityProfile& next) { inspect(prev, next); };
    }
    int violations() const { return violations_; }

private:
    void inspect(const profile::SimilarityProfile& prev,
                 const profile::SimilarityProfile& next) {
        const double norm = prev.sup_distance(next);
        for (std::size_t i = 0; i < next.nodes.size(); ++i) {
            const double s = next.nodes[i];
            const double decay = std::exp(-b_.R * s * s);
            const double k2 = set_.K_star(coeffs::Phase::solid, next.values[i]);
            if (k2 > b_.K_M * decay + 1e-9 * std::max(1.0, b_.K_M)) ++violations_;
            const double k2p = set_.K_star(coeffs::Phase::solid, prev.values[i]);
            if (std::abs(k2 - k2p) > b_.Ktilde2 * decay * norm + 1e-9) ++violations_;
        }
    }

    const coeffs::CoefficientSet& set_;
    const coeffs::CoefficientBounds& b_;
    int violations_ = 0;
};

void fill_check_stage(SolveReport& rep, const RunConfig& cfg,
                      const coeffs::CoefficientBounds& b) {
    rep.arc_power = cfg.params.P;
    rep.ignition_threshold = vapor::ignition_threshold(cfg.params);
    rep.ignition = vapor::check_ignition(cfg.params);
    if (!rep.ignition) {
        rep.checks_pass = false;
        return;
    }
    rep.front = vapor::solve_front(cfg.params);
    rep.p_star = vapor::p_star(rep.front, cfg.params);
    rep.stefan_m = vapor::stefan_coefficient(cfg.params);
    rep.bounds = b;
    rep.hypotheses = coeffs::check_hypotheses(b, cfg.coefficients, cfg.bounds_est,
                                              cfg.params.a);
    auto ctx = make_context(cfg, b, rep.front);
    rep.window = stefan::compute_window(ctx);
    rep.flags = stefan::check_existence_window(ctx, rep.window);
    rep.epsilon2_at_alpha0 = fixedpoint::epsilon2(rep.front.alpha0, rep.front, b, cfg.params);
    rep.checks_pass = rep.hypotheses.all_pass() && rep.window.solid_condition &&
                      rep.flags.upper_bound_ok && rep.flags.lower_bound_ok;
}

// Re-solve both phases on a refined grid with tightened tolerances; the
// finite-difference residual suites need near-machine-accurate samples.
std::pair<profile::SimilarityProfile, profile::SimilarityProfile>
refined_profiles(const RunConfig& cfg, const coeffs::CoefficientBounds& b,
                 const vapor::VaporFront& front, double xi_star, int refine_liquid,
                 int refine_solid) {
    fixedpoint::PicardSettings ps = cfg.solver.picard;
    ps.tol = std::min(ps.tol, 1e-12);
    special::QuadratureSpec quad = cfg.solver.quad;
    quad.rel_tol = std::min(quad.rel_tol, 1e-12);
    quad.abs_tol = std::min(quad.abs_tol, 1e-15);
    const auto& p = cfg.params;
    const double a02_pstar = front.alpha0 * front.alpha0 * vapor::p_star(front, p);

    fixedpoint::PicardSettings psl = ps;
    psl.grid_size = (ps.grid_size - 1) * refine_liquid + 1;
    auto liquid = fixedpoint::picard_liquid(
        profile::initial_liquid(front.alpha0, xi_star, psl.grid_size), cfg.coefficients,
        p.a, p.k, a02_pstar, psl, quad);

    fixedpoint::PicardSettings pss = ps;
    pss.grid_size = (ps.grid_size - 1) * refine_solid + 1;
    const double eta_max = profile::solid_eta_max(xi_star, b, p.a, cfg.solver.eta_decay);
    auto solid = fixedpoint::picard_solid(
        profile::initial_solid(xi_star, eta_max, pss.grid_size), cfg.coefficients, p.a, p.k,
        pss, quad);
    return {std::move(liquid.profile), std::move(solid.profile)};
}

} // namespace

SolveReport run_check(const RunConfig& cfg) {
    const auto t0 = Clock::now();
    cfg.validate();
    SolveReport rep;
    if (vapor::check_ignition(cfg.params)) {
        fill_check_stage(rep, cfg, cfg.resolve_bounds());
    } else {
        rep.arc_power = cfg.params.P;
        rep.ignition_threshold = vapor::ignition_threshold(cfg.params);
        rep.ignition = false;
        rep.checks_pass = false;
        rep.notes.push_back("(condP) fails: P below the ignition threshold");
    }
    rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return rep;
}

SolveReport run_solve(const RunConfig& cfg, bool force) {
    const auto t0 = Clock::now();
    cfg.validate();
    SolveReport rep;
    if (!vapor::check_ignition(cfg.params)) {
        rep.arc_power = cfg.params.P;
        rep.ignition_threshold = vapor::ignition_threshold(cfg.params);
        if (!force) throw ModelError("solve: ignition condition (condP) fails");
        rep.notes.push_back("(condP) fails; solve forced");
        rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        return rep;
    }
    const auto bounds = cfg.resolve_bounds();
    fill_check_stage(rep, cfg, bounds);
    if (!rep.checks_pass) {
        if (!force)
            throw ModelError(
                "solve: hypothesis/window checks fail (run check for details, or pass force)");
        rep.forced = true;
        rep.notes.push_back("checks violated; solve forced");
    }

    IterateWatcher watcher(cfg, bounds);
    auto ctx = make_context(cfg, bounds, rep.front, watcher.observer());
    rep.xi = stefan::solve_xi(ctx, cfg.solver.root_tol, cfg.solver.scan_points);
    rep.iterate_violations = watcher.violations();

    rep.solution.u1 = rep.xi.at_root.liquid.profile;
    rep.solution.u2 = rep.xi.at_root.solid.profile;
    rep.solution.xi_star = rep.xi.xi_star;
    rep.solution.alpha0 = rep.front.alpha0;
    rep.solution.params = cfg.params;

    // residual suites on refined re-solves (solid gets twice the refinement;
    // its grid spans the wide truncated domain)
    const int rl = cfg.solver.residual_refine;
    auto [u1r, u2r] = refined_profiles(cfg, bounds, rep.front, rep.xi.xi_star, rl, 2 * rl);
    reconstruct::PhysicalSolution refined{u1r, u2r, rep.xi.xi_star, rep.front.alpha0,
                                          cfg.params};
    rep.bc = reconstruct::bc_residuals(refined, cfg.coefficients, rep.front);
    rep.ode_liquid = reconstruct::ode_residual(u1r, cfg.coefficients, cfg.params.a,
                                               cfg.params.k);
    rep.ode_solid = reconstruct::ode_residual(u2r, cfg.coefficients, cfg.params.a,
                                              cfg.params.k);

    // contraction certification at xi*
    auto max_ratio = [](const std::vector<double>& rs) {
        double m = 0;
        for (double r : rs) m = std::max(m, r);
        return m;
    };
    rep.contraction_liquid.max_ratio = max_ratio(rep.xi.at_root.liquid.contraction_ratios);
    rep.contraction_liquid.epsilon =
        fixedpoint::epsilon1(rep.xi.xi_star, rep.front, bounds, cfg.params);
    rep.contraction_liquid.inside_window = rep.xi.xi_star < rep.window.xi_bar1;
    rep.contraction_solid.max_ratio = max_ratio(rep.xi.at_root.solid.contraction_ratios);
    rep.contraction_solid.epsilon =
        fixedpoint::epsilon2(rep.xi.xi_star, rep.front, bounds, cfg.params);
    rep.contraction_solid.inside_window =
        rep.window.solid_condition && rep.xi.xi_star < rep.window.xi_bar2;

    rep.iterate_hypotheses =
        coeffs::check_hypotheses(bounds, cfg.coefficients, cfg.bounds_est, cfg.params.a,
                                 &rep.solution.u2.nodes, &rep.solution.u2.values);

    rep.solved = true;
    rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return rep;
}

OracleReport run_oracle(const RunConfig& cfg) {
    const auto t0 = Clock::now();
    SolveReport rep = run_solve(cfg, false);
    OracleReport or_;
    or_.xi_star = rep.xi.xi_star;
    auto u1s = reconstruct::shoot_liquid(cfg.coefficients, cfg.params, rep.front,
                                         rep.solution.u1.nodes);
    auto u2s = reconstruct::shoot_solid(cfg.coefficients, cfg.params, rep.solution.u2.nodes);
    or_.sup_liquid = u1s.sup_distance(rep.solution.u1);
    or_.sup_solid = u2s.sup_distance(rep.solution.u2);
    or_.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return or_;
}

SweepResult run_sweep(const RunConfig& cfg, const std::string& parameter, double lo,
                      double hi, int count) {
    if (count < 1) throw ConfigError("sweep: count must be >= 1");
    auto set_param = [&](vapor::PhysicalParams& p, double v) {
        if (parameter == "P") p.P = v;
        else if (parameter == "a") p.a = v;
        else if (parameter == "k") p.k = v;
        else if (parameter == "lambda_b") p.lambda_b = v;
        else if (parameter == "L_b") p.L_b = v;
        else if (parameter == "gamma_b") p.gamma_b = v;
        else if (parameter == "theta_ion") p.theta_ion = v;
        else if (parameter == "theta_b") p.theta_b = v;
        else if (parameter == "theta_m") p.theta_m = v;
        else if (parameter == "l_m") p.l_m = v;
        else if (parameter == "gamma_m") p.gamma_m = v;
        else throw ConfigError("sweep: unknown physical parameter '" + parameter + "'");
    };
    SweepResult out;
    out.parameter = parameter;
    for (int i = 0; i < count; ++i) {
        const double v = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
        SweepRow row;
        row.value = v;
        try {
            RunConfig c = cfg;
            set_param(c.params, v);
            if (parameter == "theta_m") c.coefficients.theta_m = v;
            SolveReport rep = run_solve(c, false);
            row.ok = true;
            row.alpha0 = rep.front.alpha0;
            row.xi_star = rep.xi.xi_star;
            row.z_residual = rep.xi.z_residual;
            row.max_bc_residual = rep.bc.max();
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
        out.rows.push_back(row);
    }
    return out;
}

namespace {

void render_hypotheses(std::ostringstream& os, const coeffs::HypothesisReport& rep,
                       const char* prefix) {
    for (const auto& c : rep.checks) {
        os << prefix << "." << c.tag << ".pass = " << (c.pass ? 1 : 0) << "\n";
        os << prefix << "." << c.tag << ".evaluated = " << (c.evaluated ? 1 : 0) << "\n";
        if (c.evaluated) {
            os << prefix << "." << c.tag << ".lhs = " << fmt(c.lhs) << "\n";
            os << prefix << "." << c.tag << ".rhs = " << fmt(c.rhs) << "\n";
            os << prefix << "." << c.tag << ".worst_point = " << fmt(c.worst_point) << "\n";
        }
    }
}

} // namespace

std::string render_report(const SolveReport& rep) {
    std::ostringstream os;
    os << "arcmelt solve report\n";
    os << "====================\n\n";
    os << "ignition: " << (rep.ignition ? "pass" : "FAIL") << " (threshold "
       << fmt(rep.ignition_threshold) << ")\n";
    if (rep.ignition) {
        os << "vapor front: alpha0 = " << fmt(rep.front.alpha0) << "  (A = "
           << fmt(rep.front.A) << ", B = " << fmt(rep.front.B)
           << ", discriminant = " << fmt(rep.front.discriminant) << ")\n";
        os << "P* = " << fmt(rep.p_star) << ", M = " << fmt(rep.stefan_m) << "\n";
        os << "hypotheses: " << (rep.hypotheses.all_pass() ? "pass" : "FAIL") << "\n";
        for (const auto& c : rep.hypotheses.checks) {
            os << "  " << c.tag << ": "
               << (!c.evaluated ? "per-iterate only" : (c.pass ? "pass" : "FAIL"));
            if (!c.pass && c.evaluated)
                os << "  (lhs " << fmt(c.lhs) << " vs rhs " << fmt(c.rhs) << " at "
                   << fmt(c.worst_point) << ")";
            os << "\n";
        }
        os << "contraction windows: xi_bar1 = " << fmt(rep.window.xi_bar1)
           << ", xi_bar2 = " << fmt(rep.window.xi_bar2)
           << ", xi_hat = " << fmt(rep.window.xi_hat) << "\n";
        os << "scan window: (" << fmt(rep.window.alpha0) << ", "
           << fmt(rep.window.xi_hat_effective) << "]  (z1 = M xi^3 cap at "
           << fmt(rep.window.xi_cap) << ")\n";
        os << "(condepsilon2): " << (rep.window.solid_condition ? "pass" : "FAIL")
           << " (eps2(alpha0) = " << fmt(rep.epsilon2_at_alpha0) << ")\n";
        os << "(cota-Z1-xiraya): " << (rep.flags.upper_bound_ok ? "pass" : "FAIL") << " ("
           << fmt(rep.flags.z1_at_hat) << " <= " << fmt(rep.flags.m_xi3_at_hat) << ")\n";
        os << "(cota-Z2-alpha0): " << (rep.flags.lower_bound_ok ? "pass" : "FAIL") << " ("
           << fmt(rep.flags.z2_at_alpha0) << " >= " << fmt(rep.flags.m_alpha03) << ")\n";
    }
    for (const auto& n : rep.notes) os << "note: " << n << "\n";

    if (rep.solved) {
        os << "\nxi* = " << fmt(rep.xi.xi_star) << "  (|Z - M xi^3| = "
           << fmt(rep.xi.z_residual) << ", bracket [" << fmt(rep.xi.bracket.first) << ", "
           << fmt(rep.xi.bracket.second) << "], " << rep.xi.iterations << " iterations)\n";
        if (rep.xi.all_brackets.size() > 1) {
            os << "additional sign-change brackets:";
            for (std::size_t i = 1; i < rep.xi.all_brackets.size(); ++i)
                os << " [" << fmt(rep.xi.all_brackets[i].first) << ", "
                   << fmt(rep.xi.all_brackets[i].second) << "]";
            os << "\n";
        }
        os << "picard: liquid " << rep.xi.at_root.liquid.iterations << " iterations (ratio "
           << fmt(rep.contraction_liquid.max_ratio) << " vs eps1 "
           << fmt(rep.contraction_liquid.epsilon) << "), solid "
           << rep.xi.at_root.solid.iterations << " iterations (ratio "
           << fmt(rep.contraction_solid.max_ratio) << " vs eps2 "
           << fmt(rep.contraction_solid.epsilon) << ")\n";
        os << "sandwich violations: " << rep.xi.sandwich_violations
           << ", per-iterate source-decay violations: " << rep.iterate_violations << "\n";
        os << "boundary residuals: flux " << fmt(rep.bc.flux_inner) << ", u1(xi) "
           << fmt(rep.bc.u1_at_xi) << ", u2(xi) " << fmt(rep.bc.u2_at_xi) << ", jump "
           << fmt(rep.bc.stefan_jump) << ", far-field " << fmt(rep.bc.far_field) << "\n";
        os << "ode residuals: liquid " << fmt(rep.ode_liquid.max_normalized) << " (at eta "
           << fmt(rep.ode_liquid.at_eta) << "), solid " << fmt(rep.ode_solid.max_normalized)
           << " (at eta " << fmt(rep.ode_solid.at_eta) << ")\n";
    }

    os << "\n[machine]\n";
    os << "condP.pass = " << (rep.ignition ? 1 : 0) << "\n";
    os << "condP.lhs = " << fmt(rep.arc_power) << "\n";
    os << "condP.threshold = " << fmt(rep.ignition_threshold) << "\n";
    if (rep.ignition) {
        os << "alpha0 = " << fmt(rep.front.alpha0) << "\n";
        os << "alpha0.A = " << fmt(rep.front.A) << "\n";
        os << "alpha0.B = " << fmt(rep.front.B) << "\n";
        os << "alpha0.discriminant = " << fmt(rep.front.discriminant) << "\n";
        os << "P_star = " << fmt(rep.p_star) << "\n";
        os << "M = " << fmt(rep.stefan_m) << "\n";
        os << "bounds.L_m = " << fmt(rep.bounds.L_m) << "\n";
        os << "bounds.L_M = " << fmt(rep.bounds.L_M) << "\n";
        os << "bounds.N_m = " << fmt(rep.bounds.N_m) << "\n";
        os << "bounds.N_M = " << fmt(rep.bounds.N_M) << "\n";
        os << "bounds.K_m = " << fmt(rep.bounds.K_m) << "\n";
        os << "bounds.K_M = " << fmt(rep.bounds.K_M) << "\n";
        os << "bounds.R = " << fmt(rep.bounds.R) << "\n";
        os << "bounds.Ntilde1 = " << fmt(rep.bounds.Ntilde1) << "\n";
        os << "bounds.Ntilde2 = " << fmt(rep.bounds.Ntilde2) << "\n";
        os << "bounds.Ltilde1 = " << fmt(rep.bounds.Ltilde1) << "\n";
        os << "bounds.Ltilde2 = " << fmt(rep.bounds.Ltilde2) << "\n";
        os << "bounds.Ktilde1 = " << fmt(rep.bounds.Ktilde1) << "\n";
        os << "bounds.Ktilde2 = " << fmt(rep.bounds.Ktilde2) << "\n";
        render_hypotheses(os, rep.hypotheses, "hyp");
        os << "window.xi_bar1 = " << fmt(rep.window.xi_bar1) << "\n";
        os << "window.xi_bar2 = " << fmt(rep.window.xi_bar2) << "\n";
        os << "window.xi_hat = " << fmt(rep.window.xi_hat) << "\n";
        os << "window.xi_cap = " << fmt(rep.window.xi_cap) << "\n";
        os << "window.xi_hat_effective = " << fmt(rep.window.xi_hat_effective) << "\n";
        os << "condepsilon2.pass = " << (rep.window.solid_condition ? 1 : 0) << "\n";
        os << "condepsilon2.value = " << fmt(rep.epsilon2_at_alpha0) << "\n";
        os << "cota-Z1-xiraya.pass = " << (rep.flags.upper_bound_ok ? 1 : 0) << "\n";
        os << "cota-Z1-xiraya.lhs = " << fmt(rep.flags.z1_at_hat) << "\n";
        os << "cota-Z1-xiraya.rhs = " << fmt(rep.flags.m_xi3_at_hat) << "\n";
        os << "cota-Z2-alpha0.pass = " << (rep.flags.lower_bound_ok ? 1 : 0) << "\n";
        os << "cota-Z2-alpha0.lhs = " << fmt(rep.flags.z2_at_alpha0) << "\n";
        os << "cota-Z2-alpha0.rhs = " << fmt(rep.flags.m_alpha03) << "\n";
        os << "checks.pass = " << (rep.checks_pass ? 1 : 0) << "\n";
    }
    if (rep.solved) {
        os << "xi_star = " << fmt(rep.xi.xi_star) << "\n";
        os << "xi_star.residual = " << fmt(rep.xi.z_residual) << "\n";
        os << "xi_star.bracket_lo = " << fmt(rep.xi.bracket.first) << "\n";
        os << "xi_star.bracket_hi = " << fmt(rep.xi.bracket.second) << "\n";
        os << "xi_star.iterations = " << rep.xi.iterations << "\n";
        os << "xi_star.brackets = " << rep.xi.all_brackets.size() << "\n";
        os << "Z.value = " << fmt(rep.xi.at_root.z) << "\n";
        os << "Z.quotient_form = " << fmt(rep.xi.at_root.z_quotient) << "\n";
        os << "Z.z1 = " << fmt(rep.xi.at_root.bounds.z1) << "\n";
        os << "Z.z2 = " << fmt(rep.xi.at_root.bounds.z2) << "\n";
        os << "Z.z2_display_variant = " << fmt(rep.xi.at_root.bounds.z2_display) << "\n";
        os << "Z.sandwich_violations = " << rep.xi.sandwich_violations << "\n";
        os << "source.I_quotient = " << fmt(rep.xi.at_root.source.I_quotient) << "\n";
        os << "source.I_flux = " << fmt(rep.xi.at_root.source.I_flux) << "\n";
        os << "source.Q_quotient = " << fmt(rep.xi.at_root.source.Q_quotient) << "\n";
        os << "source.Q_flux = " << fmt(rep.xi.at_root.source.Q_flux) << "\n";
        os << "kernel.E1_xi = " << fmt(rep.xi.at_root.e1_xi) << "\n";
        os << "kernel.chi2_inf = " << fmt(rep.xi.at_root.chi2_inf) << "\n";
        os << "kernel.phi2_inf = " << fmt(rep.xi.at_root.phi2_inf) << "\n";
        os << "picard.liquid.iterations = " << rep.xi.at_root.liquid.iterations << "\n";
        os << "picard.liquid.final_update = " << fmt(rep.xi.at_root.liquid.final_update_norm)
           << "\n";
        os << "picard.liquid.max_ratio = " << fmt(rep.contraction_liquid.max_ratio) << "\n";
        os << "picard.liquid.eps1 = " << fmt(rep.contraction_liquid.epsilon) << "\n";
        os << "picard.liquid.certified = " << (rep.contraction_liquid.certified() ? 1 : 0)
           << "\n";
        os << "picard.solid.iterations = " << rep.xi.at_root.solid.iterations << "\n";
        os << "picard.solid.final_update = " << fmt(rep.xi.at_root.solid.final_update_norm)
           << "\n";
        os << "picard.solid.max_ratio = " << fmt(rep.contraction_solid.max_ratio) << "\n";
        os << "picard.solid.eps2 = " << fmt(rep.contraction_solid.epsilon) << "\n";
        os << "picard.solid.certified = " << (rep.contraction_solid.certified() ? 1 : 0)
           << "\n";
        os << "bc.27.flux = " << fmt(rep.bc.flux_inner) << "\n";
        os << "bc.28.u1_xi = " << fmt(rep.bc.u1_at_xi) << "\n";
        os << "bc.29.u2_xi = " << fmt(rep.bc.u2_at_xi) << "\n";
        os << "bc.30.stefan_jump = " << fmt(rep.bc.stefan_jump) << "\n";
        os << "bc.31.far_field = " << fmt(rep.bc.far_field) << "\n";
        os << "ode.25.max_residual = " << fmt(rep.ode_liquid.max_normalized) << "\n";
        os << "ode.26.max_residual = " << fmt(rep.ode_solid.max_normalized) << "\n";
        os << "iterate_hypotheses.pass = " << (rep.iterate_hypotheses.all_pass() ? 1 : 0)
           << "\n";
        os << "iterate_violations = " << rep.iterate_violations << "\n";
        for (const auto& [xi, f] : rep.xi.scan)
            os << "scan." << fmt(xi) << " = " << fmt(f) << "\n";
    }
    os << "\n[timing]\n";
    os << "seconds = " << fmt(rep.seconds) << "\n";
    return os.str();
}

std::string render_sweep(const SweepResult& sweep) {
    std::ostringstream os;
    os << "# sweep over " << sweep.parameter << "\n";
    os << sweep.parameter << ",status,alpha0,xi_star,z_residual,max_bc_residual,error\n";
    for (const auto& r : sweep.rows) {
        os << fmt(r.value) << "," << (r.ok ? "ok" : "failed") << ",";
        if (r.ok)
            os << fmt(r.alpha0) << "," << fmt(r.xi_star) << "," << fmt(r.z_residual) << ","
               << fmt(r.max_bc_residual) << ",";
        else
            os << ",,,,\"" << r.error << "\"";
        os << "\n";
    }
    return os.str();
}

std::string render_oracle(const OracleReport& rep) {
    std::ostringstream os;
    os << "oracle comparison at xi* = " << fmt(rep.xi_star) << "\n";
    os << "sup |picard - shooting| liquid = " << fmt(rep.sup_liquid) << "\n";
    os << "sup |picard - shooting| solid  = " << fmt(rep.sup_solid) << "\n";
    os << "threshold = " << fmt(rep.threshold) << " -> " << (rep.pass() ? "PASS" : "FAIL")
       << "\n";
    return os.str();
}

void write_profile_csv(const std::filesystem::path& path,
                       const profile::SimilarityProfile& u, double theta_m, double) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot write profile file: " + path.string());
    out << "eta,u,theta_at_t1,phase\n";
    const int phase = u.phase == coeffs::Phase::liquid ? 1 : 2;
    for (std::size_t i = 0; i < u.nodes.size(); ++i) {
        out << fmt(u.nodes[i]) << "," << fmt(u.values[i]) << ","
            << fmt(theta_m * (u.values[i] + 1.0)) << "," << phase << "\n";
    }
}

void export_solution(const std::filesystem::path& out_dir, const SolveReport& rep,
                     const RunConfig& cfg) {
    std::filesystem::create_directories(out_dir);
    std::ofstream report(out_dir / "report.txt");
    if (!report) throw SolverError("cannot write report into " + out_dir.string());
    report << render_report(rep);
    if (rep.solved) {
        write_profile_csv(out_dir / "liquid_profile.csv", rep.solution.u1,
                          cfg.params.theta_m);
        write_profile_csv(out_dir / "solid_profile.csv", rep.solution.u2,
                          cfg.params.theta_m);
    }
}

} // namespace arcmelt::solver
