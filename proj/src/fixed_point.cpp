#include "arcmelt/fixed_point.hpp"

#include <cmath>

namespace arcmelt::fixedpoint {

void PicardSettings::validate() const {
    if (!(tol > 0)) throw ConfigError("picard: tol must be positive");
    if (max_iter < 1) throw ConfigError("picard: max_iter must be >= 1");
    if (grid_size < 3) throw ConfigError("picard: grid_size must be >= 3");
}

SimilarityProfile apply_liquid(const KernelTable& t, double alpha0_sq_pstar) {
    SimilarityProfile out;
    out.phase = coeffs::Phase::liquid;
    out.nodes = t.nodes;
    out.values.resize(t.nodes.size());
    const double chi_xi = t.chi.back();
    const double phi_xi = t.phi.back();
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        out.values[i] = alpha0_sq_pstar * (chi_xi - t.chi[i]) + (phi_xi - t.phi[i]);
    out.values.back() = 0.0;
    return out;
}

SimilarityProfile apply_solid(const KernelTable& t) {
    if (!(t.chi_inf > 0.0))
        throw SolverError("solid operator: chi2(inf) must be positive");
    SimilarityProfile out;
    out.phase = coeffs::Phase::solid;
    out.nodes = t.nodes;
    out.values.resize(t.nodes.size());
    const double head = -1.0 + t.phi_inf;
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        out.values[i] = head * t.chi[i] / t.chi_inf - t.phi[i];
    out.values.front() = 0.0;
    return out;
}

namespace {

PicardResult run_picard(const SimilarityProfile& init, const PicardSettings& ps,
                        const IterateObserver& observer,
                        const std::function<SimilarityProfile(const SimilarityProfile&)>& op) {
    ps.validate();
    PicardResult r;
    r.profile = init;
    double prev_norm = -1.0;
    for (int it = 1; it <= ps.max_iter; ++it) {
        SimilarityProfile next = op(r.profile);
        const double d = next.sup_distance(r.profile);
        if (observer) observer(it, r.profile, next);
        if (prev_norm > 0.0) r.contraction_ratios.push_back(d / prev_norm);
        prev_norm = d;
        r.profile = std::move(next);
        r.iterations = it;
        r.final_update_norm = d;
        if (d <= ps.tol) return r;
    }
    std::string ratios;
    for (double q : r.contraction_ratios) ratios += " " + std::to_string(q);
    throw SolverError("picard: no convergence after " + std::to_string(ps.max_iter) +
                      " iterations (last update " + std::to_string(r.final_update_norm) +
                      "; ratios" + ratios + ")");
}

constexpr double kExpGuard = 350.0;

} // namespace

PicardResult picard_liquid(const SimilarityProfile& init, const CoefficientSet& set, double a,
                           double k, double alpha0_sq_pstar, const PicardSettings& ps,
                           const QuadratureSpec& spec, const IterateObserver& observer) {
    return run_picard(init, ps, observer, [&](const SimilarityProfile& u) {
        return apply_liquid(kernels::build_tables(u, set, a, k, spec, false),
                            alpha0_sq_pstar);
    });
}

PicardResult picard_solid(const SimilarityProfile& init, const CoefficientSet& set, double a,
                          double k, const PicardSettings& ps, const QuadratureSpec& spec,
                          const IterateObserver& observer) {
    return run_picard(init, ps, observer, [&](const SimilarityProfile& u) {
        return apply_solid(kernels::build_tables(u, set, a, k, spec, true));
    });
}

double epsilon1(double z, const VaporFront& front, const CoefficientBounds& b,
                const PhysicalParams& p) {
    const double a0 = front.alpha0;
    if (z < a0) throw ModelError("epsilon1: z must be >= alpha0");
    if (z == a0) return 0.0;
    const double ps = vapor::p_star(front, p);
    return 2.0 * a0 * a0 * ps * kernels::lip_chi1(z, a0, b, p.a) +
           2.0 * kernels::lip_phi1(z, a0, b, p.a, p.k);
}

double epsilon2(double z, const VaporFront& front, const CoefficientBounds& b,
                const PhysicalParams& p) {
    const double a0 = front.alpha0;
    if (z < a0) throw ModelError("epsilon2: z must be >= alpha0");
    const double a = p.a;
    const double phi2t = kernels::lip_phi2(a0, b, a, p.k);
    if (std::isinf(phi2t)) return special::kInfinity;
    const double cNL = b.L_M * b.Ntilde2 + b.N_M * b.Ltilde2;
    double mid = 0.0;
    const double gm_num = special::mills_g(a * z * std::sqrt(b.N_m / b.L_M));
    const double numerator =
        2.0 * b.L_M *
        (gm_num * b.L_M * b.L_M / (2.0 * b.L_m * b.L_m * b.N_m) * cNL + b.Ltilde2);
    if (numerator > 0.0) {
        const double den = special::one_minus_mills_g(a * z * std::sqrt(b.N_M / b.L_m));
        if (!(den > 0.0)) return special::kInfinity;
        mid = numerator / (b.L_m * b.L_m * den);
    }
    constexpr double pi_sq = 9.8696044010893586188;
    const double source_amp =
        1.0 + p.k * p.k * b.K_M / (16.0 * a * a * pi_sq * b.L_m * a0 * a0);
    return 2.0 * phi2t + mid * source_amp;
}

namespace {

double find_unit_root(const std::function<double(double)>& f, double lo_start, double cap) {
    // f increasing with f(lo_start) < 1 expected; returns the root of f = 1,
    // +inf when f never reaches 1 before cap.
    double lo = lo_start;
    if (f(lo) >= 1.0) return lo;
    double hi = lo > 0 ? 2.0 * lo : 1.0;
    while (f(hi) < 1.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > cap) return special::kInfinity;
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-14 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

bool check_solid_window_condition(const VaporFront& front, const CoefficientBounds& b,
                                  const PhysicalParams& p) {
    return epsilon2(front.alpha0, front, b, p) < 1.0;
}

double xi_bar1(const VaporFront& front, const CoefficientBounds& b, const PhysicalParams& p) {
    const double cap = 1e6 * std::max(front.alpha0, 1.0);
    const double root = find_unit_root(
        [&](double z) { return epsilon1(z, front, b, p); }, front.alpha0, cap);
    return root;
}

double xi_bar2(const VaporFront& front, const CoefficientBounds& b, const PhysicalParams& p) {
    if (!check_solid_window_condition(front, b, p)) return front.alpha0; // empty window
    const double cap = 1e6 * std::max(front.alpha0, 1.0);
    return find_unit_root([&](double z) { return epsilon2(z, front, b, p); }, front.alpha0,
                          cap);
}

} // namespace arcmelt::fixedpoint
