#include "arcmelt/kernels.hpp"

#include <cmath>

namespace arcmelt::kernels {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

double phi_prefactor(double a, double k) { return k * k / (16.0 * a * a * kPi * kPi); }

} // namespace

double KernelTable::source_at_upper() const {
    if (k == 0.0) return 0.0;
    return W.back() / E.back();
}

KernelTable build_tables(const SimilarityProfile& u, const CoefficientSet& set, double a,
                         double k, const QuadratureSpec& spec, bool with_tail) {
    u.validate(1e-6);
    const auto& nodes = u.nodes;
    const std::size_t n = nodes.size();
    const auto uh = u.interpolant();
    const Phase phase = u.phase;

    auto N_of = [&](double v) { return set.N_star(phase, uh(v)); };
    auto L_of = [&](double v) { return set.L_star(phase, uh(v)); };
    auto K_of = [&](double v) { return set.K_star(phase, uh(v)); };

    KernelTable t;
    t.phase = phase;
    t.nodes = nodes;
    t.a = a;
    t.k = k;

    t.C = special::cumulative([&](double v) { return v * N_of(v) / L_of(v); }, nodes, spec);
    t.E.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(t.C[i] >= 0.0) || (i > 0 && t.C[i] < t.C[i - 1]))
            throw SolverError("kernels: exponent integral must be nondecreasing");
        t.E[i] = std::exp(-2.0 * a * a * t.C[i]);
    }

    const interp::MonotoneCubic Chat(nodes, t.C);
    auto E_of = [&](double v) { return std::exp(-2.0 * a * a * Chat(v)); };

    t.chi = special::cumulative([&](double v) { return E_of(v) / (v * v * L_of(v)); }, nodes,
                                spec);

    t.W.assign(n, 0.0);
    t.phi.assign(n, 0.0);
    if (k != 0.0) {
        // W(eta_{j+1}) = W(eta_j) e^{-2a^2 (C_{j+1}-C_j)}
        //             + int_panel K/s^2 e^{-2a^2 (C_{j+1}-Chat(s))} ds;
        // every exponent is <= 0, so no overflow regardless of domain width.
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double c_hi = t.C[j + 1];
            const double decay = std::exp(-2.0 * a * a * (c_hi - t.C[j]));
            const double panel = special::integrate(
                [&](double s) {
                    return K_of(s) / (s * s) * std::exp(-2.0 * a * a * (c_hi - Chat(s)));
                },
                nodes[j], nodes[j + 1], spec);
            t.W[j + 1] = t.W[j] * decay + panel;
        }
        const interp::MonotoneCubic What(nodes, t.W);
        const double pref = phi_prefactor(a, k);
        auto phi_raw =
            special::cumulative([&](double v) { return What(v) / (v * v * L_of(v)); }, nodes,
                                spec);
        for (std::size_t i = 0; i < n; ++i) t.phi[i] = pref * phi_raw[i];
    }

    t.chi_inf = t.chi.back();
    t.phi_inf = t.phi.back();
    if (with_tail) {
        // Past eta_max the unknown is frozen at its last value (the far
        // field); the remaining integrals go through v = eta_max + s/(1-s).
        const double em = nodes.back();
        const double ub = u.values.back();
        const double Nb = set.N_star(phase, ub);
        const double Lb = set.L_star(phase, ub);
        const double Kb = set.K_star(phase, ub);
        const double c = a * a * Nb / Lb;
        const double Eb = t.E.back();
        t.chi_inf += special::integrate(
            [&](double v) { return Eb * std::exp(-c * (v * v - em * em)) / (v * v * Lb); }, em,
            special::kInfinity, spec);
        if (k != 0.0) {
            const double Wb = t.W.back();
            QuadratureSpec inner = spec;
            inner.rel_tol = std::max(spec.rel_tol, 1e-8);
            auto W_tail = [&](double v) {
                double w = Wb * std::exp(-c * (v * v - em * em));
                if (Kb > 0.0) {
                    w += special::integrate(
                        [&](double s) {
                            return Kb / (s * s) * std::exp(-c * (v * v - s * s));
                        },
                        em, v, inner);
                }
                return w;
            };
            t.phi_inf += phi_prefactor(a, k) *
                         special::integrate(
                             [&](double v) { return W_tail(v) / (v * v * Lb); }, em,
                             special::kInfinity, spec);
        }
    }
    return t;
}

SourceIntegrals source_integrals(const KernelTable& liquid, const SimilarityProfile& u,
                                 const CoefficientSet& set, double alpha0_sq_pstar,
                                 const QuadratureSpec& spec) {
    SourceIntegrals s;
    s.Q_quotient = s.Q_flux = alpha0_sq_pstar;
    if (liquid.k == 0.0) return s;
    const auto uh = u.interpolant();
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < liquid.nodes.size(); ++j) {
        acc += special::integrate(
            [&](double v) {
                const auto st = set.starred(Phase::liquid, uh(v));
                return st.K / (v * v * st.L);
            },
            liquid.nodes[j], liquid.nodes[j + 1], spec);
    }
    s.I_quotient = acc;
    s.I_flux = liquid.source_at_upper();
    const double pref = phi_prefactor(liquid.a, liquid.k);
    s.Q_quotient += pref * s.I_quotient;
    s.Q_flux += pref * s.I_flux;
    return s;
}

// ---------- envelopes ----------

double e_envelope_lo(double eta, double lower, const CoefficientBounds& b, double a) {
    return std::exp(-a * a * b.N_M / b.L_m * (eta * eta - lower * lower));
}

double e_envelope_hi(double eta, double lower, const CoefficientBounds& b, double a) {
    return std::exp(-a * a * b.N_m / b.L_M * (eta * eta - lower * lower));
}

double chi1_envelope_hi(double eta, double alpha0, const CoefficientBounds& b, double a) {
    return a / b.L_m * std::sqrt(b.N_m / b.L_M) *
           special::h_envelope_scaled(eta, b.N_m, b.L_M, alpha0, a);
}

double chi2_envelope_lo(double eta, double xi, const CoefficientBounds& b, double a) {
    return a / b.L_M * std::sqrt(b.N_M / b.L_m) *
           special::h_envelope_scaled(eta, b.N_M, b.L_m, xi, a);
}

double chi2_envelope_hi(double eta, double xi, const CoefficientBounds& b, double a) {
    return a / b.L_m * std::sqrt(b.N_m / b.L_M) *
           special::h_envelope_scaled(eta, b.N_m, b.L_M, xi, a);
}

double chi2_envelope_elementary(double eta, double xi, const CoefficientBounds& b) {
    const double inv_eta = std::isinf(eta) ? 0.0 : 1.0 / eta;
    return (1.0 / xi - inv_eta) / b.L_m;
}

double phi2_envelope_hi(double xi, const CoefficientBounds& b, double a, double k) {
    return k * k * b.K_M / (16.0 * a * a * kPi * kPi * b.L_m * xi * xi);
}

// ---------- Lipschitz envelopes ----------

double lip_e1(double eta, double alpha0, const CoefficientBounds& b, double a) {
    const double cN = b.Ntilde1 / b.L_m + b.N_M * b.Ltilde1 / (b.L_m * b.L_m);
    return a * a * cN * (eta * eta - alpha0 * alpha0);
}

double lip_chi1(double eta, double alpha0, const CoefficientBounds& b, double a) {
    const double cN = b.Ntilde1 / b.L_m + b.N_M * b.Ltilde1 / (b.L_m * b.L_m);
    return a * a / b.L_m * cN * (eta + alpha0 * alpha0 / eta - 2.0 * alpha0) +
           b.Ltilde1 / (b.L_m * b.L_m) * (1.0 / alpha0 - 1.0 / eta);
}

double lip_e2(double eta, double xi, const CoefficientBounds& b, double a) {
    const double cNL = b.L_M * b.Ntilde2 + b.N_M * b.Ltilde2;
    const double d = eta * eta - xi * xi;
    return std::exp(-a * a * d * b.N_m / b.L_M) * a * a / (b.L_m * b.L_m) * cNL * d;
}

double lip_chi2(double eta, double xi, const CoefficientBounds& b, double a) {
    const double cNL = b.L_M * b.Ntilde2 + b.N_M * b.Ltilde2;
    const double c = a * std::sqrt(b.N_m / b.L_M);
    double first = 0.0;
    if (cNL > 0.0) {
        // exp(a^2 xi^2 Nm/LM)(erf(c eta) - erf(c xi)) evaluated in scaled form
        const double xz = c * xi;
        double scaled; // exp(xz^2) * (erf(c eta) - erf(c xi))
        if (std::isinf(eta)) {
            scaled = special::erfcx(xz);
        } else {
            const double xe = c * eta;
            scaled = special::erfcx(xz) - special::erfcx(xe) * std::exp(xz * xz - xe * xe);
        }
        first = a * std::pow(b.L_M, 1.5) * kSqrtPi /
                (2.0 * std::pow(b.L_m, 4) * std::sqrt(b.N_m)) * cNL * scaled;
    }
    return first + b.Ltilde2 / (b.L_m * b.L_m) / xi;
}

double lip_phi1(double eta, double alpha0, const CoefficientBounds& b, double a, double k) {
    if (k == 0.0) return 0.0;
    const double cN = b.Ntilde1 / b.L_m + b.N_M * b.Ltilde1 / (b.L_m * b.L_m);
    const double cK = b.K_M * b.Ltilde1 / (b.L_m * b.L_m) + b.Ktilde1 / b.L_m;
    if (cN == 0.0 && cK == 0.0) return 0.0;
    const double pref = phi_prefactor(a, k);
    const double d = eta * eta - alpha0 * alpha0;
    const double x_hi = a * a * b.N_M / b.L_m * d;
    if (x_hi > 350.0) return special::kInfinity;
    const double e_lo = std::exp(a * a * b.N_m / b.L_M * d);
    const double e_hi = std::exp(x_hi);
    const double r = alpha0 / eta;
    const double B1 = std::log(r) + eta / alpha0 + r - 0.5 * r * r - 1.5;
    const double B2 = 0.5 / (alpha0 * alpha0) + 0.5 / (eta * eta) - 1.0 / (alpha0 * eta);
    const double B3 = -std::log(r) + 2.0 * r - 0.5 * r * r - 1.5;
    double v = cK * e_hi * B2;
    if (cN > 0.0)
        v += b.K_M / b.L_m * a * a * cN * (e_lo * B1 + e_hi * e_hi * B3);
    return pref * v;
}

double lip_phi2(double xi, const CoefficientBounds& b, double a, double k) {
    if (k == 0.0) return 0.0;
    const double cNL = b.L_M * b.Ntilde2 + b.N_M * b.Ltilde2;
    if (cNL == 0.0 && b.Ktilde2 == 0.0 && b.Ltilde2 == 0.0) return 0.0;
    const double dR = b.R - a * a * b.N_M / b.L_m;
    if (!(dR > 0.0)) return special::kInfinity;
    const double s = std::sqrt(dR);
    const double k2 = k * k;
    double v = 0.0;
    if (cNL > 0.0)
        v += k2 * b.K_M / (16.0 * std::pow(kPi, 1.5) * std::pow(b.L_m, 3)) * cNL / s / xi;
    if (b.Ktilde2 > 0.0)
        v += k2 * b.Ktilde2 / (16.0 * a * a * std::pow(kPi, 1.5) * b.L_m * s) / xi;
    v += k2 * b.K_M / (16.0 * a * a * kPi * kPi) *
         (a * a * b.L_M / (std::pow(b.L_m, 4) * xi) * cNL * kSqrtPi / s +
          b.Ltilde2 / (b.L_m * b.L_m * xi * xi));
    return v;
}

} // namespace arcmelt::kernels
