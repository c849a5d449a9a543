#include "arcmelt/special.hpp"

#include <cmath>

namespace arcmelt::special {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

} // namespace

double erf(double x) {
    // libm's erf is correctly rounded to < 1 ulp on this platform, which is
    // well inside the 1e-15 absolute contract. Symmetry is exact.
    return std::erf(x);
}

double erfcx(double x) {
    if (x < 4.0) {
        // erfc is well scaled here and exp(x^2) <= e^16, so the direct
        // product keeps full relative accuracy.
        return std::exp(x * x) * std::erfc(x);
    }
    // Laplace continued fraction via modified Lentz. Converges in a few
    // dozen terms for x >= 4:
    //   erfcx(x) = (1/sqrt(pi)) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    const double tiny = 1e-300;
    double f = x > tiny ? x : tiny;
    double c = f;
    double d = 0.0;
    for (int n = 1; n <= 200; ++n) {
        const double an = 0.5 * n;
        d = x + an * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return 1.0 / (kSqrtPi * f);
}

double mills_g(double x) {
    if (x <= 0.0) return 0.0;
    return kSqrtPi * x * erfcx(x);
}

double one_minus_mills_g(double x) {
    if (x <= 0.0) return 1.0;
    if (x < 12.0) return 1.0 - mills_g(x);
    // Asymptotic series: 1 - G(x) = 1/(2x^2) - 3/(4x^4) + 15/(8x^6) - ...
    const double ix2 = 1.0 / (2.0 * x * x);
    return ix2 * (1.0 - ix2 * (3.0 - ix2 * (15.0 - 105.0 * ix2)));
}

double h_envelope(double eta, double N, double L, double z, double a) {
    if (!(z > 0.0) || !(N > 0.0) || !(L > 0.0) || !(a > 0.0))
        throw ModelError("h_envelope: N, L, a, z must be positive");
    if (eta < z) throw ModelError("h_envelope: eta < z");
    const double c = a * std::sqrt(N / L);
    double v = kSqrtPi * std::erf(c * z) + std::exp(-c * c * z * z) / (c * z);
    if (std::isinf(eta)) {
        v -= kSqrtPi;
    } else {
        v -= kSqrtPi * std::erf(c * eta) + std::exp(-c * c * eta * eta) / (c * eta);
    }
    return v;
}

double h_envelope_scaled(double eta, double N, double L, double z, double a) {
    if (!(z > 0.0) || !(N > 0.0) || !(L > 0.0) || !(a > 0.0))
        throw ModelError("h_envelope_scaled: N, L, a, z must be positive");
    if (eta < z) throw ModelError("h_envelope_scaled: eta < z");
    const double c = a * std::sqrt(N / L);
    const double xz = c * z;
    if (std::isinf(eta)) {
        // exp(xz^2) h(inf) = (1/xz)(1 - G(xz))
        return one_minus_mills_g(xz) / xz;
    }
    const double xe = c * eta;
    // exp(xz^2) h = sqrt(pi)[erfcx(xe) exp(xz^2-xe^2) - erfcx(xz)]
    //             + 1/xz - exp(xz^2-xe^2)/xe
    const double decay = std::exp(xz * xz - xe * xe); // <= 1
    return kSqrtPi * (erfcx(xe) * decay - erfcx(xz)) + 1.0 / xz - decay / xe;
}

namespace {

struct SimpsonState {
    const std::function<double(double)>* f;
    int max_depth;
    double abs_floor;       // per-call absolute floor
    bool depth_exceeded = false;
    double worst_err = 0.0;
};

double simpson_recurse(SimpsonState& st, double a, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = (*st.f)(lm);
    const double frm = (*st.f)(rm);
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4.0 * flm + fm);
    const double right = h6 * (fm + 4.0 * frm + fb);
    const double err = (left + right - whole) / 15.0;
    // Accept at half the nominal tolerance; the extrapolated value is usually
    // far better than err, and the invariants lean on that headroom.
    if (depth > 0 && (std::abs(err) <= 0.5 * tol || (b - a) < 1e-300)) {
        return left + right + err;
    }
    if (depth >= st.max_depth) {
        st.depth_exceeded = true;
        st.worst_err = std::max(st.worst_err, std::abs(err));
        return left + right + err;
    }
    const double half_tol = std::max(0.5 * tol, st.abs_floor);
    return simpson_recurse(st, a, m, fa, flm, fm, left, half_tol, depth + 1) +
           simpson_recurse(st, m, b, fm, frm, fb, right, half_tol, depth + 1);
}

double integrate_finite(const std::function<double(double)>& f, double lo, double hi,
                        const QuadratureSpec& spec) {
    if (lo == hi) return 0.0;
    const double fa = f(lo);
    const double fm = f(0.5 * (lo + hi));
    const double fb = f(hi);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);

    SimpsonState st{&f, spec.max_depth, 0.1 * spec.abs_tol};
    double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(whole));
    double result = simpson_recurse(st, lo, hi, fa, fm, fb, whole, tol, 0);

    // If the coarse magnitude estimate was far off, rerun once against the
    // refined magnitude so the relative criterion is honored.
    const double tol2 = std::max(spec.abs_tol, spec.rel_tol * std::abs(result));
    if (tol2 < 0.2 * tol) {
        SimpsonState st2{&f, spec.max_depth, 0.1 * spec.abs_tol};
        result = simpson_recurse(st2, lo, hi, fa, fm, fb, whole, tol2, 0);
        st = st2;
    }
    if (st.depth_exceeded) {
        throw QuadratureError("integrate: max_depth exceeded", result, st.worst_err);
    }
    return result;
}

} // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec) {
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) || spec.max_depth < 1)
        throw ConfigError("integrate: invalid quadrature spec");
    if (std::isinf(hi)) {
        // v = lo + s/(1-s) maps [0,1) onto [lo, inf); ds weight 1/(1-s)^2.
        // s is clamped just below 1 so the endpoint sample probes a huge
        // finite v instead of evaluating f at infinity.
        auto g = [&f, lo](double s) {
            const double sc = std::min(s, 1.0 - 0x1p-52);
            const double om = 1.0 - sc;
            const double v = lo + sc / om;
            const double fv = f(v);
            return fv == 0.0 ? 0.0 : fv / (om * om);
        };
        return integrate_finite(g, 0.0, 1.0, spec);
    }
    return integrate_finite(f, lo, hi, spec);
}

std::vector<double> cumulative(const std::function<double(double)>& f,
                               std::span<const double> nodes,
                               const QuadratureSpec& spec) {
    if (nodes.size() < 2) throw ConfigError("cumulative: need at least 2 nodes");
    std::vector<double> out(nodes.size(), 0.0);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!(nodes[i + 1] > nodes[i]))
            throw ConfigError("cumulative: nodes must be strictly ascending");
        out[i + 1] = out[i] + integrate_finite(f, nodes[i], nodes[i + 1], spec);
    }
    return out;
}

} // namespace arcmelt::special
