#include "arcmelt/coefficients.hpp"

#include <algorithm>
#include <cmath>

namespace arcmelt::coeffs {

CoefficientFamily::CoefficientFamily(FamilyKind kind, std::vector<double> params,
                                     std::vector<std::pair<double, double>> points)
    : kind_(kind), params_(std::move(params)), points_(std::move(points)) {}

CoefficientFamily CoefficientFamily::constant(double value) {
    return {FamilyKind::constant, {value}, {}};
}

CoefficientFamily CoefficientFamily::affine(double intercept, double slope) {
    return {FamilyKind::affine, {intercept, slope}, {}};
}

CoefficientFamily CoefficientFamily::exponential(double scale, double rate) {
    return {FamilyKind::exponential, {scale, rate}, {}};
}

CoefficientFamily CoefficientFamily::tabulated(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2)
        throw ConfigError("tabulated family: need at least 2 points");
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (!(points[i + 1].first > points[i].first))
            throw ConfigError("tabulated family: theta nodes must be strictly increasing");
    return {FamilyKind::tabulated, {}, std::move(points)};
}

double CoefficientFamily::operator()(double theta) const {
    switch (kind_) {
        case FamilyKind::constant:
            return params_[0];
        case FamilyKind::affine:
            return params_[0] + params_[1] * theta;
        case FamilyKind::exponential:
            return params_[0] * std::exp(params_[1] * theta);
        case FamilyKind::tabulated: {
            if (theta < points_.front().first || theta > points_.back().first)
                throw ModelError("tabulated family: theta outside declared range");
            auto it = std::upper_bound(points_.begin(), points_.end(), theta,
                                       [](double t, const auto& p) { return t < p.first; });
            std::size_t i = it == points_.begin()
                                ? 0
                                : static_cast<std::size_t>(it - points_.begin()) - 1;
            i = std::min(i, points_.size() - 2);
            const auto& [t0, v0] = points_[i];
            const auto& [t1, v1] = points_[i + 1];
            return v0 + (v1 - v0) * (theta - t0) / (t1 - t0);
        }
    }
    throw ModelError("unreachable family kind");
}

bool CoefficientFamily::positive_on(double theta_lo, double theta_hi, int samples) const {
    for (int i = 0; i < samples; ++i) {
        const double t = theta_lo + (theta_hi - theta_lo) * i / (samples - 1);
        double v;
        try {
            v = (*this)(t);
        } catch (const ModelError&) {
            return false;
        }
        if (!(v > 0.0) || !std::isfinite(v)) return false;
    }
    return true;
}

StarredCoeffs CoefficientSet::starred(Phase phase, double u) const {
    const double theta = theta_m * (u + 1.0);
    if (phase == Phase::liquid)
        return {c1(theta) * gamma1(theta), lambda1(theta), rho1(theta) / theta_m};
    return {c2(theta) * gamma2(theta), lambda2(theta), rho2(theta) / theta_m};
}

double CoefficientSet::N_star(Phase phase, double u) const { return starred(phase, u).N; }
double CoefficientSet::L_star(Phase phase, double u) const { return starred(phase, u).L; }
double CoefficientSet::K_star(Phase phase, double u) const { return starred(phase, u).K; }

void CoefficientBounds::validate(double a) const {
    if (!(L_m > 0) || !(L_M >= L_m)) throw ConfigError("bounds: need 0 < L_m <= L_M");
    if (!(N_m > 0) || !(N_M >= N_m)) throw ConfigError("bounds: need 0 < N_m <= N_M");
    if (!(K_m >= 0) || !(K_M >= K_m)) throw ConfigError("bounds: need 0 <= K_m <= K_M");
    if (Ntilde1 < 0 || Ntilde2 < 0 || Ltilde1 < 0 || Ltilde2 < 0 || Ktilde1 < 0 || Ktilde2 < 0)
        throw ConfigError("bounds: Lipschitz constants must be nonnegative");
    if (!(R >= a * a * N_M / L_m * (1.0 - 1e-12)))
        throw ConfigError("bounds: R must be >= a^2 N_M / L_m");
}

CoefficientBounds estimate_bounds(const CoefficientSet& set,
                                  const BoundsEstimationSettings& st, double a) {
    if (st.samples < 2) throw ConfigError("estimate_bounds: samples must be >= 2");
    if (!(st.u_max > st.u_min)) throw ConfigError("estimate_bounds: degenerate u range");

    const int n = st.samples;
    std::vector<double> N1(n), L1(n), K1(n), N2(n), L2(n), K2(n);
    const double du = (st.u_max - st.u_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double u = st.u_min + du * i;
        const auto s1 = set.starred(Phase::liquid, u);
        const auto s2 = set.starred(Phase::solid, u);
        N1[i] = s1.N; L1[i] = s1.L; K1[i] = s1.K;
        N2[i] = s2.N; L2[i] = s2.L; K2[i] = s2.K;
        for (double v : {s1.N, s1.L, s1.K, s2.N, s2.L, s2.K})
            if (!std::isfinite(v))
                throw ModelError("estimate_bounds: non-finite coefficient value at u=" +
                                 std::to_string(u));
    }

    auto minmax = [](const std::vector<double>& v) {
        auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return std::pair<double, double>{*lo, *hi};
    };
    auto max_quotient = [du](const std::vector<double>& v) {
        double q = 0.0;
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            q = std::max(q, std::abs(v[i + 1] - v[i]) / du);
        return q;
    };

    CoefficientBounds b;
    const auto [l1lo, l1hi] = minmax(L1);
    const auto [l2lo, l2hi] = minmax(L2);
    b.L_m = std::min(l1lo, l2lo);
    b.L_M = std::max(l1hi, l2hi);
    const auto [n1lo, n1hi] = minmax(N1);
    const auto [n2lo, n2hi] = minmax(N2);
    b.N_m = std::min(n1lo, n2lo);
    b.N_M = std::max(n1hi, n2hi);
    const auto [k1lo, k1hi] = minmax(K1);
    const auto [k2lo, k2hi] = minmax(K2);
    b.K_m = k1lo;
    b.K_M = std::max(k1hi, k2hi);
    b.Ntilde1 = max_quotient(N1) * st.safety_factor;
    b.Ntilde2 = max_quotient(N2) * st.safety_factor;
    b.Ltilde1 = max_quotient(L1) * st.safety_factor;
    b.Ltilde2 = max_quotient(L2) * st.safety_factor;
    b.Ktilde1 = max_quotient(K1) * st.safety_factor;
    b.Ktilde2 = max_quotient(K2) * st.safety_factor;
    b.R = st.R_override.value_or(a * a * b.N_M / b.L_m);
    b.validate(a);
    return b;
}

bool HypothesisReport::all_pass() const {
    for (const auto& c : checks)
        if (c.evaluated && !c.pass) return false;
    return true;
}

const HypothesisCheck* HypothesisReport::find(const std::string& tag) const {
    for (const auto& c : checks)
        if (c.tag == tag) return &c;
    return nullptr;
}

namespace {

// numerical slack for comparisons against sampled sups/infs
constexpr double kSlack = 1e-9;

void check_range(HypothesisReport& rep, const std::string& tag, const std::vector<double>& v,
                 const std::vector<double>& us, double lo, double hi) {
    HypothesisCheck c{tag};
    double worst = 0.0, wl = 0.0, wr = 0.0, wu = 0.0;
    bool found = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double viol = std::max(lo - v[i], v[i] - hi);
        if (!found || viol > worst) {
            worst = viol;
            wu = us[i];
            wl = v[i];
            wr = v[i] > hi ? hi : lo;
            found = true;
        }
    }
    const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
    c.pass = worst <= kSlack * scale;
    c.worst_point = wu;
    c.lhs = wl;
    c.rhs = wr;
    rep.checks.push_back(c);
}

void check_lipschitz(HypothesisReport& rep, const std::string& tag, const std::vector<double>& v,
                     const std::vector<double>& us, double tilde) {
    HypothesisCheck c{tag};
    const double du = us[1] - us[0];
    double worst_q = 0.0, wu = us[0];
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double q = std::abs(v[i + 1] - v[i]) / du;
        if (q > worst_q) {
            worst_q = q;
            wu = us[i];
        }
    }
    c.lhs = worst_q;
    c.rhs = tilde;
    c.worst_point = wu;
    c.pass = worst_q <= tilde * (1.0 + kSlack) + kSlack;
    rep.checks.push_back(c);
}

} // namespace

HypothesisReport check_hypotheses(const CoefficientBounds& b, const CoefficientSet& set,
                                  const BoundsEstimationSettings& st, double a,
                                  const std::vector<double>* solid_nodes,
                                  const std::vector<double>* solid_values) {
    b.validate(a);
    HypothesisReport rep;

    const int n = std::max(st.samples, 1025);
    std::vector<double> us(n), N1(n), L1(n), K1(n), N2(n), L2(n);
    for (int i = 0; i < n; ++i) {
        us[i] = st.u_min + (st.u_max - st.u_min) * i / (n - 1);
        const auto s1 = set.starred(Phase::liquid, us[i]);
        const auto s2 = set.starred(Phase::solid, us[i]);
        N1[i] = s1.N; L1[i] = s1.L; K1[i] = s1.K;
        N2[i] = s2.N; L2[i] = s2.L;
    }

    check_range(rep, "(44)", L1, us, b.L_m, b.L_M);
    check_range(rep, "(45)", L2, us, b.L_m, b.L_M);
    check_lipschitz(rep, "(46)", L1, us, b.Ltilde1);
    check_lipschitz(rep, "(47)", L2, us, b.Ltilde2);
    check_range(rep, "(48)", N1, us, b.N_m, b.N_M);
    check_range(rep, "(49)", N2, us, b.N_m, b.N_M);
    check_lipschitz(rep, "(50)", N1, us, b.Ntilde1);
    check_lipschitz(rep, "(51)", N2, us, b.Ntilde2);
    check_range(rep, "(52)", K1, us, b.K_m, b.K_M);
    check_lipschitz(rep, "(54)", K1, us, b.Ktilde1);

    // (53), (55): source decay along the solid unknown. Checked pointwise on
    // the supplied iterate; (55) uses a tail-preserving bump perturbation so
    // both arguments stay admissible.
    HypothesisCheck c53{"(53)"};
    HypothesisCheck c55{"(55)"};
    if (solid_nodes && solid_values && solid_nodes->size() >= 2) {
        const auto& sn = *solid_nodes;
        const auto& sv = *solid_values;
        const double xi = sn.front();
        double worst53 = -1e300, worst55 = -1e300;
        const double bump_norm = 0.01;
        for (std::size_t i = 0; i < sn.size(); ++i) {
            const double s = sn[i];
            const double decay = std::exp(-b.R * s * s);
            const double k2 = set.K_star(Phase::solid, sv[i]);
            const double m53 = k2 - b.K_M * decay;
            if (m53 > worst53) {
                worst53 = m53;
                c53.worst_point = s;
                c53.lhs = k2;
                c53.rhs = b.K_M * decay;
            }
            const double d = s - xi;
            const double bump = bump_norm * (d / (1.0 + d)) * std::exp(-d);
            const double k2p = set.K_star(Phase::solid, sv[i] + bump);
            const double m55 = std::abs(k2 - k2p) - b.Ktilde2 * decay * std::abs(bump);
            if (m55 > worst55) {
                worst55 = m55;
                c55.worst_point = s;
                c55.lhs = std::abs(k2 - k2p);
                c55.rhs = b.Ktilde2 * decay * std::abs(bump);
            }
        }
        c53.pass = worst53 <= kSlack * std::max(1.0, b.K_M);
        c55.pass = worst55 <= kSlack * std::max(1.0, b.K_M);
    } else {
        c53.evaluated = false;
        c53.note = "needs a solid iterate; verified per iterate during the solve";
        c55.evaluated = false;
        c55.note = c53.note;
    }
    rep.checks.push_back(c53);
    rep.checks.push_back(c55);
    return rep;
}

} // namespace arcmelt::coeffs
