#include "arcmelt/profile.hpp"

#include <cmath>

namespace arcmelt::profile {

void SimilarityProfile::validate(double tol) const {
    if (nodes.size() < 2 || nodes.size() != values.size())
        throw ModelError("profile: malformed grid");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!(nodes[i + 1] > nodes[i]))
            throw ModelError("profile: nodes must be strictly ascending");
    for (double v : values)
        if (!std::isfinite(v)) throw ModelError("profile: non-finite value");
    const double at_xi = phase == Phase::liquid ? values.back() : values.front();
    if (std::abs(at_xi) > tol)
        throw ModelError("profile: u must vanish at the melting front");
}

double SimilarityProfile::sup_distance(const SimilarityProfile& other) const {
    if (other.values.size() != values.size())
        throw ModelError("profile: sup_distance needs matching grids");
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        d = std::max(d, std::abs(values[i] - other.values[i]));
    return d;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw ConfigError("linspace: need n >= 2");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    v.front() = lo;
    v.back() = hi;
    return v;
}

double solid_eta_max(double xi, const coeffs::CoefficientBounds& b, double a, double decay) {
    return std::sqrt(xi * xi + std::log(1.0 / decay) * b.L_M / (a * a * b.N_m));
}

SimilarityProfile initial_liquid(double alpha0, double xi, int grid_size) {
    SimilarityProfile p;
    p.phase = Phase::liquid;
    p.nodes = linspace(alpha0, xi, grid_size);
    p.values.assign(p.nodes.size(), 0.0);
    return p;
}

SimilarityProfile initial_solid(double xi, double eta_max, int grid_size) {
    SimilarityProfile p;
    p.phase = Phase::solid;
    p.nodes = linspace(xi, eta_max, grid_size);
    p.values.resize(p.nodes.size());
    for (std::size_t i = 0; i < p.nodes.size(); ++i)
        p.values[i] = -(1.0 - xi / p.nodes[i]);
    p.values.front() = 0.0;
    return p;
}

} // namespace arcmelt::profile
