#include "arcmelt/interp.hpp"

#include <algorithm>
#include <cmath>

namespace arcmelt::interp {

namespace {

// Derivative at x of the cubic through (t[0..3], v[0..3]).
double lagrange3_derivative(const double* t, const double* v, double x) {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        double denom = 1.0;
        for (int l = 0; l < 4; ++l)
            if (l != k) denom *= t[k] - t[l];
        double num = 0.0;
        for (int m = 0; m < 4; ++m) {
            if (m == k) continue;
            double prod = 1.0;
            for (int l = 0; l < 4; ++l)
                if (l != k && l != m) prod *= x - t[l];
            num += prod;
        }
        acc += v[k] * num / denom;
    }
    return acc;
}

} // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> nodes, std::vector<double> values)
    : x_(std::move(nodes)), y_(std::move(values)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw ConfigError("MonotoneCubic: need >= 2 nodes and matching values");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i + 1] > x_[i]))
            throw ConfigError("MonotoneCubic: nodes must be strictly ascending");

    m_.assign(n, 0.0);
    if (n == 2) {
        m_[0] = m_[1] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    } else if (n == 3) {
        // derivative of the parabola through all three points
        for (std::size_t i = 0; i < 3; ++i) {
            const double t0 = x_[0], t1 = x_[1], t2 = x_[2], x = x_[i];
            m_[i] = y_[0] * (2 * x - t1 - t2) / ((t0 - t1) * (t0 - t2)) +
                    y_[1] * (2 * x - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
                    y_[2] * (2 * x - t0 - t1) / ((t2 - t0) * (t2 - t1));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = i == 0 ? 0 : i - 1;
            j = std::min(j, n - 4);
            m_[i] = lagrange3_derivative(&x_[j], &y_[j], x_[i]);
        }
    }

    // Fritsch-Carlson limiting against the interval secants.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
        if (d == 0.0) {
            m_[i] = 0.0;
            m_[i + 1] = 0.0;
            continue;
        }
        double alpha = m_[i] / d;
        double beta = m_[i + 1] / d;
        if (alpha < 0.0) { m_[i] = 0.0; alpha = 0.0; }
        if (beta < 0.0) { m_[i + 1] = 0.0; beta = 0.0; }
        const double s = alpha * alpha + beta * beta;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            m_[i] = tau * alpha * d;
            m_[i + 1] = tau * beta * d;
        }
    }
}

std::size_t MonotoneCubic::segment(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

double MonotoneCubic::operator()(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h * h10 * m_[i] + h01 * y_[i + 1] + h * h11 * m_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double d00 = (6 * t2 - 6 * t) / h;
    const double d10 = 3 * t2 - 4 * t + 1;
    const double d01 = (-6 * t2 + 6 * t) / h;
    const double d11 = 3 * t2 - 2 * t;
    return d00 * y_[i] + d10 * m_[i] + d01 * y_[i + 1] + d11 * m_[i + 1];
}

} // namespace arcmelt::interp
