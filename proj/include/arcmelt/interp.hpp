#pragma once

// Monotone-preserving cubic Hermite interpolation. Node slopes come from a
// local cubic fit (exact for cubic data), then get the Fritsch-Carlson
// limiter so monotone data yields a monotone interpolant.

#include <cstddef>
#include <vector>

#include "arcmelt/errors.hpp"

namespace arcmelt::interp {

class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> nodes, std::vector<double> values);

    double operator()(double x) const;
    double derivative(double x) const;

    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& values() const { return y_; }
    bool empty() const { return x_.empty(); }

private:
    std::size_t segment(double x) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_; // limited node slopes
};

} // namespace arcmelt::interp
