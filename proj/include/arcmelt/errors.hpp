#pragma once

#include <stdexcept>
#include <string>

namespace arcmelt {

// Configuration / input validation problems. CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Model-domain violations (ignition not reached, point outside a zone, ...).
// CLI maps these to exit code 1.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures of the solver machinery (quadrature, iteration, root
// bracketing). CLI maps these to exit code 1.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace arcmelt
