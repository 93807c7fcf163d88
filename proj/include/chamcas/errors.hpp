#pragma once

#include <stdexcept>
#include <string>

namespace chamcas {

/// Bad or inconsistent run configuration (key=value files, CLI overrides).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Mixing quantities of different dimension or unit system.
struct dimension_error : std::runtime_error {
    explicit dimension_error(const std::string& what) : std::runtime_error(what) {}
};

/// Quadrature did not converge within the allowed refinement levels.
struct quadrature_error : std::runtime_error {
    quadrature_error(const std::string& what, double last_estimate)
        : std::runtime_error(what), last_error_estimate(last_estimate) {}
    double last_error_estimate;
};

/// Root bracketing/iteration failure.
struct root_error : std::runtime_error {
    explicit root_error(const std::string& what) : std::runtime_error(what) {}
};

/// File read/write failure.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace chamcas
