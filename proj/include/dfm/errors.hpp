#ifndef DFM_ERRORS_HPP
#define DFM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dfm {

// Bad input data (fracture tables, reference tables, malformed rows).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Inconsistent case setup (bc layout not aligned with mesh, bad units, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Solver did not reach the requested tolerance.
struct NumericalError : std::runtime_error {
    NumericalError(const std::string& msg, double residual)
        : std::runtime_error(msg), rel_residual(residual) {}
    double rel_residual;
};

// Close non-connected fractures could not be separated within the level cap.
struct ResolutionError : std::runtime_error {
    explicit ResolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Pure-Neumann flux correction with unbalanced data.
struct CompatibilityError : std::runtime_error {
    CompatibilityError(const std::string& msg, double defect_)
        : std::runtime_error(msg), defect(defect_) {}
    double defect;
};

// Subelement value assignment ran out of donors.
struct InterpretationError : std::runtime_error {
    explicit InterpretationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dfm

#endif
