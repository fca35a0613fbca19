#ifndef TOMO_ERRORS_HPP
#define TOMO_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace tomo {

/// Base class for all numerical-precondition failures raised by the library.
/// The CLI maps these to exit code 3.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct TruncationTooSmall : Error {
    using Error::Error;
};

struct GridTooSmall : Error {
    using Error::Error;
};

struct DegenerateQuadric : Error {
    using Error::Error;
};

struct ImagResidualTooLarge : Error {
    using Error::Error;
};

struct SingularRegionRequested : Error {
    using Error::Error;
};

struct MissingParameterPoint : Error {
    using Error::Error;
};

struct UnsupportedState : Error {
    using Error::Error;
};

struct TraceNotDecayed : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NonPhysicalResult : Error {
    using Error::Error;
};

struct WindowNotInvertibleAtUnitFrequency : Error {
    using Error::Error;
};

/// Raised by the thick Radon deconvolution when the window transform vanishes
/// somewhere on the radial quadrature. Carries the offending radii.
struct WindowNotInvertible : Error {
    std::vector<double> zero_radii;
    WindowNotInvertible(const std::string& msg, std::vector<double> radii)
        : Error(msg), zero_radii(std::move(radii)) {}
};

/// Configuration / schema violations. The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace tomo

#endif
