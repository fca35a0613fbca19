#include "tomo/window.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tomo {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

WindowSpec WindowSpec::gaussian(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian window: sigma must be > 0");
    return WindowSpec{Kind::gaussian, sigma, 0.0};
}

WindowSpec WindowSpec::rect(double width) {
    if (!(width > 0.0)) throw std::invalid_argument("rect window: width must be > 0");
    return WindowSpec{Kind::rect, 0.0, width};
}

double WindowSpec::value(double z) const {
    switch (kind) {
        case Kind::delta:
            throw std::logic_error("delta window has no pointwise value");
        case Kind::gaussian:
            return std::exp(-z * z / (2.0 * sigma * sigma)) / std::sqrt(2.0 * kPi * sigma * sigma);
        case Kind::rect:
            return std::abs(z) < 0.5 * width ? 1.0 / width : 0.0;
    }
    return 0.0;
}

double WindowSpec::fourier(double k) const {
    switch (kind) {
        case Kind::delta:
            return 1.0;
        case Kind::gaussian:
            return std::exp(-0.5 * sigma * sigma * k * k);
        case Kind::rect: {
            const double u = 0.5 * k * width;
            if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
            return std::sin(u) / u;
        }
    }
    return 1.0;
}

double WindowSpec::norm_factor() const {
    const double f = fourier(-1.0);
    if (std::abs(f) < 1e-10)
        throw WindowNotInvertibleAtUnitFrequency(
            "window transform vanishes at unit frequency: " + describe());
    return 1.0 / f;
}

double WindowSpec::support_halfwidth() const {
    switch (kind) {
        case Kind::delta: return 0.0;
        case Kind::gaussian: return 8.6 * sigma;
        case Kind::rect: return 0.5 * width;
    }
    return 0.0;
}

std::vector<double> WindowSpec::fourier_zeros_on(const std::vector<double>& radii) const {
    std::vector<double> zeros;
    if (kind != Kind::rect) return zeros;
    for (double r : radii) {
        if (r <= 0.0) continue;
        // sinc(width*r/2) = 0 iff width*r = 2*pi*m, m = 1, 2, ...
        const double k = width * r / kPi;
        const double m = std::round(k / 2.0);
        if (m >= 1.0 && std::abs(k - 2.0 * m) < 1e-9) zeros.push_back(r);
    }
    return zeros;
}

std::string WindowSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::delta: os << "delta"; break;
        case Kind::gaussian: os << "gaussian(sigma=" << sigma << ")"; break;
        case Kind::rect: os << "rect(width=" << width << ")"; break;
    }
    return os.str();
}

} // namespace tomo
