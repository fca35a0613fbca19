#ifndef TOMO_WINDOW_HPP
#define TOMO_WINDOW_HPP

#include <complex>
#include <string>
#include <vector>

#include "tomo/errors.hpp"

namespace tomo {

/// Window function used by the thick tomographic maps. All windows are
/// normalized so that fourier(0) = 1 (unit mass).
///
/// Conventions: fourier(k) = \int window(z) e^{-ikz} dz, and the inversion
/// normalization is norm_factor = 1 / fourier(-1).
struct WindowSpec {
    enum class Kind { delta, gaussian, rect };

    Kind kind = Kind::delta;
    double sigma = 0.0; // gaussian
    double width = 0.0; // rect: value 1/width on |z| < width/2

    static WindowSpec delta() { return WindowSpec{Kind::delta, 0.0, 0.0}; }
    static WindowSpec gaussian(double sigma);
    static WindowSpec rect(double width);

    bool is_delta() const { return kind == Kind::delta; }

    /// Pointwise value; infinite-spike deltas are not evaluable.
    double value(double z) const;

    /// Closed-form Fourier transform \int window(z) e^{-ikz} dz.
    double fourier(double k) const;

    /// 1 / fourier(-1); throws WindowNotInvertibleAtUnitFrequency when the
    /// transform vanishes there (rect windows at sinc zeros).
    double norm_factor() const;

    /// Half-width of the numerically relevant support (value below ~1e-16
    /// of peak outside). Deltas report zero.
    double support_halfwidth() const;

    /// Radii r in [0, r_max] sampled by `radii` where fourier(-r) vanishes.
    /// Rect windows vanish at width*r = 2*pi*m; detection uses the exact
    /// rational test on width*r/pi.
    std::vector<double> fourier_zeros_on(const std::vector<double>& radii) const;

    std::string describe() const;
};

} // namespace tomo

#endif
