#ifndef TOMO_CLASSICAL_HPP
#define TOMO_CLASSICAL_HPP

#include <cstdint>
#include <vector>

#include "tomo/field.hpp"
#include "tomo/quadric_spec.hpp"
#include "tomo/tomogram.hpp"

namespace tomo::classical {

struct InvertOptions {
    double damping_eps = 1e-4;   // exp(-eps |parameter|^2) tail damping
    double imag_tolerance = 1e-3;
};

struct InvertReport {
    double imag_residual = 0.0;
    double damping_eps = 0.0;
};

/// Reconstruction with a singular region excluded: mask[i] == 0 marks points
/// that were not reconstructed (field value set to zero there).
struct MaskedField {
    RealField field;
    std::vector<std::uint8_t> mask;
};

/// Marginal of f over the level sets X = (x - alpha)'B(x - alpha), one row
/// per shift alpha, by mass-deposit binning.
Tomogram quadric_tomogram(const ClassicalField& f, const QuadricSpec& q,
                          const std::vector<std::vector<double>>& alpha_points,
                          const Axis& X);
/// Uniform alpha grid over m axes (enables the closed-form inverse).
Tomogram quadric_tomogram(const ClassicalField& f, const QuadricSpec& q,
                          const std::vector<Axis>& alpha_axes, const Axis& X);

/// f(x) = (|det B|/pi^m) int omega e^{i(X - (x-a)'B(x-a))} dX da, evaluated
/// through the X transform at unit frequency and a quadratic-phase Fourier
/// sum over alpha. Requires |det B| > 1e-12.
ClassicalField quadric_inverse(const Tomogram& t, const QuadricSpec& q, const Grid& out,
                               const InvertOptions& opts = {},
                               InvertReport* report = nullptr);

/// Direct quadrature of the same inversion integral at a single point;
/// slow verification path for tests.
double quadric_inverse_direct_at(const Tomogram& t, const QuadricSpec& q,
                                 const std::vector<double>& x,
                                 const InvertOptions& opts = {});

/// Marginal over the curves X = mu q + nu q p (field axes ordered (p, q)).
Tomogram deformed_radon(const ClassicalField& f, const Axis& mu, const Axis& nu,
                        const Axis& X);

/// f(q,p) = int dX dmu dnu/(2pi)^2 omega |q| e^{i(X - mu q - nu q p)}.
/// Points with |q| < q_min are masked (the map is singular at q = 0); if
/// require_all_points is set, such output points raise
/// SingularRegionRequested instead.
MaskedField deformed_radon_inverse(const Tomogram& t, const Grid& out,
                                   double q_min = 0.25,
                                   bool require_all_points = false,
                                   const InvertOptions& opts = {},
                                   InvertReport* report = nullptr);

} // namespace tomo::classical

#endif
