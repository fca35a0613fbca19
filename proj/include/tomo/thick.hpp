#ifndef TOMO_THICK_HPP
#define TOMO_THICK_HPP

#include <array>
#include <vector>

#include "tomo/field.hpp"
#include "tomo/fock.hpp"
#include "tomo/quadric.hpp"
#include "tomo/quadric_spec.hpp"
#include "tomo/symplectic.hpp"
#include "tomo/tomogram.hpp"
#include "tomo/window.hpp"

namespace tomo::thick {

using symplectic::HomodyneTomogram;
using symplectic::InvertOptions;
using symplectic::InvertReport;
using symplectic::RadialOptions;

/// (1/2pi) int W(p,q) window(X - mu q - nu p) dp dq, by direct window
/// evaluation (no binning). Delta windows delegate to the binned map.
Tomogram thick_symplectic_tomogram(const WignerField& W, const WindowSpec& window,
                                   const std::vector<std::array<double, 2>>& mu_nu,
                                   const Axis& X);
Tomogram thick_symplectic_tomogram(const WignerField& W, const WindowSpec& window,
                                   const Axis& mu, const Axis& nu, const Axis& X);

/// Per-parameter convolution in X of a singular tomogram with the window.
Tomogram thicken(const Tomogram& t, const WindowSpec& window);

/// W = (N_window/2pi) int T e^{i(X - mu q - nu p)} dX dmu dnu; same
/// reduction machinery as the singular inversion, with the window
/// normalization folded in (delta windows reproduce it exactly).
WignerField thick_invert_to_wigner(const Tomogram& t, const Grid& out,
                                   const InvertOptions& opts = {},
                                   InvertReport* report = nullptr);

/// Gaussian-window dequantizer (1/sqrt(2 pi s^2)) exp(-(X - mu Q - nu P)^2 /
/// (2 s^2)) on the truncated basis, evaluated spectrally.
Matrix thick_dequantizer_matrix(const WindowSpec& window, double X, double mu,
                                double nu, int n_max);

/// Quantizer (1/2pi) e^{s^2/2} e^{iX} exp(-i(mu Q + nu P)).
Matrix thick_quantizer_matrix(const WindowSpec& window, double X, double mu, double nu,
                              int n_max);

/// Window-smoothed quadric marginal: (1/(2pi)^N) int W window(X - H_r) dQ.
Tomogram thick_quadric_tomogram(const WignerField& W, const QuadricSpec& base,
                                const WindowSpec& window,
                                const std::vector<std::vector<double>>& r_points,
                                const Axis& X);
Tomogram thick_quadric_tomogram(const WignerField& W, const QuadricSpec& base,
                                const WindowSpec& window,
                                const std::vector<Axis>& r_axes, const Axis& X);

/// W = (|det B| N_window/(2pi)^N) int T e^{i(X - H_r)} dX dr.
WignerField thick_quadric_inverse(const Tomogram& t, const QuadricSpec& base,
                                  const Grid& out,
                                  const quadric::InvertOptions& opts = {},
                                  quadric::InvertReport* report = nullptr);

/// Window-smoothed homodyne marginal.
HomodyneTomogram thick_radon_tomogram(const WignerField& W, const WindowSpec& window,
                                      const Axis& theta, const Axis& X);

/// Deconvolving inversion of a thick homodyne tomogram: the radial transform
/// is divided by fourier(-r) before the radial reconstruction integral.
/// Windows whose transform vanishes on the quadrature (rect at sinc zeros)
/// raise WindowNotInvertible listing the radii.
FockDensityMatrix thick_radon_deconvolve_invert(const HomodyneTomogram& h, int n_max,
                                                const RadialOptions& opts = {},
                                                InvertReport* report = nullptr);

} // namespace tomo::thick

#endif
