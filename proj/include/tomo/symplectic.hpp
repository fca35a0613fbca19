#ifndef TOMO_SYMPLECTIC_HPP
#define TOMO_SYMPLECTIC_HPP

#include <array>
#include <optional>
#include <vector>

#include "tomo/field.hpp"
#include "tomo/fock.hpp"
#include "tomo/tomogram.hpp"

namespace tomo::symplectic {

/// Homodyne tomogram: X profiles over a uniform theta grid on [0, 2pi).
/// Theta nodes carry full rectangle weights (periodic quadrature).
struct HomodyneTomogram {
    Axis theta;
    Axis X;
    std::optional<WindowSpec> window;
    bool binned = true;                       // histogram data (see Tomogram::binned)
    std::vector<std::array<double, 2>> row_smear; // deposit kernel widths per row
    std::vector<double> values;          // [theta][X]

    const double* row(int i) const { return values.data() + static_cast<std::size_t>(i) * X.count; }
    double* row(int i) { return values.data() + static_cast<std::size_t>(i) * X.count; }
    Tomogram as_tomogram() const;
};

/// Uniform theta grid of n nodes covering [0, 2pi).
Axis periodic_theta_axis(int n);

struct InvertOptions {
    double damping_eps = 1e-4;   // exp(-eps * |r|^2) on the parameter integral
    double imag_tolerance = 1e-3;
    bool estimate_tail = false;  // sensitivity to the outer half of the domain
};

struct InvertReport {
    double imag_residual = 0.0;
    double tail_sensitivity = 0.0;
    double hermitization_deviation = 0.0;
    double trace_before_renormalization = 0.0;
    double min_eigenvalue = 0.0;
};

struct RadialOptions {
    double r_max = 8.0;
    int n_r = 129;
    int n_theta = 0;             // 0: use the tomogram's theta grid
    double damping_eps = 1e-4;
    bool estimate_tail = false;
};

// Forward maps -------------------------------------------------------------

/// (1/2pi) int W(p,q) delta(X - mu q - nu p) dp dq by mass-deposit binning.
Tomogram symplectic_tomogram(const WignerField& W,
                             const std::vector<std::array<double, 2>>& mu_nu,
                             const Axis& X);
Tomogram symplectic_tomogram(const WignerField& W, const Axis& mu, const Axis& nu,
                             const Axis& X);

HomodyneTomogram homodyne_tomogram(const WignerField& W, const Axis& theta,
                                   const Axis& X);

/// Slices a symplectic tomogram along the ray (r cos t, r sin t):
/// R(X, t) = r * T(rX, r cos t, r sin t). Exact identity for analytic data.
XProfile homodyne_from_symplectic(const Tomogram& t, double r, double theta);

/// Two-mode center-of-mass map: single X constraint combining both modes.
/// Parameter tuples are (mu1, nu1, mu2, nu2).
Tomogram com_tomogram(const WignerField& W2,
                      const std::vector<std::array<double, 4>>& params, const Axis& X);
Tomogram com_tomogram(const WignerField& W2, const Axis& mu1, const Axis& nu1,
                      const Axis& mu2, const Axis& nu2, const Axis& X);

/// Two-mode ordinary map: one X constraint per mode (joint 2-D binning).
Tomogram two_mode_tomogram(const WignerField& W2, const Axis& mu1, const Axis& nu1,
                           const Axis& mu2, const Axis& nu2, const Axis& X1,
                           const Axis& X2);

// Inversions ---------------------------------------------------------------

/// W(p,q) = (N/2pi) int T e^{i(X - mu q - nu p)} dX dmu dnu, reduced to the
/// characteristic-function plane: the X transform at unit frequency gives
/// Phi(mu, nu), inverted by a separable Fourier evaluation onto `out`.
/// N is the window normalization for thick tomograms (1 otherwise).
WignerField invert_to_wigner(const Tomogram& t, const Grid& out,
                             const InvertOptions& opts = {},
                             InvertReport* report = nullptr);

/// Direct 3-D quadrature of the same integral; slow verification path.
WignerField invert_to_wigner_direct(const Tomogram& t, const Grid& out,
                                    const InvertOptions& opts = {});

/// rho = (N/2pi) int T e^{i(X I - mu Q - nu P)} dX dmu dnu on the truncated
/// basis, the exponential factored as e^{iX} exp(-i(mu Q + nu P)) and
/// computed by scaling-and-squaring on the buffered basis. The result is
/// Hermitized and trace-normalized; deviations are reported.
FockDensityMatrix invert_to_density(const Tomogram& t, int n_max,
                                    const InvertOptions& opts = {},
                                    InvertReport* report = nullptr);

/// rho = (1/2pi) int dX dr dtheta R(X, theta) r e^{ir(X I - Q cos - P sin)}.
/// `deconvolve` divides the radial transform by fourier(-r) of the window
/// (thick homodyne data); rect windows with sinc zeros on the quadrature
/// raise WindowNotInvertible naming the offending radii.
FockDensityMatrix homodyne_invert_to_density(const HomodyneTomogram& h, int n_max,
                                             const RadialOptions& opts = {},
                                             InvertReport* report = nullptr,
                                             bool deconvolve = false);

WignerField com_invert_to_wigner(const Tomogram& t, const Grid& out,
                                 const InvertOptions& opts = {},
                                 InvertReport* report = nullptr);
WignerField two_mode_invert_to_wigner(const Tomogram& t, const Grid& out,
                                      const InvertOptions& opts = {},
                                      InvertReport* report = nullptr);

} // namespace tomo::symplectic

#endif
