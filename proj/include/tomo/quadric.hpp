#ifndef TOMO_QUADRIC_HPP
#define TOMO_QUADRIC_HPP

#include <vector>

#include "tomo/classical.hpp"
#include "tomo/field.hpp"
#include "tomo/fock.hpp"
#include "tomo/quadric_spec.hpp"
#include "tomo/tomogram.hpp"

namespace tomo::quadric {

using classical::InvertOptions;
using classical::InvertReport;

/// Quadratic symbol H(Q) = (Q-r)'B(Q-r)/2 + C'(Q-r) with Q = (p..., q...)
/// and r = (mu..., nu...). B is 2N x 2N symmetric.
struct QuadraticHamiltonianSymbol {
    QuadricSpec quadric;
    double value(const std::vector<double>& Q) const;
};

/// W-level quadric tomogram: (1/(2pi)^N) int W delta(X - H_r(Q)) dQ, one row
/// per shift r. `base` carries B and C; the shifts come from r_points.
Tomogram quantum_quadric_tomogram(const WignerField& W, const QuadricSpec& base,
                                  const std::vector<std::vector<double>>& r_points,
                                  const Axis& X);
Tomogram quantum_quadric_tomogram(const WignerField& W, const QuadricSpec& base,
                                  const std::vector<Axis>& r_axes, const Axis& X);

/// W(Q) = (|det B|/(2pi)^N) int T e^{i(X - H_r(Q))} dX dr. The constant is
/// validated by round-trip in the test suites.
WignerField quantum_quadric_inverse(const Tomogram& t, const QuadricSpec& base,
                                    const Grid& out, const InvertOptions& opts = {},
                                    InvertReport* report = nullptr);

/// Two single-mode subsystems with their own quadrics: joint binning over
/// (X1, X2) with shifts r_j = (mu_j, nu_j) per subsystem; parameter tuples
/// are (mu1, nu1, mu2, nu2).
Tomogram multipartite_quadric_tomogram(const WignerField& W2, const QuadricSpec& q1,
                                       const QuadricSpec& q2,
                                       const std::vector<Axis>& r_axes, const Axis& X1,
                                       const Axis& X2);

WignerField multipartite_quadric_inverse(const Tomogram& t, const QuadricSpec& q1,
                                         const QuadricSpec& q2, const Grid& out,
                                         const InvertOptions& opts = {},
                                         InvertReport* report = nullptr);

/// Tomogram over the curves X = xi q + nu q p at the Wigner level (the Weyl
/// symbol of the symmetrized q p product is q p): delegates to the deformed
/// Radon map applied to W/(2pi).
Tomogram deformed_quantum_tomogram(const WignerField& W, const Axis& xi, const Axis& nu,
                                   const Axis& X);

/// Operator-level spectral evaluation of the quadric tomogram for
/// cross-checks: eigendecomposition of the truncated H with Gaussian-
/// smoothed spectral weights (sigma_spec in X units, default 2 X bins).
std::vector<double> quadric_tomogram_spectral(const Matrix& rho, const QuadricSpec& spec,
                                              const Axis& X, double sigma_spec);

} // namespace tomo::quadric

#endif
