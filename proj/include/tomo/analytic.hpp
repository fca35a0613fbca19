#ifndef TOMO_ANALYTIC_HPP
#define TOMO_ANALYTIC_HPP

#include <complex>

#include "tomo/field.hpp"
#include "tomo/grid.hpp"
#include "tomo/tomogram.hpp"

// Closed-form references for Gaussian states and the first Fock states.
// These back the verification suites: exact evaluation, no quadrature error.

namespace tomo::analytic {

using Complex = std::complex<double>;

/// Gaussian-window symplectic tomogram of a coherent state:
/// value = exp(-(X - Xbar)^2 / s2) / sqrt(pi s2) with
/// s2 = mu^2 + nu^2 + 2 sigma^2 and Xbar = sqrt(2)(mu Re a + nu Im a).
/// sigma = 0 gives the singular tomogram; alpha = 0 the vacuum.
double coherent_tomogram_value(Complex alpha, double sigma, double mu, double nu,
                               double X);

/// Singular symplectic tomogram of the first excited Fock state.
double fock1_tomogram_value(double mu, double nu, double X);

/// Singular symplectic tomogram of a thermal state (Gaussian, width
/// (mu^2 + nu^2)(nbar + 1/2) in variance).
double thermal_tomogram_value(double nbar, double mu, double nu, double X);

/// Wigner closed forms, normalized to integral 2*pi.
double wigner_vacuum(double p, double q);
double wigner_coherent(Complex alpha, double p, double q);
double wigner_fock(int n, double p, double q); // Laguerre form
double wigner_thermal(double nbar, double p, double q);

WignerField wigner_field_coherent(Complex alpha, const Grid& grid);
WignerField wigner_field_fock(int n, const Grid& grid);
WignerField wigner_field_thermal(double nbar, const Grid& grid);

/// Tomogram of a coherent state sampled exactly on a (mu, nu) x X grid.
Tomogram coherent_symplectic_tomogram(Complex alpha, double sigma, const Axis& mu,
                                      const Axis& nu, const Axis& X);
Tomogram fock1_symplectic_tomogram(const Axis& mu, const Axis& nu, const Axis& X);

/// Quadric tomogram of a coherent state for H = (p^2 + q^2)/2 shifted by r:
/// 2 exp(-2X - c^2) I0(2 c sqrt(2X)) for X >= 0, where c is the distance
/// between the state center and the quadric center.
double coherent_quadric_value(Complex alpha, double shift_p, double shift_q, double X);

/// The same profile smoothed by a Gaussian window of width sigma.
double vacuum_thick_quadric_value(double sigma, double X);

} // namespace tomo::analytic

#endif
