#ifndef TOMO_EXPM_HPP
#define TOMO_EXPM_HPP

#include <Eigen/Dense>
#include <complex>

namespace tomo {

/// Matrix exponential by scaling and squaring with a [13/13] Pade
/// approximant and 1-norm based scale selection.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

/// exp(i * scale * h) for Hermitian h through its eigendecomposition.
/// Used where operator functions are evaluated spectrally.
Eigen::MatrixXcd expm_hermitian_phase(const Eigen::MatrixXcd& h, double scale);

} // namespace tomo

#endif
