#ifndef TOMO_SRC_QUAD_PHASE_HPP
#define TOMO_SRC_QUAD_PHASE_HPP

#include <complex>
#include <vector>

#include "tomo/field.hpp"
#include "tomo/grid.hpp"
#include "tomo/quadric_spec.hpp"

// Shared backend of the quadric-family inversions (classical and quantum,
// singular and thick). Evaluates
//
//   out(Q) = scale * sum_r Phi(r) e^{-i H_r(Q)} w_r,
//   H_r(Q) = half*(Q-r)'B(Q-r) + C'(Q-r),
//
// by splitting the phase into a Q-only factor, an r-only factor and the
// coupling e^{i 2 half (BQ)·r}, which for diagonal B reduces to a separable
// Fourier evaluation over the r axes; non-diagonal B falls back to a direct
// sum. Q-coordinate i of the form reads output axis coord_to_axis[i].

namespace tomo::detail {

using Complex = std::complex<double>;

ComplexField quad_phase_invert(const std::vector<Complex>& phi,
                               const std::vector<Axis>& r_axes, const QuadricSpec& q,
                               double half, const Grid& out,
                               const std::vector<int>& coord_to_axis, double scale,
                               double damping_eps);

} // namespace tomo::detail

#endif
