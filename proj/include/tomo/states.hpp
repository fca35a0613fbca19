#ifndef TOMO_STATES_HPP
#define TOMO_STATES_HPP

#include "tomo/field.hpp"
#include "tomo/fock.hpp"

namespace tomo {

/// Wigner function of a truncated state on a single-mode (p, q) grid,
/// normalized so the phase-space integral equals 2*pi. The grid must be wide
/// enough that the state has no support at the boundary (GridTooSmall).
WignerField wigner_from_density(const FockDensityMatrix& rho, const Grid& grid);

/// Exact Gaussian evaluation for vacuum and coherent states; the oracle for
/// wigner_from_density. Throws UnsupportedState for other kinds.
WignerField wigner_analytic(const StateSpec& spec, const Grid& grid);

} // namespace tomo

#endif
