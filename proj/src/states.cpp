#include "tomo/states.hpp"

#include <cmath>

#include "tomo/kernels.hpp"

namespace tomo {

WignerField wigner_from_density(const FockDensityMatrix& rho, const Grid& grid) {
    return kernels::wigner_transform(rho.rho, grid);
}

WignerField wigner_analytic(const StateSpec& spec, const Grid& grid) {
    if (grid.dims() != 2)
        throw GridTooSmall("wigner_analytic: single-mode grids only");
    Complex alpha{0.0, 0.0};
    if (spec.kind == StateSpec::Kind::coherent) alpha = spec.alpha;
    else if (spec.kind != StateSpec::Kind::vacuum)
        throw UnsupportedState("wigner_analytic: only vacuum and coherent states");

    const double q0 = std::sqrt(2.0) * alpha.real();
    const double p0 = std::sqrt(2.0) * alpha.imag();
    WignerField out(grid);
    const Axis& pax = grid.axes[0];
    const Axis& qax = grid.axes[1];
    std::size_t k = 0;
    for (int i = 0; i < pax.count; ++i) {
        const double dp = pax.at(i) - p0;
        for (int j = 0; j < qax.count; ++j, ++k) {
            const double dq = qax.at(j) - q0;
            out.values[k] = 2.0 * std::exp(-dp * dp - dq * dq);
        }
    }
    return out;
}

} // namespace tomo
