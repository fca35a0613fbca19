#ifndef TOMO_FIELD_HPP
#define TOMO_FIELD_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "tomo/grid.hpp"

namespace tomo {

/// Real function sampled on a uniform grid. Serves both Wigner fields
/// (normalized to (2pi)^N over phase space) and classical densities.
struct RealField {
    Grid grid;
    std::vector<double> values;

    RealField() = default;
    explicit RealField(Grid g) : grid(std::move(g)), values(grid.size(), 0.0) {}
    RealField(Grid g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    /// Trapezoid-rule integral over all axes.
    double integral() const;

    /// Fill from a callable taking the per-axis coordinates.
    void fill(const std::function<double(const std::vector<double>&)>& f);

    double max_abs() const;
};

using WignerField = RealField;
using ClassicalField = RealField;

/// Complex-valued companion used by inverse transforms before the real part
/// is taken; keeps the imaginary residual inspectable.
struct ComplexField {
    Grid grid;
    std::vector<std::complex<double>> values;

    ComplexField() = default;
    explicit ComplexField(Grid g) : grid(std::move(g)), values(grid.size(), {0.0, 0.0}) {}

    double max_abs_real() const;
    double max_abs_imag() const;

    /// Real part as a RealField; callers check the imaginary residual.
    RealField real_part() const;
};

/// Relative L2 distance between two fields on the same grid.
double l2_relative_error(const RealField& a, const RealField& b);

/// Pointwise product of two single-mode fields into a two-mode field with
/// axes (p1, p2, q1, q2). Both inputs must be single-mode.
RealField tensor_product_two_mode(const RealField& mode1, const RealField& mode2);

} // namespace tomo

#endif
