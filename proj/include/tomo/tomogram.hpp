#ifndef TOMO_TOMOGRAM_HPP
#define TOMO_TOMOGRAM_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tomo/grid.hpp"
#include "tomo/window.hpp"

namespace tomo {

enum class Family {
    symplectic,
    homodyne,
    center_of_mass,
    two_mode,
    quadric,
    multipartite_quadric,
    deformed,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Real samples over (parameter tuple, X bins). A window marks the tomogram
/// as thick. Values are densities in X: integrating a row over X gives the
/// mass captured for that parameter point.
struct Tomogram {
    Family family = Family::symplectic;
    std::optional<WindowSpec> window;
    std::vector<std::string> param_names;
    std::vector<std::vector<double>> params; // one tuple per row block
    std::vector<Axis> X_axes;                // 1 or 2 axes
    std::vector<double> values;              // [param][X...] row-major
    std::optional<std::vector<Axis>> param_axes; // set when params form a grid

    /// True when the values came from mass-deposit binning (histogram data);
    /// the inversions then divide the X transform by the exact bin-smearing
    /// factor sinc(k dX / 2). Smooth point samples (thick maps, closed-form
    /// evaluations) leave this false. Not serialized: CSV readers infer it
    /// from the family (singular maps are always binned, thick maps never).
    bool binned = true;

    /// Component widths of the per-row deposit kernel (the X transform of a
    /// binned row carries a factor prod_i sinc(k w_i / 2), which the
    /// inversions divide out). Filled by the linear-section maps; empty when
    /// unknown (curved sections, CSV input).
    std::vector<std::vector<double>> row_smear;

    bool thick() const { return window.has_value(); }
    std::size_t bins_per_param() const {
        std::size_t n = 1;
        for (const auto& a : X_axes) n *= a.count;
        return n;
    }
    double* row(std::size_t p) { return values.data() + p * bins_per_param(); }
    const double* row(std::size_t p) const { return values.data() + p * bins_per_param(); }

    /// Index of the parameter tuple matching `pt` within tolerance; throws
    /// MissingParameterPoint otherwise.
    std::size_t find_param(const std::vector<double>& pt, double tol = 1e-9) const;

    /// Row integral over X (trapezoid on bin centers equals bin-mass sum).
    double row_mass(std::size_t p) const;

    /// Requires params to form the cartesian product of uniform axes; throws
    /// when absent and not inferable.
    const std::vector<Axis>& require_param_axes() const;

    void infer_param_axes();
};

/// X-profile at a fixed parameter point (used by the homodyne slicing op).
struct XProfile {
    Axis X;
    std::vector<double> values;
};

/// CSV with a `family,[window,]<params...>,<X...>,value` header at 17
/// significant digits; byte-identical across runs of the same inputs.
void write_csv(std::ostream& os, const Tomogram& t);
void write_csv_file(const std::string& path, const Tomogram& t);
Tomogram read_csv(std::istream& is);
Tomogram read_csv_file(const std::string& path);

std::string format_double(double v); // %.17g

} // namespace tomo

#endif
