#ifndef TOMO_GRID_HPP
#define TOMO_GRID_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tomo {

/// Uniform 1-D grid of sample points, min and max inclusive.
/// Used both for field axes and for tomogram X grids, where the point at(i)
/// is the center of a bin of width step().
struct Axis {
    double min = 0.0;
    double max = 0.0;
    int count = 0;

    Axis() = default;
    Axis(double mn, double mx, int n) : min(mn), max(mx), count(n) {
        if (n < 2) throw std::invalid_argument("Axis: count must be >= 2");
        if (!(mx > mn)) throw std::invalid_argument("Axis: max must exceed min");
    }

    double step() const { return (max - min) / (count - 1); }
    double at(int i) const { return min + step() * i; }

    std::vector<double> points() const {
        std::vector<double> p(count);
        for (int i = 0; i < count; ++i) p[i] = at(i);
        return p;
    }

    bool operator==(const Axis& o) const {
        return min == o.min && max == o.max && count == o.count;
    }
};

/// Rectangular grid over several axes, row-major with axis 0 slowest.
/// Phase-space grids order the axes as (p_1..p_N, q_1..q_N).
struct Grid {
    std::vector<Axis> axes;

    Grid() = default;
    explicit Grid(std::vector<Axis> a) : axes(std::move(a)) {}

    std::size_t size() const {
        std::size_t n = 1;
        for (const auto& a : axes) n *= static_cast<std::size_t>(a.count);
        return n;
    }

    int dims() const { return static_cast<int>(axes.size()); }

    /// Product of axis steps (volume of one cell).
    double cell_volume() const {
        double v = 1.0;
        for (const auto& a : axes) v *= a.step();
        return v;
    }

    /// Decompose a flat index into per-axis indices.
    void unravel(std::size_t flat, int* idx) const {
        for (int a = dims() - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(flat % axes[a].count);
            flat /= axes[a].count;
        }
    }

    std::size_t ravel(const int* idx) const {
        std::size_t flat = 0;
        for (int a = 0; a < dims(); ++a)
            flat = flat * axes[a].count + idx[a];
        return flat;
    }

    /// Trapezoid quadrature weight of the node with the given per-axis
    /// indices: half weight on boundary nodes, times the cell volume.
    double trapezoid_weight(const int* idx) const {
        double w = 1.0;
        for (int a = 0; a < dims(); ++a) {
            w *= axes[a].step();
            if (idx[a] == 0 || idx[a] == axes[a].count - 1) w *= 0.5;
        }
        return w;
    }

    bool operator==(const Grid& o) const { return axes == o.axes; }
};

/// Phase-space grid for N modes: 2N axes ordered (p_1..p_N, q_1..q_N).
/// Enforces the minimum sampling required by the field invariants.
inline Grid phase_space_grid(const std::vector<Axis>& axes) {
    if (axes.empty() || axes.size() % 2 != 0)
        throw std::invalid_argument("phase_space_grid: need 2N axes");
    for (const auto& a : axes) {
        if (a.count < 8)
            throw std::invalid_argument("phase_space_grid: count >= 8 per axis");
    }
    return Grid(axes);
}

/// Square single-mode grid on [lo, hi]^2.
inline Grid phase_space_grid_1mode(double lo, double hi, int n) {
    return phase_space_grid({Axis(lo, hi, n), Axis(lo, hi, n)});
}

} // namespace tomo

#endif
