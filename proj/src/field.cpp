#include "tomo/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace tomo {

double RealField::integral() const {
    const int nd = grid.dims();
    std::vector<int> idx(nd);
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        grid.unravel(i, idx.data());
        acc += values[i] * grid.trapezoid_weight(idx.data());
    }
    return acc;
}

void RealField::fill(const std::function<double(const std::vector<double>&)>& f) {
    const int nd = grid.dims();
    std::vector<int> idx(nd);
    std::vector<double> x(nd);
    for (std::size_t i = 0; i < values.size(); ++i) {
        grid.unravel(i, idx.data());
        for (int a = 0; a < nd; ++a) x[a] = grid.axes[a].at(idx[a]);
        values[i] = f(x);
    }
}

double RealField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double ComplexField::max_abs_real() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v.real()));
    return m;
}

double ComplexField::max_abs_imag() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v.imag()));
    return m;
}

RealField ComplexField::real_part() const {
    RealField f(grid);
    for (std::size_t i = 0; i < values.size(); ++i) f.values[i] = values[i].real();
    return f;
}

double l2_relative_error(const RealField& a, const RealField& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("l2_relative_error: grids differ");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        num += d * d;
        den += b.values[i] * b.values[i];
    }
    if (den == 0.0) return std::sqrt(num);
    return std::sqrt(num / den);
}

RealField tensor_product_two_mode(const RealField& mode1, const RealField& mode2) {
    if (mode1.grid.dims() != 2 || mode2.grid.dims() != 2)
        throw std::invalid_argument("tensor_product_two_mode: inputs must be single-mode");
    const Axis& p1 = mode1.grid.axes[0];
    const Axis& q1 = mode1.grid.axes[1];
    const Axis& p2 = mode2.grid.axes[0];
    const Axis& q2 = mode2.grid.axes[1];
    RealField out(Grid({p1, p2, q1, q2}));
    const int np1 = p1.count, np2 = p2.count, nq1 = q1.count, nq2 = q2.count;
    std::size_t k = 0;
    for (int ip1 = 0; ip1 < np1; ++ip1)
        for (int ip2 = 0; ip2 < np2; ++ip2)
            for (int iq1 = 0; iq1 < nq1; ++iq1) {
                const double w1 = mode1.values[static_cast<std::size_t>(ip1) * nq1 + iq1];
                for (int iq2 = 0; iq2 < nq2; ++iq2, ++k)
                    out.values[k] = w1 * mode2.values[static_cast<std::size_t>(ip2) * nq2 + iq2];
            }
    return out;
}

} // namespace tomo
