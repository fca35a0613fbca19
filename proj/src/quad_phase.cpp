#include "quad_phase.hpp"

#include <cmath>

#include "tomo/kernels.hpp"

namespace tomo::detail {

namespace {

double dot_form(const QuadricSpec& q, const double* a, const double* b) {
    double acc = 0.0;
    for (int i = 0; i < q.dim; ++i) {
        double row = 0.0;
        for (int j = 0; j < q.dim; ++j) row += q.B[i * q.dim + j] * b[j];
        acc += a[i] * row;
    }
    return acc;
}

} // namespace

ComplexField quad_phase_invert(const std::vector<Complex>& phi,
                               const std::vector<Axis>& r_axes, const QuadricSpec& q,
                               double half, const Grid& out,
                               const std::vector<int>& coord_to_axis, double scale,
                               double damping_eps) {
    const int d = q.dim;
    const bool has_c = !q.C.empty();

    // g(r) = Phi(r) e^{-i(half r'Br - C'r)} e^{-eps |r|^2}
    std::vector<Complex> g(phi.size());
    {
        std::vector<int> idx(d);
        std::vector<double> r(d);
        Grid rgrid(r_axes);
        for (std::size_t f = 0; f < phi.size(); ++f) {
            rgrid.unravel(f, idx.data());
            double s2 = 0.0;
            for (int a = 0; a < d; ++a) {
                r[a] = r_axes[a].at(idx[a]);
                s2 += r[a] * r[a];
            }
            double ph = -half * dot_form(q, r.data(), r.data());
            if (has_c)
                for (int a = 0; a < d; ++a) ph += q.C[a] * r[a];
            g[f] = phi[f] * std::polar(std::exp(-damping_eps * s2), ph);
        }
    }

    ComplexField cf(out);
    const int nd = out.dims();
    std::vector<int> axis_to_coord(nd, -1);
    for (int i = 0; i < d; ++i) axis_to_coord[coord_to_axis[i]] = i;

    if (q.diagonal()) {
        // Separable: coupling factorizes as prod_a e^{i (2 half B_aa Q_a) r_a}.
        std::vector<std::vector<double>> targets(d);
        for (int i = 0; i < d; ++i) {
            const Axis& ax = out.axes[coord_to_axis[i]];
            targets[i].resize(ax.count);
            for (int j = 0; j < ax.count; ++j)
                targets[i][j] = 2.0 * half * q.B[i * d + i] * ax.at(j);
        }
        auto s = kernels::separable_fourier(g, r_axes, targets, 1.0);
        // s layout: [coord 0][coord 1]...; permute into the output layout and
        // fold in the Q-only phase.
        std::vector<int> oidx(nd), cidx(d);
        std::vector<double> Q(d);
        std::vector<Axis> caxes(d);
        for (int i = 0; i < d; ++i) caxes[i] = out.axes[coord_to_axis[i]];
        Grid cgrid(caxes);
        for (std::size_t f = 0; f < cf.values.size(); ++f) {
            out.unravel(f, oidx.data());
            for (int i = 0; i < d; ++i) cidx[i] = oidx[coord_to_axis[i]];
            for (int i = 0; i < d; ++i) Q[i] = out.axes[coord_to_axis[i]].at(cidx[i]);
            double ph = -half * dot_form(q, Q.data(), Q.data());
            if (has_c)
                for (int a = 0; a < d; ++a) ph -= q.C[a] * Q[a];
            cf.values[f] = s[cgrid.ravel(cidx.data())] * std::polar(scale, ph);
        }
        return cf;
    }

    // General B: direct sum per output point.
    std::vector<double> rw(phi.size());
    std::vector<std::vector<double>> rpts(phi.size(), std::vector<double>(d));
    {
        Grid rgrid(r_axes);
        std::vector<int> idx(d);
        for (std::size_t f = 0; f < phi.size(); ++f) {
            rgrid.unravel(f, idx.data());
            double w = 1.0;
            for (int a = 0; a < d; ++a) {
                rpts[f][a] = r_axes[a].at(idx[a]);
                w *= r_axes[a].step();
                if (idx[a] == 0 || idx[a] == r_axes[a].count - 1) w *= 0.5;
            }
            rw[f] = w;
        }
    }
    const std::size_t nout = cf.values.size();
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t f = 0; f < static_cast<std::ptrdiff_t>(nout); ++f) {
        std::vector<int> oidx(nd);
        std::vector<double> Q(d), BQ(d);
        out.unravel(static_cast<std::size_t>(f), oidx.data());
        for (int i = 0; i < d; ++i) Q[i] = out.axes[coord_to_axis[i]].at(oidx[coord_to_axis[i]]);
        for (int i = 0; i < d; ++i) {
            BQ[i] = 0.0;
            for (int j = 0; j < d; ++j) BQ[i] += q.B[i * d + j] * Q[j];
        }
        double ph0 = -half * dot_form(q, Q.data(), Q.data());
        if (has_c)
            for (int a = 0; a < d; ++a) ph0 -= q.C[a] * Q[a];
        Complex acc{0.0, 0.0};
        for (std::size_t r = 0; r < g.size(); ++r) {
            double ph = 0.0;
            for (int a = 0; a < d; ++a) ph += 2.0 * half * BQ[a] * rpts[r][a];
            acc += g[r] * std::polar(rw[r], ph);
        }
        cf.values[static_cast<std::size_t>(f)] = acc * std::polar(scale, ph0);
    }
    return cf;
}

} // namespace tomo::detail
