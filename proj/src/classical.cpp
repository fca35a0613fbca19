#include "tomo/classical.hpp"

#include <cmath>
#include <sstream>

#include "quad_phase.hpp"
#include "tomo/kernels.hpp"

namespace tomo::classical {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

using kernels::QuadForm;

void check_dropped(double fraction, const char* what) {
    if (fraction > 1e-3) {
        std::ostringstream os;
        os << what << ": X grid misses " << fraction * 100.0 << "% of the mass";
        throw GridTooSmall(os.str());
    }
}

} // namespace

Tomogram quadric_tomogram(const ClassicalField& f, const QuadricSpec& q,
                          const std::vector<std::vector<double>>& alpha_points,
                          const Axis& X) {
    const int m = f.grid.dims();
    if (q.dim != m) throw DimensionMismatch("quadric_tomogram: B dimension mismatch");
    std::vector<QuadForm> forms;
    forms.reserve(alpha_points.size());
    for (const auto& alpha : alpha_points)
        forms.push_back(QuadForm::full_quadratic(q.B, alpha, m));
    auto binned = kernels::bin_marginal(f, forms, X, 1.0);
    check_dropped(binned.dropped_fraction, "quadric_tomogram");

    Tomogram t;
    t.family = Family::quadric;
    for (int a = 0; a < m; ++a) t.param_names.push_back("alpha" + std::to_string(a + 1));
    t.params = alpha_points;
    t.X_axes = {X};
    t.values = std::move(binned.values);
    t.infer_param_axes();
    return t;
}

Tomogram quadric_tomogram(const ClassicalField& f, const QuadricSpec& q,
                          const std::vector<Axis>& alpha_axes, const Axis& X) {
    std::vector<std::vector<double>> pts;
    Grid agrid(alpha_axes);
    std::vector<int> idx(agrid.dims());
    for (std::size_t k = 0; k < agrid.size(); ++k) {
        agrid.unravel(k, idx.data());
        std::vector<double> pt(agrid.dims());
        for (int a = 0; a < agrid.dims(); ++a) pt[a] = alpha_axes[a].at(idx[a]);
        pts.push_back(std::move(pt));
    }
    Tomogram t = quadric_tomogram(f, q, pts, X);
    t.param_axes = alpha_axes;
    return t;
}

ClassicalField quadric_inverse(const Tomogram& t, const QuadricSpec& q, const Grid& out,
                               const InvertOptions& opts, InvertReport* report) {
    if (t.family != Family::quadric)
        throw DegenerateQuadric("quadric_inverse: quadric tomogram required");
    q.require_invertible();
    const auto& axes = t.require_param_axes();
    const int m = q.dim;
    if (static_cast<int>(axes.size()) != m || out.dims() != m)
        throw DimensionMismatch("quadric_inverse: dimension mismatch");

    auto phi = kernels::char_rows(t.values, static_cast<int>(t.params.size()),
                                  t.X_axes[0], 1.0, t.binned);
    if (t.binned)
        for (auto& v : phi) v /= kernels::bin_sinc(1.0, t.X_axes[0].step());
    std::vector<int> coord_to_axis(m);
    for (int i = 0; i < m; ++i) coord_to_axis[i] = i;
    const double scale = std::abs(q.determinant()) / std::pow(kPi, m);
    auto cf = detail::quad_phase_invert(phi, axes, q, 1.0, out, coord_to_axis, scale,
                                        opts.damping_eps);
    const double imag_res = cf.max_abs_imag() / std::max(cf.max_abs_real(), 1e-300);
    if (report) {
        report->imag_residual = imag_res;
        report->damping_eps = opts.damping_eps;
    }
    if (imag_res > opts.imag_tolerance)
        throw ImagResidualTooLarge("quadric_inverse: imaginary residual " +
                                   std::to_string(imag_res));
    return cf.real_part();
}

double quadric_inverse_direct_at(const Tomogram& t, const QuadricSpec& q,
                                 const std::vector<double>& x, const InvertOptions& opts) {
    q.require_invertible();
    const auto& axes = t.require_param_axes();
    const int m = q.dim;
    const Axis& X = t.X_axes[0];
    const double scale = std::abs(q.determinant()) / std::pow(kPi, m);
    double smear = 1.0;
    if (t.binned) smear = 1.0 / kernels::bin_sinc(1.0, X.step());
    std::complex<double> acc{0.0, 0.0};
    std::vector<double> d(m);
    for (std::size_t r = 0; r < t.params.size(); ++r) {
        double w = 1.0, s2 = 0.0;
        for (int a = 0; a < m; ++a) {
            const Axis& ax = axes[a];
            w *= ax.step();
            const double v = t.params[r][a];
            if (std::abs(v - ax.min) < 1e-12 || std::abs(v - ax.max) < 1e-12) w *= 0.5;
            d[a] = x[a] - v;
            s2 += v * v;
        }
        double form = 0.0;
        for (int i = 0; i < m; ++i) {
            double row = 0.0;
            for (int j = 0; j < m; ++j) row += q.B[i * m + j] * d[j];
            form += d[i] * row;
        }
        const double damp = std::exp(-opts.damping_eps * s2);
        const double* row = t.row(r);
        std::complex<double> xacc{0.0, 0.0};
        for (int k = 0; k < X.count; ++k) {
            double wx = X.step();
            if (!t.binned && (k == 0 || k == X.count - 1)) wx *= 0.5;
            xacc += row[k] * std::polar(wx, X.at(k));
        }
        acc += xacc * smear * std::polar(w * damp, -form);
    }
    return (acc * scale).real();
}

Tomogram deformed_radon(const ClassicalField& f, const Axis& mu, const Axis& nu,
                        const Axis& X) {
    if (f.grid.dims() != 2)
        throw DimensionMismatch("deformed_radon: 2-D fields only (n = 1)");
    std::vector<QuadForm> forms;
    forms.reserve(static_cast<std::size_t>(mu.count) * nu.count);
    std::vector<std::vector<double>> tuples;
    for (int i = 0; i < mu.count; ++i)
        for (int j = 0; j < nu.count; ++j) {
            // axes (p, q): X = mu q + nu q p -> A_{pq} = nu, b = (0, mu)
            QuadForm form;
            form.d = 2;
            form.A = {0.0, nu.at(j), nu.at(j), 0.0};
            form.b = {0.0, mu.at(i)};
            forms.push_back(std::move(form));
            tuples.push_back({mu.at(i), nu.at(j)});
        }
    auto binned = kernels::bin_marginal(f, forms, X, 1.0);
    check_dropped(binned.dropped_fraction, "deformed_radon");

    Tomogram t;
    t.family = Family::deformed;
    t.param_names = {"mu", "nu"};
    t.params = std::move(tuples);
    t.X_axes = {X};
    t.values = std::move(binned.values);
    t.param_axes = std::vector<Axis>{mu, nu};
    return t;
}

MaskedField deformed_radon_inverse(const Tomogram& t, const Grid& out, double q_min,
                                   bool require_all_points, const InvertOptions& opts,
                                   InvertReport* report) {
    if (t.family != Family::deformed)
        throw DimensionMismatch("deformed_radon_inverse: deformed tomogram required");
    if (out.dims() != 2)
        throw DimensionMismatch("deformed_radon_inverse: 2-D output grid required");
    const auto& axes = t.require_param_axes();
    const Axis& mu = axes[0];
    const Axis& nu = axes[1];
    const Axis& pax = out.axes[0];
    const Axis& qax = out.axes[1];

    if (require_all_points) {
        for (int j = 0; j < qax.count; ++j)
            if (std::abs(qax.at(j)) < q_min) {
                std::ostringstream os;
                os << "deformed_radon_inverse: output point q = " << qax.at(j)
                   << " lies inside the singular band |q| < " << q_min;
                throw SingularRegionRequested(os.str());
            }
    }

    auto phi = kernels::char_rows(t.values, static_cast<int>(t.params.size()),
                                  t.X_axes[0], 1.0, t.binned);
    const double smear = t.binned ? 1.0 / kernels::bin_sinc(1.0, t.X_axes[0].step()) : 1.0;
    for (std::size_t r = 0; r < phi.size(); ++r) {
        double s2 = 0.0;
        for (double v : t.params[r]) s2 += v * v;
        phi[r] *= smear * std::exp(-opts.damping_eps * s2);
    }

    // Stage 1: A[nu][q] = sum_mu Phi e^{-i mu q} w_mu.
    auto stage1 = kernels::separable_fourier(
        phi, {mu}, {qax.points()}, -1.0); // layout [nu][q] after axis rotation
    // careful: separable_fourier over a single axis leaves layout [rest][q],
    // rest being the nu index, which is what we want.

    ComplexField cf(out);
    const int nq = qax.count, np = pax.count, nn = nu.count;
    const double scale = 1.0 / (kTwoPi * kTwoPi);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < np; ++i) {
        const double p = pax.at(i);
        for (int j = 0; j < nq; ++j) {
            const double qv = qax.at(j);
            if (std::abs(qv) < q_min) continue;
            std::complex<double> acc{0.0, 0.0};
            for (int k = 0; k < nn; ++k) {
                double w = nu.step();
                if (k == 0 || k == nn - 1) w *= 0.5;
                acc += stage1[static_cast<std::size_t>(k) * nq + j] *
                       std::polar(w, -nu.at(k) * qv * p);
            }
            cf.values[static_cast<std::size_t>(i) * nq + j] = acc * std::abs(qv) * scale;
        }
    }

    MaskedField result;
    result.mask.assign(out.size(), 1);
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < nq; ++j)
            if (std::abs(qax.at(j)) < q_min)
                result.mask[static_cast<std::size_t>(i) * nq + j] = 0;

    double max_im = 0.0, max_re = 0.0;
    for (std::size_t k = 0; k < cf.values.size(); ++k) {
        if (!result.mask[k]) continue;
        max_im = std::max(max_im, std::abs(cf.values[k].imag()));
        max_re = std::max(max_re, std::abs(cf.values[k].real()));
    }
    const double imag_res = max_im / std::max(max_re, 1e-300);
    if (report) {
        report->imag_residual = imag_res;
        report->damping_eps = opts.damping_eps;
    }
    if (imag_res > opts.imag_tolerance)
        throw ImagResidualTooLarge("deformed_radon_inverse: imaginary residual " +
                                   std::to_string(imag_res));
    result.field = cf.real_part();
    return result;
}

} // namespace tomo::classical
