#include "tomo/symplectic.hpp"

#include <cmath>
#include <sstream>

#include "tomo/kernels.hpp"

namespace tomo::symplectic {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kDroppedMassTolerance = 1e-3;

using kernels::QuadForm;

void check_dropped(double fraction, const char* what) {
    if (fraction > kDroppedMassTolerance) {
        std::ostringstream os;
        os << what << ": X grid misses " << fraction * 100.0 << "% of the mass";
        throw GridTooSmall(os.str());
    }
}

QuadForm line_form(double mu, double nu) {
    return QuadForm::linear({nu, mu}); // axes (p, q): X = mu q + nu p
}

Tomogram make_symplectic(const WignerField& W,
                         const std::vector<std::array<double, 2>>& mu_nu,
                         const Axis& X) {
    if (W.grid.dims() != 2)
        throw GridTooSmall("symplectic_tomogram: single-mode Wigner field required");
    std::vector<QuadForm> forms;
    forms.reserve(mu_nu.size());
    for (const auto& [mu, nu] : mu_nu) forms.push_back(line_form(mu, nu));
    auto binned = kernels::bin_marginal(W, forms, X, 1.0 / kTwoPi);
    check_dropped(binned.dropped_fraction, "symplectic_tomogram");

    Tomogram t;
    t.family = Family::symplectic;
    t.param_names = {"mu", "nu"};
    const double hp = W.grid.axes[0].step(), hq = W.grid.axes[1].step();
    for (const auto& [mu, nu] : mu_nu) {
        t.params.push_back({mu, nu});
        t.row_smear.push_back({std::abs(nu) * hp, std::abs(mu) * hq});
    }
    t.X_axes = {X};
    t.values = std::move(binned.values);
    return t;
}

/// Characteristic values Phi(row) with thick normalization and damping folded
/// in; rows must follow the row-major order of the param axes.
std::vector<Complex> characteristic_plane(const Tomogram& t, double damping_eps) {
    auto phi = kernels::char_rows(t.values, static_cast<int>(t.params.size()),
                                  t.X_axes[0], 1.0, t.binned);
    double norm = 1.0;
    if (t.thick()) norm = t.window->norm_factor();
    if (t.binned) norm /= kernels::bin_sinc(1.0, t.X_axes[0].step());
    for (std::size_t r = 0; r < phi.size(); ++r) {
        double s2 = 0.0;
        for (double v : t.params[r]) s2 += v * v;
        double f = norm * std::exp(-damping_eps * s2);
        if (t.binned && r < t.row_smear.size())
            for (double w : t.row_smear[r]) f /= kernels::bin_sinc(1.0, w);
        phi[r] *= f;
    }
    return phi;
}

/// Shared tail-sensitivity estimate: relative change when the outer half of
/// the parameter domain is excluded.
double tail_sensitivity_field(const std::vector<Complex>& full,
                              const std::vector<Complex>& inner) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < full.size(); ++i) {
        num += std::norm(full[i] - inner[i]);
        den += std::norm(full[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

std::vector<Complex> zero_outer_half(const Tomogram& t, std::vector<Complex> phi) {
    double extent = 0.0;
    for (const auto& pt : t.params)
        for (double v : pt) extent = std::max(extent, std::abs(v));
    for (std::size_t r = 0; r < phi.size(); ++r) {
        for (double v : t.params[r])
            if (std::abs(v) > 0.5 * extent) { phi[r] = {0.0, 0.0}; break; }
    }
    return phi;
}

FockDensityMatrix finalize_density(Matrix rho_raw, int n_max, InvertReport* report) {
    if (rho_raw.rows() != n_max + 1)
        throw DimensionMismatch("finalize_density: unexpected dimension");
    double herm_dev = 0.0;
    Matrix herm = hermitize(rho_raw, &herm_dev);
    const double tr = herm.trace().real();
    FockDensityMatrix rho(herm / tr);
    const double min_eig = rho.min_eigenvalue();
    if (report) {
        report->hermitization_deviation = herm_dev;
        report->trace_before_renormalization = tr;
        report->min_eigenvalue = min_eig;
    }
    if (min_eig < -1e-3)
        throw NonPhysicalResult("reconstructed density matrix has eigenvalue " +
                                std::to_string(min_eig));
    return rho;
}

} // namespace

Axis periodic_theta_axis(int n) {
    if (n < 4) throw std::invalid_argument("periodic_theta_axis: need at least 4 nodes");
    const double step = kTwoPi / n;
    return Axis(0.0, kTwoPi - step, n);
}

Tomogram HomodyneTomogram::as_tomogram() const {
    Tomogram t;
    t.family = Family::homodyne;
    t.window = window;
    t.binned = binned;
    t.param_names = {"theta"};
    t.X_axes = {X};
    for (int i = 0; i < theta.count; ++i) {
        t.params.push_back({theta.at(i)});
        if (!row_smear.empty())
            t.row_smear.push_back({row_smear[i][0], row_smear[i][1]});
    }
    t.values = values;
    return t;
}

Tomogram symplectic_tomogram(const WignerField& W,
                             const std::vector<std::array<double, 2>>& mu_nu,
                             const Axis& X) {
    return make_symplectic(W, mu_nu, X);
}

Tomogram symplectic_tomogram(const WignerField& W, const Axis& mu, const Axis& nu,
                             const Axis& X) {
    std::vector<std::array<double, 2>> pts;
    pts.reserve(static_cast<std::size_t>(mu.count) * nu.count);
    for (int i = 0; i < mu.count; ++i)
        for (int j = 0; j < nu.count; ++j) pts.push_back({mu.at(i), nu.at(j)});
    Tomogram t = make_symplectic(W, pts, X);
    t.param_axes = std::vector<Axis>{mu, nu};
    return t;
}

HomodyneTomogram homodyne_tomogram(const WignerField& W, const Axis& theta,
                                   const Axis& X) {
    std::vector<QuadForm> forms;
    forms.reserve(theta.count);
    for (int i = 0; i < theta.count; ++i)
        forms.push_back(line_form(std::cos(theta.at(i)), std::sin(theta.at(i))));
    auto binned = kernels::bin_marginal(W, forms, X, 1.0 / kTwoPi);
    check_dropped(binned.dropped_fraction, "homodyne_tomogram");
    HomodyneTomogram h;
    h.theta = theta;
    h.X = X;
    const double hp = W.grid.axes[0].step(), hq = W.grid.axes[1].step();
    for (int i = 0; i < theta.count; ++i)
        h.row_smear.push_back({std::abs(std::sin(theta.at(i))) * hp,
                               std::abs(std::cos(theta.at(i))) * hq});
    h.values = std::move(binned.values);
    return h;
}

XProfile homodyne_from_symplectic(const Tomogram& t, double r, double theta) {
    if (!(r > 0.0)) throw std::invalid_argument("homodyne_from_symplectic: r must be > 0");
    const std::size_t p = t.find_param({r * std::cos(theta), r * std::sin(theta)});
    const Axis& Xt = t.X_axes[0];
    XProfile out;
    out.X = Axis(Xt.min / r, Xt.max / r, Xt.count);
    out.values.resize(Xt.count);
    const double* row = t.row(p);
    for (int k = 0; k < Xt.count; ++k) out.values[k] = r * row[k];
    return out;
}

Tomogram com_tomogram(const WignerField& W2,
                      const std::vector<std::array<double, 4>>& params, const Axis& X) {
    if (W2.grid.dims() != 4)
        throw GridTooSmall("com_tomogram: two-mode Wigner field required");
    std::vector<QuadForm> forms;
    forms.reserve(params.size());
    for (const auto& [mu1, nu1, mu2, nu2] : params)
        forms.push_back(QuadForm::linear({nu1, nu2, mu1, mu2})); // axes (p1,p2,q1,q2)
    auto binned = kernels::bin_marginal(W2, forms, X, 1.0 / (kTwoPi * kTwoPi));
    check_dropped(binned.dropped_fraction, "com_tomogram");

    Tomogram t;
    t.family = Family::center_of_mass;
    t.param_names = {"mu1", "nu1", "mu2", "nu2"};
    const double h0 = W2.grid.axes[0].step(), h1 = W2.grid.axes[1].step();
    const double h2 = W2.grid.axes[2].step(), h3 = W2.grid.axes[3].step();
    for (const auto& [mu1, nu1, mu2, nu2] : params) {
        t.params.push_back({mu1, nu1, mu2, nu2});
        t.row_smear.push_back({std::abs(nu1) * h0 + std::abs(nu2) * h1 +
                               std::abs(mu1) * h2 + std::abs(mu2) * h3});
    }
    t.X_axes = {X};
    t.values = std::move(binned.values);
    return t;
}

Tomogram com_tomogram(const WignerField& W2, const Axis& mu1, const Axis& nu1,
                      const Axis& mu2, const Axis& nu2, const Axis& X) {
    std::vector<std::array<double, 4>> pts;
    pts.reserve(static_cast<std::size_t>(mu1.count) * nu1.count * mu2.count * nu2.count);
    for (int a = 0; a < mu1.count; ++a)
        for (int b = 0; b < nu1.count; ++b)
            for (int c = 0; c < mu2.count; ++c)
                for (int d = 0; d < nu2.count; ++d)
                    pts.push_back({mu1.at(a), nu1.at(b), mu2.at(c), nu2.at(d)});
    Tomogram t = com_tomogram(W2, pts, X);
    t.param_axes = std::vector<Axis>{mu1, nu1, mu2, nu2};
    return t;
}

Tomogram two_mode_tomogram(const WignerField& W2, const Axis& mu1, const Axis& nu1,
                           const Axis& mu2, const Axis& nu2, const Axis& X1,
                           const Axis& X2) {
    if (W2.grid.dims() != 4)
        throw GridTooSmall("two_mode_tomogram: two-mode Wigner field required");
    std::vector<std::pair<QuadForm, QuadForm>> forms;
    std::vector<std::vector<double>> tuples;
    std::vector<std::vector<double>> smears;
    for (int a = 0; a < mu1.count; ++a)
        for (int b = 0; b < nu1.count; ++b)
            for (int c = 0; c < mu2.count; ++c)
                for (int d = 0; d < nu2.count; ++d) {
                    forms.emplace_back(QuadForm::linear({nu1.at(b), 0.0, mu1.at(a), 0.0}),
                                       QuadForm::linear({0.0, nu2.at(d), 0.0, mu2.at(c)}));
                    tuples.push_back({mu1.at(a), nu1.at(b), mu2.at(c), nu2.at(d)});
                    smears.push_back({std::abs(nu1.at(b)) * W2.grid.axes[0].step(),
                                      std::abs(mu1.at(a)) * W2.grid.axes[2].step(),
                                      std::abs(nu2.at(d)) * W2.grid.axes[1].step(),
                                      std::abs(mu2.at(c)) * W2.grid.axes[3].step()});
                }
    auto binned = kernels::bin_marginal_2d(W2, forms, X1, X2, 1.0 / (kTwoPi * kTwoPi));
    check_dropped(binned.dropped_fraction, "two_mode_tomogram");

    Tomogram t;
    t.family = Family::two_mode;
    t.param_names = {"mu1", "nu1", "mu2", "nu2"};
    t.params = std::move(tuples);
    t.row_smear = std::move(smears);
    t.X_axes = {X1, X2};
    t.values = std::move(binned.values);
    t.param_axes = std::vector<Axis>{mu1, nu1, mu2, nu2};
    return t;
}

WignerField invert_to_wigner(const Tomogram& t, const Grid& out,
                             const InvertOptions& opts, InvertReport* report) {
    if (out.dims() != 2)
        throw GridTooSmall("invert_to_wigner: single-mode output grid required");
    const auto& axes = t.require_param_axes();
    if (axes.size() != 2)
        throw GridTooSmall("invert_to_wigner: (mu, nu) grid required");

    auto phi = characteristic_plane(t, opts.damping_eps);
    const auto q_pts = out.axes[1].points();
    const auto p_pts = out.axes[0].points();
    auto plane = kernels::separable_fourier(phi, axes, {q_pts, p_pts}, -1.0); // [q][p]

    ComplexField cf(out);
    const int np = out.axes[0].count, nq = out.axes[1].count;
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < nq; ++j)
            cf.values[static_cast<std::size_t>(i) * nq + j] =
                plane[static_cast<std::size_t>(j) * np + i] / kTwoPi;

    const double imag_res = cf.max_abs_imag() / std::max(cf.max_abs_real(), 1e-300);
    if (report) report->imag_residual = imag_res;
    if (imag_res > opts.imag_tolerance)
        throw ImagResidualTooLarge("invert_to_wigner: imaginary residual " +
                                   std::to_string(imag_res));
    if (opts.estimate_tail && report) {
        auto inner = kernels::separable_fourier(zero_outer_half(t, phi), axes,
                                                {q_pts, p_pts}, -1.0);
        report->tail_sensitivity = tail_sensitivity_field(plane, inner);
    }
    return cf.real_part();
}

WignerField invert_to_wigner_direct(const Tomogram& t, const Grid& out,
                                    const InvertOptions& opts) {
    const auto& axes = t.require_param_axes();
    const Axis& X = t.X_axes[0];
    double norm = t.thick() ? t.window->norm_factor() : 1.0;
    if (t.binned) norm /= kernels::bin_sinc(1.0, X.step());
    std::vector<double> row_factor(t.params.size(), 1.0);
    for (std::size_t r = 0; r < t.params.size(); ++r)
        if (t.binned && r < t.row_smear.size())
            for (double w : t.row_smear[r])
                row_factor[r] /= kernels::bin_sinc(1.0, w);
    ComplexField cf(out);
    const int np = out.axes[0].count, nq = out.axes[1].count;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < np; ++i) {
        const double p = out.axes[0].at(i);
        for (int j = 0; j < nq; ++j) {
            const double q = out.axes[1].at(j);
            Complex acc{0.0, 0.0};
            for (std::size_t r = 0; r < t.params.size(); ++r) {
                const double mu = t.params[r][0], nu = t.params[r][1];
                double w = 1.0;
                for (std::size_t a = 0; a < 2; ++a) {
                    const Axis& ax = axes[a];
                    w *= ax.step();
                    const double v = t.params[r][a];
                    if (std::abs(v - ax.min) < 1e-12 || std::abs(v - ax.max) < 1e-12)
                        w *= 0.5;
                }
                const double damp = std::exp(-opts.damping_eps * (mu * mu + nu * nu));
                const double* row = t.row(r);
                Complex xacc{0.0, 0.0};
                for (int k = 0; k < X.count; ++k) {
                    double wx = X.step();
                    if (!t.binned && (k == 0 || k == X.count - 1)) wx *= 0.5;
                    xacc += row[k] * std::polar(wx, X.at(k));
                }
                acc += xacc * row_factor[r] * std::polar(w * damp, -(mu * q + nu * p));
            }
            cf.values[static_cast<std::size_t>(i) * nq + j] = acc * norm / kTwoPi;
        }
    }
    return cf.real_part();
}

FockDensityMatrix invert_to_density(const Tomogram& t, int n_max,
                                    const InvertOptions& opts, InvertReport* report) {
    if (n_max < 1) throw TruncationTooSmall("invert_to_density: n_max must be >= 1");
    const auto& axes = t.require_param_axes();
    if (axes.size() != 2)
        throw GridTooSmall("invert_to_density: (mu, nu) grid required");

    auto phi = characteristic_plane(t, opts.damping_eps);
    std::vector<Complex> coeffs(phi.size());
    for (std::size_t r = 0; r < phi.size(); ++r) {
        double w = 1.0;
        for (std::size_t a = 0; a < 2; ++a) {
            const Axis& ax = axes[a];
            w *= ax.step();
            const double v = t.params[r][a];
            if (std::abs(v - ax.min) < 1e-12 || std::abs(v - ax.max) < 1e-12) w *= 0.5;
        }
        coeffs[r] = phi[r] * w / kTwoPi;
    }

    std::vector<std::array<double, 2>> nodes(t.params.size());
    for (std::size_t r = 0; r < t.params.size(); ++r)
        nodes[r] = {t.params[r][0], t.params[r][1]};
    Matrix raw = kernels::displacement_weighted_sum(coeffs, nodes, n_max);

    if (opts.estimate_tail && report) {
        auto inner = zero_outer_half(t, phi);
        std::vector<Complex> coeffs2(coeffs.size());
        for (std::size_t r = 0; r < coeffs.size(); ++r)
            coeffs2[r] = (phi[r] == Complex{0.0, 0.0})
                             ? Complex{0.0, 0.0}
                             : coeffs[r] * (inner[r] / phi[r]);
        Matrix raw2 = kernels::displacement_weighted_sum(coeffs2, nodes, n_max);
        report->tail_sensitivity =
            (raw - raw2).norm() / std::max(raw.norm(), 1e-300);
    }
    return finalize_density(std::move(raw), n_max, report);
}

FockDensityMatrix homodyne_invert_to_density(const HomodyneTomogram& h, int n_max,
                                             const RadialOptions& opts,
                                             InvertReport* report, bool deconvolve) {
    if (n_max < 1)
        throw TruncationTooSmall("homodyne_invert_to_density: n_max must be >= 1");
    Axis r_axis(0.0, opts.r_max, opts.n_r);
    std::vector<double> radii = r_axis.points();

    std::vector<double> window_div(opts.n_r, 1.0);
    if (deconvolve) {
        const WindowSpec win = h.window.value_or(WindowSpec::delta());
        auto zeros = win.fourier_zeros_on(radii);
        std::vector<double> small;
        for (double r : radii)
            if (std::abs(win.fourier(-r)) < 1e-8) small.push_back(r);
        if (!zeros.empty() || !small.empty()) {
            const auto& offending = zeros.empty() ? small : zeros;
            std::ostringstream os;
            os << "window " << win.describe()
               << " is not invertible on the radial quadrature; transform vanishes at r =";
            for (double r : offending) os << " " << r;
            throw WindowNotInvertible(os.str(), offending);
        }
        for (int j = 0; j < opts.n_r; ++j) window_div[j] = win.fourier(-radii[j]);
    }

    const int n_theta = h.theta.count;
    const double dtheta = kTwoPi / n_theta; // periodic rectangle weights

    // chi[theta][r] = int R(X, theta) e^{i r X} dX
    std::vector<Complex> coeffs(static_cast<std::size_t>(n_theta) * opts.n_r);
    for (int j = 0; j < opts.n_r; ++j) {
        auto chi = kernels::char_rows(h.values, n_theta, h.X, radii[j], h.binned);
        double wr = r_axis.step();
        if (j == 0 || j == opts.n_r - 1) wr *= 0.5;
        double damp = std::exp(-opts.damping_eps * radii[j] * radii[j]);
        if (h.binned) damp /= kernels::bin_sinc(radii[j], h.X.step());
        for (int i = 0; i < n_theta; ++i) {
            double f = damp;
            if (h.binned && i < static_cast<int>(h.row_smear.size()))
                f /= kernels::bin_sinc(radii[j], h.row_smear[i][0]) *
                     kernels::bin_sinc(radii[j], h.row_smear[i][1]);
            coeffs[static_cast<std::size_t>(i) * opts.n_r + j] =
                chi[i] / window_div[j] * radii[j] * wr * dtheta * f / kTwoPi;
        }
    }

    // Euler-Maclaurin endpoint term of the radial trapezoid: the integrand
    // r * chi * exp(...) has slope chi(0, theta) * identity at r = 0, so the
    // plain trapezoid under-integrates by (h^2/12) chi(0) on the diagonal.
    Complex endpoint{0.0, 0.0};
    {
        auto chi0 = kernels::char_rows(h.values, n_theta, h.X, 0.0, h.binned);
        const double hr = r_axis.step();
        for (int i = 0; i < n_theta; ++i)
            endpoint += chi0[i] * dtheta * hr * hr / (12.0 * kTwoPi);
    }

    std::vector<std::array<double, 2>> nodes(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const int i = static_cast<int>(k) / opts.n_r;
        const int j = static_cast<int>(k) % opts.n_r;
        const double th = h.theta.at(i);
        nodes[k] = {radii[j] * std::cos(th), radii[j] * std::sin(th)};
    }
    Matrix raw = kernels::displacement_weighted_sum(coeffs, nodes, n_max);
    raw += endpoint * Matrix::Identity(n_max + 1, n_max + 1);
    return finalize_density(std::move(raw), n_max, report);
}

namespace {

/// Finishes a two-mode inversion: separable transform of Phi over the four
/// parameter axes onto the output grid, with the [q1][p1][q2][p2] result
/// permuted into the field layout (p1, p2, q1, q2).
WignerField two_mode_finish(const Tomogram& t, const std::vector<Complex>& phi,
                            const Grid& out, double scale,
                            const InvertOptions& opts, InvertReport* report) {
    const auto& axes = t.require_param_axes();
    const auto q1 = out.axes[2].points(), p1 = out.axes[0].points();
    const auto q2 = out.axes[3].points(), p2 = out.axes[1].points();
    auto s = kernels::separable_fourier(phi, axes, {q1, p1, q2, p2}, -1.0);

    ComplexField cf(out);
    const int n_p1 = out.axes[0].count, n_p2 = out.axes[1].count;
    const int n_q1 = out.axes[2].count, n_q2 = out.axes[3].count;
    for (int a = 0; a < n_q1; ++a)
        for (int b = 0; b < n_p1; ++b)
            for (int c = 0; c < n_q2; ++c)
                for (int d = 0; d < n_p2; ++d) {
                    const std::size_t src =
                        ((static_cast<std::size_t>(a) * n_p1 + b) * n_q2 + c) * n_p2 + d;
                    const std::size_t dst =
                        ((static_cast<std::size_t>(b) * n_p2 + d) * n_q1 + a) * n_q2 + c;
                    cf.values[dst] = s[src] * scale;
                }
    const double imag_res = cf.max_abs_imag() / std::max(cf.max_abs_real(), 1e-300);
    if (report) report->imag_residual = imag_res;
    if (imag_res > opts.imag_tolerance)
        throw ImagResidualTooLarge("two-mode inversion: imaginary residual " +
                                   std::to_string(imag_res));
    return cf.real_part();
}

} // namespace

WignerField com_invert_to_wigner(const Tomogram& t, const Grid& out,
                                 const InvertOptions& opts, InvertReport* report) {
    if (out.dims() != 4)
        throw GridTooSmall("com_invert_to_wigner: two-mode output grid required");
    if (t.family != Family::center_of_mass)
        throw GridTooSmall("com_invert_to_wigner: center-of-mass tomogram required");
    auto phi = characteristic_plane(t, opts.damping_eps);
    return two_mode_finish(t, phi, out, 1.0 / (kTwoPi * kTwoPi), opts, report);
}

WignerField two_mode_invert_to_wigner(const Tomogram& t, const Grid& out,
                                      const InvertOptions& opts, InvertReport* report) {
    if (out.dims() != 4)
        throw GridTooSmall("two_mode_invert_to_wigner: two-mode output grid required");
    if (t.family != Family::two_mode)
        throw GridTooSmall("two_mode_invert_to_wigner: two-mode tomogram required");
    // Phi = double X transform at unit frequencies in X1 and X2.
    const Axis& X1 = t.X_axes[0];
    const Axis& X2 = t.X_axes[1];
    const std::size_t rows = t.params.size();
    std::vector<Complex> phase1(X1.count), phase2(X2.count);
    for (int k = 0; k < X1.count; ++k) {
        double w = X1.step();
        if (!t.binned && (k == 0 || k == X1.count - 1)) w *= 0.5;
        phase1[k] = std::polar(w, X1.at(k));
    }
    for (int k = 0; k < X2.count; ++k) {
        double w = X2.step();
        if (!t.binned && (k == 0 || k == X2.count - 1)) w *= 0.5;
        phase2[k] = std::polar(w, X2.at(k));
    }
    const double smear = t.binned ? 1.0 / (kernels::bin_sinc(1.0, X1.step()) *
                                           kernels::bin_sinc(1.0, X2.step()))
                                  : 1.0;
    std::vector<Complex> phi(rows);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
        const double* row = t.row(r);
        Complex acc{0.0, 0.0};
        for (int k1 = 0; k1 < X1.count; ++k1) {
            Complex inner{0.0, 0.0};
            const double* sub = row + static_cast<std::size_t>(k1) * X2.count;
            for (int k2 = 0; k2 < X2.count; ++k2) inner += sub[k2] * phase2[k2];
            acc += inner * phase1[k1];
        }
        double s2 = 0.0;
        for (double v : t.params[r]) s2 += v * v;
        double f = smear;
        if (t.binned && static_cast<std::size_t>(r) < t.row_smear.size())
            for (double w : t.row_smear[r]) f /= kernels::bin_sinc(1.0, w);
        phi[r] = acc * std::exp(-opts.damping_eps * s2) * f;
    }
    return two_mode_finish(t, phi, out, 1.0 / (kTwoPi * kTwoPi), opts, report);
}

} // namespace tomo::symplectic
