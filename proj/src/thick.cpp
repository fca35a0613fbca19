#include "tomo/thick.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "quad_phase.hpp"
#include "tomo/expm.hpp"
#include "tomo/kernels.hpp"
#include "tomo/quadric.hpp"
#include "tomo/symplectic.hpp"

namespace tomo::thick {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

using kernels::QuadForm;

QuadForm line_form(double mu, double nu) { return QuadForm::linear({nu, mu}); }

} // namespace

Tomogram thick_symplectic_tomogram(const WignerField& W, const WindowSpec& window,
                                   const std::vector<std::array<double, 2>>& mu_nu,
                                   const Axis& X) {
    if (W.grid.dims() != 2)
        throw GridTooSmall("thick_symplectic_tomogram: single-mode field required");
    if (window.is_delta()) {
        Tomogram t = symplectic::symplectic_tomogram(W, mu_nu, X);
        t.window = window;
        return t;
    }
    std::vector<QuadForm> forms;
    forms.reserve(mu_nu.size());
    for (const auto& [mu, nu] : mu_nu) forms.push_back(line_form(mu, nu));
    Tomogram t;
    t.family = Family::symplectic;
    t.window = window;
    t.param_names = {"mu", "nu"};
    for (const auto& [mu, nu] : mu_nu) t.params.push_back({mu, nu});
    t.X_axes = {X};
    t.binned = false;
    t.values = kernels::window_marginal(W, forms, window, X, 1.0 / kTwoPi);
    return t;
}

Tomogram thick_symplectic_tomogram(const WignerField& W, const WindowSpec& window,
                                   const Axis& mu, const Axis& nu, const Axis& X) {
    std::vector<std::array<double, 2>> pts;
    pts.reserve(static_cast<std::size_t>(mu.count) * nu.count);
    for (int i = 0; i < mu.count; ++i)
        for (int j = 0; j < nu.count; ++j) pts.push_back({mu.at(i), nu.at(j)});
    Tomogram t = thick_symplectic_tomogram(W, window, pts, X);
    t.param_axes = std::vector<Axis>{mu, nu};
    return t;
}

Tomogram thicken(const Tomogram& t, const WindowSpec& window) {
    if (t.X_axes.size() != 1)
        throw GridTooSmall("thicken: single-X tomograms only");
    Tomogram out = t;
    out.window = window;
    if (window.is_delta()) return out;

    const Axis& X = t.X_axes[0];
    const double dX = X.step();
    const double hw = window.support_halfwidth();
    const int reach = static_cast<int>(std::ceil(hw / dX));
    // discrete convolution kernel on the bin lattice
    std::vector<double> ker(2 * reach + 1);
    for (int s = -reach; s <= reach; ++s) ker[s + reach] = window.value(s * dX) * dX;

    const std::size_t rows = t.params.size();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(rows); ++p) {
        const double* src = t.row(p);
        double* dst = out.row(p);
        for (int k = 0; k < X.count; ++k) {
            double acc = 0.0;
            const int s0 = std::max(-reach, k - (X.count - 1));
            const int s1 = std::min(reach, k);
            for (int s = s0; s <= s1; ++s) acc += src[k - s] * ker[s + reach];
            dst[k] = acc;
        }
    }
    return out;
}

WignerField thick_invert_to_wigner(const Tomogram& t, const Grid& out,
                                   const InvertOptions& opts, InvertReport* report) {
    if (!t.thick())
        throw WindowNotInvertibleAtUnitFrequency(
            "thick_invert_to_wigner: tomogram carries no window");
    t.window->norm_factor(); // validates fourier(-1) != 0 up front
    return symplectic::invert_to_wigner(t, out, opts, report);
}

Matrix thick_dequantizer_matrix(const WindowSpec& window, double X, double mu,
                                double nu, int n_max) {
    if (n_max < 1) throw TruncationTooSmall("thick_dequantizer_matrix: n_max >= 1");
    if (window.kind != WindowSpec::Kind::gaussian)
        throw std::invalid_argument("thick_dequantizer_matrix: gaussian windows only");
    const int dim_b = n_max + 1 + kFockBuffer;
    auto [Q, P] = quadrature_operators(dim_b - 1);
    Matrix A = mu * Q + nu * P;
    Eigen::SelfAdjointEigenSolver<Matrix> es(A);
    const auto& lam = es.eigenvalues();
    const Matrix& V = es.eigenvectors();
    Eigen::VectorXcd vals(dim_b);
    for (int i = 0; i < dim_b; ++i) vals(i) = window.value(X - lam(i));
    Matrix U = V * vals.asDiagonal() * V.adjoint();
    return U.topLeftCorner(n_max + 1, n_max + 1);
}

Matrix thick_quantizer_matrix(const WindowSpec& window, double X, double mu, double nu,
                              int n_max) {
    if (n_max < 1) throw TruncationTooSmall("thick_quantizer_matrix: n_max >= 1");
    const double prefactor = window.norm_factor() / kTwoPi;
    const int dim_b = kernels::displacement_reach_dim(
        n_max, std::sqrt((mu * mu + nu * nu) / 2.0));
    auto [Q, P] = quadrature_operators(dim_b - 1);
    Matrix D = expm(Complex(0.0, -1.0) * (mu * Q + nu * P));
    D *= prefactor * std::polar(1.0, X);
    return D.topLeftCorner(n_max + 1, n_max + 1);
}

Tomogram thick_quadric_tomogram(const WignerField& W, const QuadricSpec& base,
                                const WindowSpec& window,
                                const std::vector<std::vector<double>>& r_points,
                                const Axis& X) {
    const int d = W.grid.dims();
    if (base.dim != d)
        throw DimensionMismatch("thick_quadric_tomogram: B dimension mismatch");
    if (window.is_delta()) {
        Tomogram t = quadric::quantum_quadric_tomogram(W, base, r_points, X);
        t.window = window;
        return t;
    }
    const int n_modes = d / 2;
    std::vector<QuadForm> forms;
    forms.reserve(r_points.size());
    for (const auto& r : r_points)
        forms.push_back(QuadForm::shifted_quadratic(base.B, base.C, r, d));
    Tomogram t;
    t.family = Family::quadric;
    t.window = window;
    for (int a = 0; a < n_modes; ++a) t.param_names.push_back("mu" + std::to_string(a + 1));
    for (int a = 0; a < n_modes; ++a) t.param_names.push_back("nu" + std::to_string(a + 1));
    t.params = r_points;
    t.X_axes = {X};
    t.binned = false;
    t.values = kernels::window_marginal(W, forms, window, X, std::pow(kTwoPi, -n_modes));
    t.infer_param_axes();
    return t;
}

Tomogram thick_quadric_tomogram(const WignerField& W, const QuadricSpec& base,
                                const WindowSpec& window,
                                const std::vector<Axis>& r_axes, const Axis& X) {
    Grid g(r_axes);
    std::vector<std::vector<double>> pts;
    pts.reserve(g.size());
    std::vector<int> idx(g.dims());
    for (std::size_t k = 0; k < g.size(); ++k) {
        g.unravel(k, idx.data());
        std::vector<double> pt(g.dims());
        for (int a = 0; a < g.dims(); ++a) pt[a] = r_axes[a].at(idx[a]);
        pts.push_back(std::move(pt));
    }
    Tomogram t = thick_quadric_tomogram(W, base, window, pts, X);
    t.param_axes = r_axes;
    return t;
}

WignerField thick_quadric_inverse(const Tomogram& t, const QuadricSpec& base,
                                  const Grid& out, const quadric::InvertOptions& opts,
                                  quadric::InvertReport* report) {
    if (!t.thick())
        throw WindowNotInvertibleAtUnitFrequency(
            "thick_quadric_inverse: tomogram carries no window");
    const double norm = t.window->norm_factor();
    base.require_invertible();
    const auto& axes = t.require_param_axes();
    const int d = base.dim;
    const int n_modes = d / 2;

    auto phi = kernels::char_rows(t.values, static_cast<int>(t.params.size()),
                                  t.X_axes[0], 1.0);
    for (auto& v : phi) v *= norm;
    std::vector<int> coord_to_axis(d);
    for (int i = 0; i < d; ++i) coord_to_axis[i] = i;
    const double scale = std::abs(base.determinant()) * std::pow(kTwoPi, -n_modes);
    auto cf = detail::quad_phase_invert(phi, axes, base, 0.5, out, coord_to_axis, scale,
                                        opts.damping_eps);
    const double imag_res = cf.max_abs_imag() / std::max(cf.max_abs_real(), 1e-300);
    if (report) {
        report->imag_residual = imag_res;
        report->damping_eps = opts.damping_eps;
    }
    if (imag_res > opts.imag_tolerance)
        throw ImagResidualTooLarge("thick_quadric_inverse: imaginary residual " +
                                   std::to_string(imag_res));
    return cf.real_part();
}

HomodyneTomogram thick_radon_tomogram(const WignerField& W, const WindowSpec& window,
                                      const Axis& theta, const Axis& X) {
    if (window.is_delta()) {
        HomodyneTomogram h = symplectic::homodyne_tomogram(W, theta, X);
        h.window = window;
        return h;
    }
    std::vector<QuadForm> forms;
    forms.reserve(theta.count);
    for (int i = 0; i < theta.count; ++i)
        forms.push_back(line_form(std::cos(theta.at(i)), std::sin(theta.at(i))));
    HomodyneTomogram h;
    h.theta = theta;
    h.X = X;
    h.window = window;
    h.binned = false;
    h.values = kernels::window_marginal(W, forms, window, X, 1.0 / kTwoPi);
    return h;
}

FockDensityMatrix thick_radon_deconvolve_invert(const HomodyneTomogram& h, int n_max,
                                                const RadialOptions& opts,
                                                InvertReport* report) {
    return symplectic::homodyne_invert_to_density(h, n_max, opts, report,
                                                  /*deconvolve=*/true);
}

} // namespace tomo::thick
