#include "tomo/quadric.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "quad_phase.hpp"
#include "tomo/fock.hpp"
#include "tomo/kernels.hpp"

namespace tomo {

double QuadricSpec::determinant() const {
    Eigen::MatrixXd m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = B[i * dim + j];
    return m.determinant();
}

} // namespace tomo

namespace tomo::quadric {

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

std::vector<std::vector<double>> grid_points(const std::vector<Axis>& axes) {
    Grid g(axes);
    std::vector<std::vector<double>> pts;
    pts.reserve(g.size());
    std::vector<int> idx(g.dims());
    for (std::size_t k = 0; k < g.size(); ++k) {
        g.unravel(k, idx.data());
        std::vector<double> pt(g.dims());
        for (int a = 0; a < g.dims(); ++a) pt[a] = axes[a].at(idx[a]);
        pts.push_back(std::move(pt));
    }
    return pts;
}

/// Embeds a single-subsystem form over (p_j, q_j) into the two-mode field
/// axes (p1, p2, q1, q2).
QuadForm embed_subsystem(const QuadricSpec& q, const std::vector<double>& shift,
                         int mode) {
    QuadForm local = QuadForm::shifted_quadratic(q.B, q.C, shift, 2);
    QuadForm out;
    out.d = 4;
    out.A.assign(16, 0.0);
    out.b.assign(4, 0.0);
    out.c = local.c;
    const int p_axis = mode;     // p1 -> 0, p2 -> 1
    const int q_axis = 2 + mode; // q1 -> 2, q2 -> 3
    const int map[2] = {p_axis, q_axis};
    for (int i = 0; i < 2; ++i) {
        out.b[map[i]] = local.b[i];
        for (int j = 0; j < 2; ++j)
            if (!local.A.empty()) out.A[map[i] * 4 + map[j]] = local.A[i * 2 + j];
    }
    return out;
}

} // namespace

double QuadraticHamiltonianSymbol::value(const std::vector<double>& Q) const {
    const int d = quadric.dim;
    std::vector<double> u(d);
    for (int i = 0; i < d; ++i)
        u[i] = Q[i] - (quadric.shift.empty() ? 0.0 : quadric.shift[i]);
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
        double row = 0.0;
        for (int j = 0; j < d; ++j) row += quadric.B[i * d + j] * u[j];
        acc += 0.5 * u[i] * row + (quadric.C.empty() ? 0.0 : quadric.C[i]) * u[i];
    }
    return acc;
}

Tomogram quantum_quadric_tomogram(const WignerField& W, const QuadricSpec& base,
                                  const std::vector<std::vector<double>>& r_points,
                                  const Axis& X) {
    const int d = W.grid.dims();
    if (base.dim != d)
        throw DimensionMismatch("quantum_quadric_tomogram: B dimension mismatch");
    const int n_modes = d / 2;
    std::vector<QuadForm> forms;
    forms.reserve(r_points.size());
    for (const auto& r : r_points)
        forms.push_back(QuadForm::shifted_quadratic(base.B, base.C, r, d));
    auto binned = kernels::bin_marginal(W, forms, X, std::pow(kTwoPi, -n_modes));
    check_dropped(binned.dropped_fraction, "quantum_quadric_tomogram");

    Tomogram t;
    t.family = Family::quadric;
    for (int a = 0; a < n_modes; ++a) t.param_names.push_back("mu" + std::to_string(a + 1));
    for (int a = 0; a < n_modes; ++a) t.param_names.push_back("nu" + std::to_string(a + 1));
    t.params = r_points;
    t.X_axes = {X};
    t.values = std::move(binned.values);
    t.infer_param_axes();
    return t;
}

Tomogram quantum_quadric_tomogram(const WignerField& W, const QuadricSpec& base,
                                  const std::vector<Axis>& r_axes, const Axis& X) {
    Tomogram t = quantum_quadric_tomogram(W, base, grid_points(r_axes), X);
    t.param_axes = r_axes;
    return t;
}

WignerField quantum_quadric_inverse(const Tomogram& t, const QuadricSpec& base,
                                    const Grid& out, const InvertOptions& opts,
                                    InvertReport* report) {
    if (t.family != Family::quadric)
        throw DegenerateQuadric("quantum_quadric_inverse: quadric tomogram required");
    base.require_invertible();
    const auto& axes = t.require_param_axes();
    const int d = base.dim;
    if (static_cast<int>(axes.size()) != d || out.dims() != d)
        throw DimensionMismatch("quantum_quadric_inverse: dimension mismatch");
    const int n_modes = d / 2;

    auto phi = kernels::char_rows(t.values, static_cast<int>(t.params.size()),
                                  t.X_axes[0], 1.0, t.binned);
    if (t.binned)
        for (auto& v : phi) v /= kernels::bin_sinc(1.0, t.X_axes[0].step());
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
        throw ImagResidualTooLarge("quantum_quadric_inverse: imaginary residual " +
                                   std::to_string(imag_res));
    return cf.real_part();
}

Tomogram multipartite_quadric_tomogram(const WignerField& W2, const QuadricSpec& q1,
                                       const QuadricSpec& q2,
                                       const std::vector<Axis>& r_axes, const Axis& X1,
                                       const Axis& X2) {
    if (W2.grid.dims() != 4)
        throw DimensionMismatch("multipartite_quadric_tomogram: two-mode field required");
    if (q1.dim != 2 || q2.dim != 2 || r_axes.size() != 4)
        throw DimensionMismatch("multipartite_quadric_tomogram: two 2x2 quadrics and "
                                "(mu1, nu1, mu2, nu2) axes required");
    auto pts = grid_points(r_axes);
    std::vector<std::pair<QuadForm, QuadForm>> forms;
    forms.reserve(pts.size());
    for (const auto& r : pts)
        forms.emplace_back(embed_subsystem(q1, {r[0], r[1]}, 0),
                           embed_subsystem(q2, {r[2], r[3]}, 1));
    auto binned = kernels::bin_marginal_2d(W2, forms, X1, X2, 1.0 / (kTwoPi * kTwoPi));
    check_dropped(binned.dropped_fraction, "multipartite_quadric_tomogram");

    Tomogram t;
    t.family = Family::multipartite_quadric;
    t.param_names = {"mu1", "nu1", "mu2", "nu2"};
    t.params = std::move(pts);
    t.X_axes = {X1, X2};
    t.values = std::move(binned.values);
    t.param_axes = r_axes;
    return t;
}

WignerField multipartite_quadric_inverse(const Tomogram& t, const QuadricSpec& q1,
                                         const QuadricSpec& q2, const Grid& out,
                                         const InvertOptions& opts,
                                         InvertReport* report) {
    if (t.family != Family::multipartite_quadric)
        throw DegenerateQuadric("multipartite_quadric_inverse: wrong tomogram family");
    q1.require_invertible();
    q2.require_invertible();
    if (out.dims() != 4)
        throw DimensionMismatch("multipartite_quadric_inverse: two-mode output required");
    const auto& axes = t.require_param_axes();

    // Phi = double X transform at unit frequency in both X1 and X2.
    const Axis& X1 = t.X_axes[0];
    const Axis& X2 = t.X_axes[1];
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
    std::vector<Complex> phi(t.params.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(t.params.size()); ++r) {
        const double* row = t.row(r);
        Complex acc{0.0, 0.0};
        for (int k1 = 0; k1 < X1.count; ++k1) {
            Complex inner{0.0, 0.0};
            const double* sub = row + static_cast<std::size_t>(k1) * X2.count;
            for (int k2 = 0; k2 < X2.count; ++k2) inner += sub[k2] * phase2[k2];
            acc += inner * phase1[k1];
        }
        phi[r] = acc * smear;
    }

    // Combined 4x4 quadric over the coordinate order (p1, q1, p2, q2),
    // matching the (mu1, nu1, mu2, nu2) parameter axes.
    QuadricSpec full;
    full.dim = 4;
    full.B.assign(16, 0.0);
    full.C.assign(4, 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            full.B[i * 4 + j] = q1.B[i * 2 + j];
            full.B[(2 + i) * 4 + (2 + j)] = q2.B[i * 2 + j];
        }
    for (int i = 0; i < 2; ++i) {
        full.C[i] = q1.C.empty() ? 0.0 : q1.C[i];
        full.C[2 + i] = q2.C.empty() ? 0.0 : q2.C[i];
    }
    // Q-coordinates (p1, q1, p2, q2) live on output axes (0, 2, 1, 3).
    const std::vector<int> coord_to_axis = {0, 2, 1, 3};
    const double scale = std::abs(q1.determinant()) * std::abs(q2.determinant()) /
                         (kTwoPi * kTwoPi);
    auto cf = detail::quad_phase_invert(phi, axes, full, 0.5, out, coord_to_axis, scale,
                                        opts.damping_eps);
    const double imag_res = cf.max_abs_imag() / std::max(cf.max_abs_real(), 1e-300);
    if (report) {
        report->imag_residual = imag_res;
        report->damping_eps = opts.damping_eps;
    }
    if (imag_res > opts.imag_tolerance)
        throw ImagResidualTooLarge("multipartite_quadric_inverse: imaginary residual " +
                                   std::to_string(imag_res));
    return cf.real_part();
}

Tomogram deformed_quantum_tomogram(const WignerField& W, const Axis& xi, const Axis& nu,
                                   const Axis& X) {
    if (W.grid.dims() != 2)
        throw DimensionMismatch("deformed_quantum_tomogram: single-mode field required");
    WignerField scaled = W;
    for (auto& v : scaled.values) v /= kTwoPi;
    Tomogram t = classical::deformed_radon(scaled, xi, nu, X);
    t.param_names = {"xi", "nu"};
    return t;
}

std::vector<double> quadric_tomogram_spectral(const Matrix& rho, const QuadricSpec& spec,
                                              const Axis& X, double sigma_spec) {
    const int dim = static_cast<int>(rho.rows());
    const int dim_b = dim + kFockBuffer;
    auto [Q, P] = quadrature_operators(dim_b - 1);
    // Operator H = 0.5 (O - r)'B(O - r) + C'(O - r), O = (P, Q); B symmetry
    // makes the plain product sum self-adjoint.
    std::vector<const Matrix*> ops = {&P, &Q};
    Matrix H = Matrix::Zero(dim_b, dim_b);
    const Matrix I = Matrix::Identity(dim_b, dim_b);
    std::vector<Matrix> shifted;
    for (int i = 0; i < 2; ++i) {
        const double r = spec.shift.empty() ? 0.0 : spec.shift[i];
        shifted.push_back(*ops[i] - r * I);
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (spec.B[i * 2 + j] != 0.0)
                H += 0.5 * spec.B[i * 2 + j] * shifted[i] * shifted[j];
    for (int i = 0; i < 2; ++i)
        if (!spec.C.empty() && spec.C[i] != 0.0) H += spec.C[i] * shifted[i];

    Matrix Hc = hermitize(H.topLeftCorner(dim, dim));
    Eigen::SelfAdjointEigenSolver<Matrix> es(Hc);
    const auto& lam = es.eigenvalues();
    const Matrix& V = es.eigenvectors();
    Eigen::VectorXd weights(dim);
    const Matrix rot = V.adjoint() * rho * V;
    for (int i = 0; i < dim; ++i) weights(i) = rot(i, i).real();

    std::vector<double> profile(X.count, 0.0);
    const double norm = 1.0 / std::sqrt(2.0 * kPi * sigma_spec * sigma_spec);
    for (int k = 0; k < X.count; ++k) {
        double acc = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double d = X.at(k) - lam(i);
            acc += weights(i) * std::exp(-d * d / (2.0 * sigma_spec * sigma_spec));
        }
        profile[k] = acc * norm;
    }
    return profile;
}

} // namespace tomo::quadric
