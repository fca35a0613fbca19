#include "tomo/starprod.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "tomo/expm.hpp"
#include "tomo/kernels.hpp"

namespace tomo::star {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
} // namespace

QDPair::QDPair(std::string name, int n_max, Axis X, std::vector<Axis> param_axes)
    : name_(std::move(name)), n_max_(n_max), X_(X), param_axes_(std::move(param_axes)) {
    if (n_max_ < 1) throw TruncationTooSmall("QDPair: n_max must be >= 1");
}

std::size_t QDPair::param_rows() const {
    std::size_t n = 1;
    for (const auto& a : param_axes_) n *= a.count;
    return n;
}

std::vector<double> QDPair::param_row(std::size_t row) const {
    std::vector<double> pt(param_axes_.size());
    for (int a = static_cast<int>(param_axes_.size()) - 1; a >= 0; --a) {
        const int n = param_axes_[a].count;
        pt[a] = param_axes_[a].at(static_cast<int>(row % n));
        row /= n;
    }
    return pt;
}

double QDPair::row_weight(std::size_t row) const {
    double w = 1.0;
    for (int a = static_cast<int>(param_axes_.size()) - 1; a >= 0; --a) {
        const Axis& ax = param_axes_[a];
        const int i = static_cast<int>(row % ax.count);
        row /= ax.count;
        w *= ax.step();
        if (i == 0 || i == ax.count - 1) w *= 0.5;
    }
    return w;
}

std::vector<Complex> QDPair::dequantize_bulk(const Matrix& A) const {
    std::vector<Complex> out(domain_size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t x = 0; x < static_cast<std::ptrdiff_t>(out.size()); ++x)
        out[x] = (A * dequantizer_at(x)).trace();
    return out;
}

Matrix QDPair::quantize_bulk(const std::vector<Complex>& f) const {
    Matrix acc = Matrix::Zero(dim(), dim());
    const int nX = X_.count;
    for (std::size_t x = 0; x < f.size(); ++x) {
        const int k = static_cast<int>(x % nX);
        double w = row_weight(x / nX) * X_.step();
        if (k == 0 || k == nX - 1) w *= 0.5;
        acc += f[x] * w * quantizer_at(x);
    }
    return acc;
}

double Symbol::max_imag() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v.imag()));
    return m;
}

std::vector<double> Symbol::real_values() const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
    return out;
}

Symbol dequantize(const Matrix& A, const QDPair& pair) {
    if (A.rows() != pair.dim() || A.cols() != pair.dim())
        throw DimensionMismatch("dequantize: operator dimension mismatch");
    Symbol s;
    s.pair = &pair;
    s.values = pair.dequantize_bulk(A);
    return s;
}

Matrix quantize(const Symbol& f) {
    if (!f.pair) throw DimensionMismatch("quantize: symbol has no pair");
    if (f.values.size() != f.pair->domain_size())
        throw DimensionMismatch("quantize: symbol size mismatch");
    return f.pair->quantize_bulk(f.values);
}

Symbol star_product(const Symbol& f, const Symbol& g) {
    if (!f.pair || f.pair != g.pair)
        throw DimensionMismatch("star_product: symbols must share one pair");
    return dequantize(quantize(f) * quantize(g), *f.pair);
}

double weak_duality_error(const QDPair& pair,
                          const std::vector<FockDensityMatrix>& test_states) {
    double worst = 0.0;
    for (const auto& rho : test_states) {
        if (rho.dim() != pair.dim())
            throw DimensionMismatch("weak_duality_error: state dimension mismatch");
        Matrix rec = quantize(dequantize(rho.rho, pair));
        const double overlap = (rec * rho.rho).trace().real();
        const double norm = (rho.rho * rho.rho).trace().real();
        worst = std::max(worst, 1.0 - overlap / norm);
    }
    return worst;
}

// --------------------------------------------------------------------------
// Thick symplectic pair

namespace {

class ThickSymplecticPair final : public QDPair {
public:
    ThickSymplecticPair(double sigma, int n_max, Axis X, Axis mu, Axis nu)
        : QDPair(sigma > 0.0 ? "thick-symplectic" : "symplectic", n_max, X, {mu, nu}),
          sigma_(sigma) {
        const int dim_b = n_max + 1 + kFockBuffer;
        std::tie(Q_, P_) = quadrature_operators(dim_b - 1);
    }

    Matrix dequantizer_at(std::size_t x) const override {
        const auto [mu, nu, X] = point(x);
        const int dim_b = static_cast<int>(Q_.rows());
        Eigen::SelfAdjointEigenSolver<Matrix> es(mu * Q_ + nu * P_);
        Eigen::VectorXcd vals(dim_b);
        for (int i = 0; i < dim_b; ++i)
            vals(i) = sigma_ > 0.0
                          ? WindowSpec::gaussian(sigma_).value(X - es.eigenvalues()(i))
                          : bin_indicator(X - es.eigenvalues()(i));
        Matrix U = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
        return U.topLeftCorner(dim(), dim());
    }

    Matrix quantizer_at(std::size_t x) const override {
        const auto [mu, nu, X] = point(x);
        const double pref = prefactor() / kTwoPi;
        const int d = kernels::displacement_reach_dim(
            n_max(), std::sqrt((mu * mu + nu * nu) / 2.0));
        auto [Qb, Pb] = quadrature_operators(d - 1);
        Matrix D = expm(Complex(0.0, -1.0) * (mu * Qb + nu * Pb));
        D *= pref * std::polar(1.0, X);
        return D.topLeftCorner(dim(), dim());
    }

    std::vector<Complex> dequantize_bulk(const Matrix& A) const override {
        const int dim_b = static_cast<int>(Q_.rows());
        Matrix A_big = Matrix::Zero(dim_b, dim_b);
        A_big.topLeftCorner(dim(), dim()) = A;
        const std::size_t rows = param_rows();
        const int nX = X_.count;
        std::vector<Complex> out(domain_size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
            const auto pt = param_row(r);
            Eigen::SelfAdjointEigenSolver<Matrix> es(pt[0] * Q_ + pt[1] * P_);
            const Matrix rot = es.eigenvectors().adjoint() * A_big * es.eigenvectors();
            for (int k = 0; k < nX; ++k) {
                Complex acc{0.0, 0.0};
                for (int i = 0; i < dim_b; ++i) {
                    const double z = X_.at(k) - es.eigenvalues()(i);
                    const double v = sigma_ > 0.0
                                         ? WindowSpec::gaussian(sigma_).value(z)
                                         : bin_indicator(z);
                    acc += rot(i, i) * v;
                }
                out[static_cast<std::size_t>(r) * nX + k] = acc;
            }
        }
        return out;
    }

    Matrix quantize_bulk(const std::vector<Complex>& f) const override {
        // X integral first: c(mu, nu) = int f e^{iX} dX, then the weighted
        // sum of displacement-type exponentials.
        const std::size_t rows = param_rows();
        const int nX = X_.count;
        std::vector<Complex> coeffs(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            Complex acc{0.0, 0.0};
            for (int k = 0; k < nX; ++k) {
                double w = X_.step();
                if (k == 0 || k == nX - 1) w *= 0.5;
                acc += f[r * nX + k] * std::polar(w, X_.at(k));
            }
            coeffs[r] = acc * row_weight(r) * prefactor() / kTwoPi;
        }
        std::vector<std::array<double, 2>> nodes(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            const auto pt = param_row(r);
            nodes[r] = {pt[0], pt[1]};
        }
        return kernels::displacement_weighted_sum(coeffs, nodes, n_max());
    }

private:
    std::tuple<double, double, double> point(std::size_t x) const {
        const int nX = X_.count;
        const auto pt = param_row(x / nX);
        return {pt[0], pt[1], X_.at(static_cast<int>(x % nX))};
    }

    double prefactor() const { return std::exp(0.5 * sigma_ * sigma_); }

    double bin_indicator(double z) const {
        const double dX = X_.step();
        return std::abs(z) <= 0.5 * dX ? 1.0 / dX : 0.0;
    }

    double sigma_;
    Matrix Q_, P_;
};

// --------------------------------------------------------------------------
// Quadric pair

class QuadricPair final : public QDPair {
public:
    QuadricPair(const QuadricSpec& base, int n_max, Axis X, Axis mu, Axis nu,
                double sigma_spec)
        : QDPair("quadric", n_max, X, {mu, nu}), base_(base),
          sigma_spec_(sigma_spec > 0.0 ? sigma_spec : 2.0 * X.step()) {
        if (base_.dim != 2) throw DimensionMismatch("QuadricPair: 2x2 quadrics only");
        const int dim_b = n_max + 1 + kFockBuffer;
        std::tie(Q_, P_) = quadrature_operators(dim_b - 1);
    }

    Matrix dequantizer_at(std::size_t x) const override {
        const auto [mu, nu, X] = point(x);
        Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian(mu, nu));
        const int dim_b = static_cast<int>(Q_.rows());
        Eigen::VectorXcd vals(dim_b);
        const double norm = 1.0 / std::sqrt(kTwoPi * sigma_spec_ * sigma_spec_);
        for (int i = 0; i < dim_b; ++i) {
            const double d = X - es.eigenvalues()(i);
            vals(i) = norm * std::exp(-d * d / (2.0 * sigma_spec_ * sigma_spec_));
        }
        Matrix U = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
        return U.topLeftCorner(dim(), dim());
    }

    Matrix quantizer_at(std::size_t x) const override {
        const auto [mu, nu, X] = point(x);
        const int d = kernels::displacement_reach_dim(
            n_max(), std::sqrt((mu * mu + nu * nu) / 2.0) + 1.0);
        Matrix D = expm(Complex(0.0, -1.0) * hamiltonian(mu, nu, d));
        D *= std::abs(base_.determinant()) / kTwoPi * std::polar(1.0, X);
        return D.topLeftCorner(dim(), dim());
    }

private:
    std::tuple<double, double, double> point(std::size_t x) const {
        const int nX = X_.count;
        const auto pt = param_row(x / nX);
        return {pt[0], pt[1], X_.at(static_cast<int>(x % nX))};
    }

    Matrix hamiltonian(double mu, double nu, int dim_b = 0) const {
        if (dim_b == 0) dim_b = static_cast<int>(Q_.rows());
        auto [Qb, Pb] = quadrature_operators(dim_b - 1);
        const Matrix I = Matrix::Identity(dim_b, dim_b);
        const Matrix O0 = Pb - mu * I; // Q-coordinate order (p, q), r = (mu, nu)
        const Matrix O1 = Qb - nu * I;
        Matrix H = Matrix::Zero(dim_b, dim_b);
        const Matrix* ops[2] = {&O0, &O1};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (base_.B[i * 2 + j] != 0.0)
                    H += 0.5 * base_.B[i * 2 + j] * (*ops[i]) * (*ops[j]);
        for (int i = 0; i < 2; ++i)
            if (!base_.C.empty() && base_.C[i] != 0.0) H += base_.C[i] * (*ops[i]);
        return hermitize(H);
    }

    QuadricSpec base_;
    double sigma_spec_;
    Matrix Q_, P_;
};

// --------------------------------------------------------------------------
// Deformed pair (dequantizer only)

class DeformedPair final : public QDPair {
public:
    DeformedPair(int n_max, Axis X, Axis xi, Axis nu, double sigma_spec)
        : QDPair("deformed", n_max, X, {xi, nu}),
          sigma_spec_(sigma_spec > 0.0 ? sigma_spec : 2.0 * X.step()) {
        const int dim_b = n_max + 1 + kFockBuffer;
        std::tie(Q_, P_) = quadrature_operators(dim_b - 1);
        QP_ = hermitize(0.5 * (Q_ * P_ + P_ * Q_));
    }

    bool has_quantizer() const override { return false; }

    Matrix dequantizer_at(std::size_t x) const override {
        const int nX = X_.count;
        const auto pt = param_row(x / nX);
        const double X = X_.at(static_cast<int>(x % nX));
        Eigen::SelfAdjointEigenSolver<Matrix> es(pt[0] * Q_ + pt[1] * QP_);
        const int dim_b = static_cast<int>(Q_.rows());
        Eigen::VectorXcd vals(dim_b);
        const double norm = 1.0 / std::sqrt(kTwoPi * sigma_spec_ * sigma_spec_);
        for (int i = 0; i < dim_b; ++i) {
            const double d = X - es.eigenvalues()(i);
            vals(i) = norm * std::exp(-d * d / (2.0 * sigma_spec_ * sigma_spec_));
        }
        Matrix U = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
        return U.topLeftCorner(dim(), dim());
    }

    Matrix quantizer_at(std::size_t) const override {
        throw UnsupportedState("deformed pair has no operator-level quantizer; "
                               "the family stays at the Wigner level");
    }

    Matrix quantize_bulk(const std::vector<Complex>&) const override {
        throw UnsupportedState("deformed pair has no operator-level quantizer; "
                               "the family stays at the Wigner level");
    }

private:
    double sigma_spec_;
    Matrix Q_, P_, QP_;
};

} // namespace

std::unique_ptr<QDPair> make_thick_symplectic_pair(double sigma, int n_max, Axis X,
                                                   Axis mu, Axis nu) {
    return std::make_unique<ThickSymplecticPair>(sigma, n_max, X, mu, nu);
}

std::unique_ptr<QDPair> make_quadric_pair(const QuadricSpec& base, int n_max, Axis X,
                                          Axis mu, Axis nu, double sigma_spec) {
    return std::make_unique<QuadricPair>(base, n_max, X, mu, nu, sigma_spec);
}

std::unique_ptr<QDPair> make_deformed_pair(int n_max, Axis X, Axis xi, Axis nu,
                                           double sigma_spec) {
    return std::make_unique<DeformedPair>(n_max, X, xi, nu, sigma_spec);
}

// --------------------------------------------------------------------------
// Group-orbit tomogram

GroupOrbitResult group_orbit_tomogram(const FockDensityMatrix& rho,
                                      const std::array<double, 6>& coeffs,
                                      const Axis& X, const GroupOrbitOptions& opts) {
    const int D = opts.embed_dim > 0 ? opts.embed_dim : rho.dim() + 40;
    if (D < rho.dim()) throw TruncationTooSmall("group_orbit_tomogram: embed_dim too small");
    const int dim_b = D + kFockBuffer;
    auto [Q, P] = quadrature_operators(dim_b - 1);
    Matrix H_big = Matrix::Zero(dim_b, dim_b);
    if (coeffs[0] != 0.0) H_big += coeffs[0] * Q;
    if (coeffs[1] != 0.0) H_big += coeffs[1] * P;
    if (coeffs[2] != 0.0) H_big += coeffs[2] * 0.5 * (Q * P + P * Q);
    if (coeffs[3] != 0.0) H_big += coeffs[3] * Q * Q;
    if (coeffs[4] != 0.0) H_big += coeffs[4] * P * P;
    if (coeffs[5] != 0.0) H_big += coeffs[5] * Matrix::Identity(dim_b, dim_b);
    Matrix H = hermitize(H_big.topLeftCorner(D, D));

    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    Matrix rho_big = rho.embedded(D).rho;
    const Matrix rot = es.eigenvectors().adjoint() * rho_big * es.eigenvectors();
    Eigen::VectorXd weights(D);
    for (int i = 0; i < D; ++i) weights(i) = rot(i, i).real();
    const auto& lam = es.eigenvalues();

    const Axis& T = opts.t_axis;
    auto trace_at = [&](double t) {
        Complex acc{0.0, 0.0};
        for (int i = 0; i < D; ++i) acc += weights(i) * std::polar(1.0, -t * lam(i));
        return acc;
    };
    const double boundary =
        std::max(std::abs(trace_at(T.min)), std::abs(trace_at(T.max)));

    GroupOrbitResult result;
    result.boundary_magnitude = boundary;
    if (boundary > 1e-8) {
        if (!opts.allow_damping && boundary > 1e-4)
            throw TraceNotDecayed("group_orbit_tomogram: orbit trace magnitude " +
                                  std::to_string(boundary) +
                                  " at the t-grid ends with damping disabled");
        result.damping_applied = opts.allow_damping;
    }

    std::vector<Complex> traces(T.count);
#pragma omp parallel for schedule(static)
    for (int n = 0; n < T.count; ++n) {
        const double t = T.at(n);
        Complex v = trace_at(t);
        if (result.damping_applied) v *= std::exp(-opts.damping_eps * t * t);
        traces[n] = v;
    }

    result.profile.X = X;
    result.profile.values.assign(X.count, 0.0);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < X.count; ++k) {
        Complex acc{0.0, 0.0};
        for (int n = 0; n < T.count; ++n) {
            double w = T.step();
            if (n == 0 || n == T.count - 1) w *= 0.5;
            acc += traces[n] * std::polar(w, T.at(n) * X.at(k));
        }
        result.profile.values[k] = acc.real() / kTwoPi;
    }
    return result;
}

} // namespace tomo::star
