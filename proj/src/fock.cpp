#include "tomo/fock.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace tomo {

double FockDensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) / 2.0);
    return es.eigenvalues().minCoeff();
}

void FockDensityMatrix::validate() const {
    if (hermiticity_deviation() > 1e-12)
        throw NonPhysicalResult("density matrix is not Hermitian");
    if (std::abs(trace_real() - 1.0) > 1e-12)
        throw NonPhysicalResult("density matrix trace differs from 1");
    if (min_eigenvalue() < -1e-10)
        throw NonPhysicalResult("density matrix has a negative eigenvalue");
}

FockDensityMatrix FockDensityMatrix::embedded(int new_dim) const {
    if (new_dim < dim()) throw DimensionMismatch("embedded: target dimension too small");
    Matrix m = Matrix::Zero(new_dim, new_dim);
    m.topLeftCorner(dim(), dim()) = rho;
    return FockDensityMatrix(std::move(m));
}

std::string StateSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::vacuum: os << "vacuum"; break;
        case Kind::coherent:
            os << "coherent(" << alpha.real() << (alpha.imag() < 0 ? "" : "+")
               << alpha.imag() << "i)";
            break;
        case Kind::fock: os << "fock(" << n << ")"; break;
        case Kind::thermal: os << "thermal(" << nbar << ")"; break;
        case Kind::mixture: {
            os << "mixture(";
            for (std::size_t i = 0; i < components.size(); ++i) {
                if (i) os << ", ";
                os << components[i].first << "*" << components[i].second.describe();
            }
            os << ")";
            break;
        }
    }
    return os.str();
}

namespace {

FockDensityMatrix build_coherent(Complex alpha, int n_max) {
    const double a2 = std::norm(alpha);
    if (a2 > n_max / 4.0 + 1e-12) {
        std::ostringstream os;
        os << "coherent state |alpha|^2=" << a2 << " exceeds n_max/4=" << n_max / 4.0;
        throw TruncationTooSmall(os.str());
    }
    const int dim = n_max + 1;
    Eigen::VectorXcd c(dim);
    // c_n = e^{-|a|^2/2} a^n / sqrt(n!), built recursively.
    c(0) = std::exp(-a2 / 2.0);
    for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
    const double kept = c.squaredNorm();
    if (1.0 - kept > 1e-8) {
        std::ostringstream os;
        os << "coherent state truncation tail " << 1.0 - kept << " exceeds 1e-8";
        throw TruncationTooSmall(os.str());
    }
    c /= std::sqrt(kept);
    return FockDensityMatrix(c * c.adjoint());
}

FockDensityMatrix build_thermal(double nbar, int n_max) {
    if (nbar < 0.0) throw std::invalid_argument("thermal state: nbar must be >= 0");
    const int dim = n_max + 1;
    Matrix m = Matrix::Zero(dim, dim);
    if (nbar == 0.0) {
        m(0, 0) = 1.0;
        return FockDensityMatrix(std::move(m));
    }
    const double x = nbar / (1.0 + nbar);
    double kept = 0.0, w = 1.0 / (1.0 + nbar);
    for (int n = 0; n < dim; ++n) {
        m(n, n) = w;
        kept += w;
        w *= x;
    }
    if (1.0 - kept > 1e-8) {
        std::ostringstream os;
        os << "thermal state truncation tail " << 1.0 - kept << " exceeds 1e-8";
        throw TruncationTooSmall(os.str());
    }
    m /= kept;
    return FockDensityMatrix(std::move(m));
}

} // namespace

FockDensityMatrix build_state(const StateSpec& spec, int n_max) {
    if (n_max < 1) throw std::invalid_argument("build_state: n_max must be >= 1");
    const int dim = n_max + 1;
    switch (spec.kind) {
        case StateSpec::Kind::vacuum: {
            Matrix m = Matrix::Zero(dim, dim);
            m(0, 0) = 1.0;
            return FockDensityMatrix(std::move(m));
        }
        case StateSpec::Kind::fock: {
            if (spec.n < 0) throw std::invalid_argument("fock state: n must be >= 0");
            if (spec.n > n_max)
                throw TruncationTooSmall("fock state level exceeds the truncation");
            Matrix m = Matrix::Zero(dim, dim);
            m(spec.n, spec.n) = 1.0;
            return FockDensityMatrix(std::move(m));
        }
        case StateSpec::Kind::coherent:
            return build_coherent(spec.alpha, n_max);
        case StateSpec::Kind::thermal:
            return build_thermal(spec.nbar, n_max);
        case StateSpec::Kind::mixture: {
            if (spec.components.empty())
                throw std::invalid_argument("mixture: no components");
            double wsum = 0.0;
            for (const auto& [w, s] : spec.components) {
                if (w < 0.0) throw std::invalid_argument("mixture: negative weight");
                wsum += w;
            }
            if (std::abs(wsum - 1.0) > 1e-12)
                throw std::invalid_argument("mixture: weights must sum to 1");
            Matrix m = Matrix::Zero(dim, dim);
            for (const auto& [w, s] : spec.components) m += w * build_state(s, n_max).rho;
            return FockDensityMatrix(std::move(m));
        }
    }
    throw std::logic_error("build_state: unreachable");
}

Matrix annihilation_operator(int dim) {
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) a(n, n + 1) = std::sqrt(double(n + 1));
    return a;
}

std::pair<Matrix, Matrix> quadrature_operators(int n_max) {
    if (n_max < 1) throw std::invalid_argument("quadrature_operators: n_max must be >= 1");
    const int dim = n_max + 1;
    const Matrix a = annihilation_operator(dim);
    const Matrix ad = a.adjoint();
    const double s = 1.0 / std::sqrt(2.0);
    Matrix Q = s * (a + ad);
    Matrix P = Complex(0.0, -1.0) * s * (a - ad);
    return {std::move(Q), std::move(P)};
}

double fidelity(const FockDensityMatrix& a, const FockDensityMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("fidelity: dimensions differ");
    return (a.rho * b.rho).trace().real();
}

Matrix hermitize(const Matrix& m, double* deviation) {
    if (deviation) *deviation = 0.5 * (m - m.adjoint()).cwiseAbs().maxCoeff();
    return (m + m.adjoint()) / 2.0;
}

} // namespace tomo
