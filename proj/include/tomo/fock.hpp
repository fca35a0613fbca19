#ifndef TOMO_FOCK_HPP
#define TOMO_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "tomo/errors.hpp"

namespace tomo {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Density matrix on the truncated Fock space spanned by |0>..|n_max>.
/// Hermitian, unit trace, positive semidefinite within tolerance.
struct FockDensityMatrix {
    Matrix rho;

    FockDensityMatrix() = default;
    explicit FockDensityMatrix(Matrix m) : rho(std::move(m)) {}

    int dim() const { return static_cast<int>(rho.rows()); }
    int n_max() const { return dim() - 1; }

    double hermiticity_deviation() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
    double trace_real() const { return rho.trace().real(); }
    double min_eigenvalue() const;

    /// Checks the type invariants (Hermitian to 1e-12, trace 1 to 1e-12,
    /// min eigenvalue >= -1e-10); throws NonPhysicalResult on violation.
    void validate() const;

    /// Zero-padded copy on a larger truncated space.
    FockDensityMatrix embedded(int new_dim) const;
};

/// Declarative state description; parseable from JSON through the CLI.
struct StateSpec {
    enum class Kind { vacuum, coherent, fock, thermal, mixture };

    Kind kind = Kind::vacuum;
    Complex alpha{0.0, 0.0};                  // coherent
    int n = 0;                                // fock
    double nbar = 0.0;                        // thermal
    std::vector<std::pair<double, StateSpec>> components; // mixture

    static StateSpec vacuum() { return StateSpec{}; }
    static StateSpec coherent(Complex a) {
        StateSpec s; s.kind = Kind::coherent; s.alpha = a; return s;
    }
    static StateSpec fock(int n) {
        StateSpec s; s.kind = Kind::fock; s.n = n; return s;
    }
    static StateSpec thermal(double nbar) {
        StateSpec s; s.kind = Kind::thermal; s.nbar = nbar; return s;
    }
    static StateSpec mixture(std::vector<std::pair<double, StateSpec>> parts) {
        StateSpec s; s.kind = Kind::mixture; s.components = std::move(parts); return s;
    }

    std::string describe() const;
};

/// Builds the density matrix of `spec` on the Fock space truncated at n_max.
/// Coherent and thermal states are renormalized after truncation; throws
/// TruncationTooSmall when the discarded weight exceeds 1e-8.
FockDensityMatrix build_state(const StateSpec& spec, int n_max);

/// Position and momentum quadratures Q = (a + a^dag)/sqrt(2),
/// P = (a - a^dag)/(i sqrt(2)) on the truncated ladder basis.
std::pair<Matrix, Matrix> quadrature_operators(int n_max);

/// Annihilation operator on the truncated basis, a[n, n+1] = sqrt(n+1).
Matrix annihilation_operator(int dim);

/// Number of extra ladder levels used internally before cropping operator
/// products and exponentials back to the requested truncation.
constexpr int kFockBuffer = 4;

/// Plain overlap fidelity Re Tr(a * b); equals <psi|a|psi> when b is pure.
double fidelity(const FockDensityMatrix& a, const FockDensityMatrix& b);

/// (rho + rho^dag)/2 with the applied deviation reported through *deviation.
Matrix hermitize(const Matrix& m, double* deviation = nullptr);

} // namespace tomo

#endif
