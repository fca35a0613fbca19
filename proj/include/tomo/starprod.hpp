#ifndef TOMO_STARPROD_HPP
#define TOMO_STARPROD_HPP

#include <array>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "tomo/fock.hpp"
#include "tomo/grid.hpp"
#include "tomo/quadric_spec.hpp"
#include "tomo/tomogram.hpp"
#include "tomo/window.hpp"

namespace tomo::star {

using Complex = std::complex<double>;

/// Operator <-> symbol map defined by a dequantizer/quantizer family over a
/// parameter domain (X fastest, parameter rows in row-major axis order).
/// Dequantizer values are Hermitian; quadrature weights are positive.
class QDPair {
public:
    QDPair(std::string name, int n_max, Axis X, std::vector<Axis> param_axes);
    virtual ~QDPair() = default;

    const std::string& name() const { return name_; }
    int n_max() const { return n_max_; }
    int dim() const { return n_max_ + 1; }
    const Axis& X_axis() const { return X_; }
    const std::vector<Axis>& param_axes() const { return param_axes_; }

    std::size_t param_rows() const;
    std::size_t domain_size() const { return param_rows() * X_.count; }
    std::vector<double> param_row(std::size_t row) const;
    double row_weight(std::size_t row) const; // trapezoid weight over the param axes

    /// Matrix of the dequantizer / quantizer at one flattened domain point
    /// x = row * X.count + k.
    virtual Matrix dequantizer_at(std::size_t x) const = 0;
    virtual Matrix quantizer_at(std::size_t x) const = 0;
    virtual bool has_quantizer() const { return true; }

    /// Bulk symbol map f_A(x) = Tr(A U(x)) over the whole domain.
    virtual std::vector<Complex> dequantize_bulk(const Matrix& A) const;
    /// Bulk reconstruction A = sum_x f(x) D(x) w(x).
    virtual Matrix quantize_bulk(const std::vector<Complex>& f) const;

protected:
    std::string name_;
    int n_max_;
    Axis X_;
    std::vector<Axis> param_axes_;
};

/// Symbol of an operator with respect to a pair.
struct Symbol {
    const QDPair* pair = nullptr;
    std::vector<Complex> values;

    double max_imag() const;
    std::vector<double> real_values() const;
};

Symbol dequantize(const Matrix& A, const QDPair& pair);
Matrix quantize(const Symbol& f);

/// Operational star product: dequantize(quantize(f) * quantize(g)).
Symbol star_product(const Symbol& f, const Symbol& g);

/// max over test states of 1 - Tr(QD(rho) rho)/Tr(rho^2).
double weak_duality_error(const QDPair& pair,
                          const std::vector<FockDensityMatrix>& test_states);

// Built-in pairs --------------------------------------------------------

/// Thick symplectic pair: gaussian dequantizer of (X - mu Q - nu P) and
/// quantizer (e^{s^2/2}/2pi) e^{iX} exp(-i(mu Q + nu P)). sigma = 0 selects
/// the singular pair (histogram dequantizer, unit prefactor).
std::unique_ptr<QDPair> make_thick_symplectic_pair(double sigma, int n_max, Axis X,
                                                   Axis mu, Axis nu);

/// Quadric pair: spectrally smoothed delta of (X - H_r) as dequantizer
/// (sigma_spec defaults to two X bins) and |det B|/(2pi) e^{i(X - H_r)} as
/// quantizer.
std::unique_ptr<QDPair> make_quadric_pair(const QuadricSpec& base, int n_max, Axis X,
                                          Axis mu, Axis nu, double sigma_spec = 0.0);

/// Deformed pair at the Wigner level: spectral dequantizer of
/// X - xi q - nu (qp + pq)/2; the quantizer is not available (it would need
/// the Weyl quantization of |q|), so quantize throws UnsupportedState.
std::unique_ptr<QDPair> make_deformed_pair(int n_max, Axis X, Axis xi, Axis nu,
                                           double sigma_spec = 0.0);

// Group-orbit tomogram ---------------------------------------------------

/// Generator order for the coefficient vector:
/// {Q, P, (QP + PQ)/2, Q^2, P^2, identity}.
struct GroupOrbitOptions {
    Axis t_axis{-12.0, 12.0, 1024};
    double damping_eps = 1e-4; // e^{-eps t^2} when damping engages
    bool allow_damping = true;
    int embed_dim = 0;         // 0: rho dimension + 40
};

struct GroupOrbitResult {
    XProfile profile;
    bool damping_applied = false;
    double boundary_magnitude = 0.0;
};

/// X-profile (1/2pi) int dt e^{itX} Tr(rho e^{-it sum_a g_a L_a}) over the
/// finite t grid; the trace is evaluated spectrally per node. Damping is
/// applied (and reported) when the trace has not decayed at the ends;
/// with damping disabled a boundary magnitude above 1e-4 raises
/// TraceNotDecayed.
GroupOrbitResult group_orbit_tomogram(const FockDensityMatrix& rho,
                                      const std::array<double, 6>& coeffs,
                                      const Axis& X,
                                      const GroupOrbitOptions& opts = {});

} // namespace tomo::star

#endif
