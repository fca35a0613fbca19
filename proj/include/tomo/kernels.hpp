#ifndef TOMO_KERNELS_HPP
#define TOMO_KERNELS_HPP

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "tomo/field.hpp"
#include "tomo/fock.hpp"
#include "tomo/grid.hpp"
#include "tomo/window.hpp"

// Hot loops of the library. Every kernel has a straightforward serial
// implementation (the reference used by the consistency tests and the
// benchmark) and an OpenMP variant that parallelizes over independent
// output rows, so both produce bitwise-identical results.

namespace tomo::kernels {

using Complex = std::complex<double>;

/// Scalar form X(x) = 0.5 x'Ax + b'x + c over the field axes.
/// A is symmetric (empty means zero). Covers every marginal family:
/// linear sections, quadrics with shifts, and the q*p deformation.
struct QuadForm {
    int d = 0;
    std::vector<double> A; // d*d row-major, empty for linear forms
    std::vector<double> b; // d
    double c = 0.0;

    static QuadForm linear(std::vector<double> coeffs, double c0 = 0.0);
    /// 0.5*(x-shift)'B(x-shift) + C'(x-shift) expanded to (A, b, c).
    static QuadForm shifted_quadratic(const std::vector<double>& B,
                                      const std::vector<double>& C,
                                      const std::vector<double>& shift, int d);
    /// (x-shift)'B(x-shift) without the 1/2 (classical quadric convention).
    static QuadForm full_quadratic(const std::vector<double>& B,
                                   const std::vector<double>& shift, int d);

    double value(const double* x) const;
    void gradient(const double* x, double* g) const;
    /// Mean of the form over a cell centered at x: value + sum_a A_aa h_a^2/24.
    double cell_mean_offset(const std::vector<double>& h) const;
};

/// Result of a binned marginal: accumulated values (per unit X) and the
/// fraction of mass that fell outside the X grid.
struct BinResult {
    std::vector<double> values; // [param][X] flattened
    double dropped_fraction = 0.0;
};

/// Marginal of `field` over the level sets of one form per parameter point,
/// by mass deposit into X bins. Each grid node deposits its trapezoid mass
/// uniformly over the linearized image of its cell (halfwidth
/// sum_a |dX/dx_a| h_a / 2, Hessian-corrected center), which keeps the
/// histogram second-order accurate in the grid spacing. A mass exactly on a
/// bin edge goes to the lower bin.
BinResult bin_marginal(const RealField& field, const std::vector<QuadForm>& forms,
                       const Axis& X, double scale);
BinResult bin_marginal_serial(const RealField& field, const std::vector<QuadForm>& forms,
                              const Axis& X, double scale);

/// Joint marginal with two form constraints per parameter point
/// (outer-product deposit over an X1 x X2 bin grid).
BinResult bin_marginal_2d(const RealField& field,
                          const std::vector<std::pair<QuadForm, QuadForm>>& forms,
                          const Axis& X1, const Axis& X2, double scale);
BinResult bin_marginal_2d_serial(const RealField& field,
                                 const std::vector<std::pair<QuadForm, QuadForm>>& forms,
                                 const Axis& X1, const Axis& X2, double scale);

/// Window-smoothed marginal: values[param][k] = scale * sum_cells
/// field * w_trapezoid * window(X_k - form(x)). Direct quadrature, no binning.
std::vector<double> window_marginal(const RealField& field,
                                    const std::vector<QuadForm>& forms,
                                    const WindowSpec& window, const Axis& X,
                                    double scale);
std::vector<double> window_marginal_serial(const RealField& field,
                                           const std::vector<QuadForm>& forms,
                                           const WindowSpec& window, const Axis& X,
                                           double scale);

/// Attenuation of the X transform of histogram data at frequency k:
/// sinc(k dX / 2). Dividing by it undoes the bin smearing exactly.
double bin_sinc(double k, double dX);

/// Per-row Fourier transform of tomogram rows in X at frequency k:
/// out[row] = sum_j values[row*nX + j] * e^{i k X_j} * w_j. Histogram rows
/// (bin masses / dX) take full rectangle weights (bin_weights = true);
/// smooth point samples take trapezoid end weights.
std::vector<Complex> char_rows(const std::vector<double>& values, int rows,
                               const Axis& X, double k, bool bin_weights = false);
std::vector<Complex> char_rows_serial(const std::vector<double>& values, int rows,
                                      const Axis& X, double k,
                                      bool bin_weights = false);

/// One separable stage per axis of sum_i G[i,...] e^{i sign r_i y_j} w_i,
/// evaluated for every axis in order; `in` is flattened row-major over
/// `axes`, the result is row-major over the target axes. Exact on arbitrary
/// uniform target grids (no resampling).
std::vector<Complex> separable_fourier(const std::vector<Complex>& in,
                                       const std::vector<Axis>& axes,
                                       const std::vector<std::vector<double>>& targets,
                                       double sign);
std::vector<Complex> separable_fourier_serial(const std::vector<Complex>& in,
                                              const std::vector<Axis>& axes,
                                              const std::vector<std::vector<double>>& targets,
                                              double sign);

/// sum_k coeff[k] * expm(-i * generator(k)) cropped to out_dim, accumulated
/// over a fixed chunk decomposition so the result does not depend on the
/// thread count. generator(k) may return matrices of any dimension
/// >= out_dim (displacement-type nodes need room above the crop; see
/// displacement_reach_dim). Nodes with |coeff| below 1e-12 of the largest
/// are skipped.
Matrix expm_weighted_sum(const std::vector<Complex>& coeffs,
                         const std::function<Matrix(std::size_t)>& generator,
                         int out_dim);
Matrix expm_weighted_sum_serial(const std::vector<Complex>& coeffs,
                                const std::function<Matrix(std::size_t)>& generator,
                                int out_dim);

/// Basis size needed so that the truncated exponential of a displacement-
/// type generator reproduces the exact matrix elements up to level n_max:
/// a state at level n displaced by beta reaches level ~ (sqrt(n) + beta)^2.
int displacement_reach_dim(int n_max, double beta_max);

/// sum_k coeff[k] * exp(-i(mu_k Q + nu_k P)) cropped to n_max+1, through the
/// exact factorization exp(-i s Q_phi) = e^{i phi N} exp(-i s Q) e^{-i phi N}
/// (one eigendecomposition of Q at the reach dimension serves every node).
/// Bitwise-equivalent serial and parallel variants; agrees with the
/// scaling-and-squaring route to roundoff.
Matrix displacement_weighted_sum(const std::vector<Complex>& coeffs,
                                 const std::vector<std::array<double, 2>>& mu_nu,
                                 int n_max);
Matrix displacement_weighted_sum_serial(const std::vector<Complex>& coeffs,
                                        const std::vector<std::array<double, 2>>& mu_nu,
                                        int n_max);

/// Wigner transform of a truncated density matrix on a single-mode grid:
/// W(p,q) = int <q - s/2| rho |q + s/2> e^{i p s} ds, with the slice
/// integral evaluated on n_s trapezoid nodes spanning the state support.
RealField wigner_transform(const Matrix& rho, const Grid& grid, int n_s = 2048);
RealField wigner_transform_serial(const Matrix& rho, const Grid& grid, int n_s = 2048);

/// Harmonic-oscillator eigenfunctions psi_0..psi_{count-1} at x.
void hermite_functions(double x, int count, double* out);

} // namespace tomo::kernels

#endif
