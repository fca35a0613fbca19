#include "tomo/kernels.hpp"

#include <omp.h>

#include <Eigen/Eigenvalues>

#include "tomo/expm.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace tomo::kernels {

namespace {

constexpr int kReductionChunks = 64; // fixed, so results are thread-count independent

/// Odometer over grid nodes carrying coordinates and trapezoid weights.
struct NodeIter {
    const Grid& grid;
    int d;
    int idx[8];
    double x[8];
    double w = 1.0;
    std::vector<std::vector<double>> axis_w;

    explicit NodeIter(const Grid& g) : grid(g), d(g.dims()) {
        if (d > 8) throw std::invalid_argument("NodeIter: too many axes");
        axis_w.resize(d);
        for (int a = 0; a < d; ++a) {
            const Axis& ax = g.axes[a];
            axis_w[a].assign(ax.count, ax.step());
            axis_w[a].front() *= 0.5;
            axis_w[a].back() *= 0.5;
        }
        reset();
    }

    void reset() {
        for (int a = 0; a < d; ++a) idx[a] = 0;
        refresh();
    }

    void refresh() {
        w = 1.0;
        for (int a = 0; a < d; ++a) {
            x[a] = grid.axes[a].at(idx[a]);
            w *= axis_w[a][idx[a]];
        }
    }

    bool advance() {
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < grid.axes[a].count) {
                refresh();
                return true;
            }
            idx[a] = 0;
        }
        return false;
    }
};

/// CDF of the convolution of two centered uniforms of widths a >= b > 0,
/// evaluated at distance s from the left edge of the support [0, a + b].
inline double trapezoid_cdf(double s, double a, double b) {
    if (s <= 0.0) return 0.0;
    if (s >= a + b) return 1.0;
    if (s < b) return s * s / (2.0 * a * b);
    if (s <= a) return (2.0 * s - b) / (2.0 * a);
    const double t = a + b - s;
    return 1.0 - t * t / (2.0 * a * b);
}

/// Deposit of `mass` distributed as uniform(a) conv uniform(b) around
/// `center` (the exact image of a 2-axis cell under a locally linear form;
/// it tiles the projected lattice in every direction).
inline void deposit_trapezoid(double center, double a, double b, double mass,
                              const Axis& X, double* bins, double& dropped);

/// Uniform-interval deposit of `mass` over [center-half, center+half].
/// A point mass exactly on a bin edge goes to the lower bin.
inline void deposit(double center, double half, double mass, const Axis& X,
                    double* bins, double& dropped) {
    const double dX = X.step();
    const double lo_edge = X.min - 0.5 * dX;
    const int n = X.count;
    if (half < 1e-12 * dX) {
        const double t = (center - lo_edge) / dX;
        int k = static_cast<int>(std::floor(t));
        if (static_cast<double>(k) == t) k -= 1;
        if (k < 0 || k >= n) dropped += mass;
        else bins[k] += mass;
        return;
    }
    const double a = center - half, b = center + half;
    const double inv = mass / (2.0 * half);
    const double hi_edge = lo_edge + n * dX;
    if (a < lo_edge) dropped += (std::min(b, lo_edge) - a) * inv;
    if (b > hi_edge) dropped += (b - std::max(a, hi_edge)) * inv;
    const int k0 = std::max(0, static_cast<int>(std::floor((a - lo_edge) / dX)));
    const int k1 = std::min(n - 1, static_cast<int>(std::floor((b - lo_edge) / dX)));
    for (int k = k0; k <= k1; ++k) {
        const double bl = lo_edge + k * dX;
        const double ov = std::min(b, bl + dX) - std::max(a, bl);
        if (ov > 0.0) bins[k] += ov * inv;
    }
}

inline void deposit_trapezoid(double center, double a, double b, double mass,
                              const Axis& X, double* bins, double& dropped) {
    if (b > a) std::swap(a, b);
    const double dX = X.step();
    if (b < 1e-9 * std::max(a, dX)) {
        deposit(center, 0.5 * a, mass, X, bins, dropped);
        return;
    }
    const double L = 0.5 * (a + b);
    const double lo = center - L;
    const double lo_edge = X.min - 0.5 * dX;
    const int n = X.count;
    const int k0 = std::max(0, static_cast<int>(std::floor((lo - lo_edge) / dX)));
    const int k1 = std::min(n - 1, static_cast<int>(std::floor((center + L - lo_edge) / dX)));
    double kept = 0.0;
    for (int k = k0; k <= k1; ++k) {
        const double bl = lo_edge + k * dX;
        const double f = trapezoid_cdf(bl + dX - lo, a, b) - trapezoid_cdf(bl - lo, a, b);
        if (f > 0.0) {
            bins[k] += mass * f;
            kept += f;
        }
    }
    dropped += mass * (1.0 - kept);
}

/// Per-axis overlap fractions of a trapezoid deposit (widths a, b; either
/// may vanish) for the outer-product two-constraint maps.
inline void deposit_fractions(double center, double a, double b, const Axis& X,
                              std::vector<std::pair<int, double>>& out) {
    out.clear();
    if (b > a) std::swap(a, b);
    const double dX = X.step();
    const double lo_edge = X.min - 0.5 * dX;
    const int n = X.count;
    if (a < 1e-12 * dX) {
        const double t = (center - lo_edge) / dX;
        int k = static_cast<int>(std::floor(t));
        if (static_cast<double>(k) == t) k -= 1;
        if (k >= 0 && k < n) out.emplace_back(k, 1.0);
        return;
    }
    if (b < 1e-9 * std::max(a, dX)) {
        const double half = 0.5 * a;
        const double lo = center - half, hi = center + half;
        const double inv = 1.0 / a;
        const int k0 = std::max(0, static_cast<int>(std::floor((lo - lo_edge) / dX)));
        const int k1 = std::min(n - 1, static_cast<int>(std::floor((hi - lo_edge) / dX)));
        for (int k = k0; k <= k1; ++k) {
            const double bl = lo_edge + k * dX;
            const double ov = std::min(hi, bl + dX) - std::max(lo, bl);
            if (ov > 0.0) out.emplace_back(k, ov * inv);
        }
        return;
    }
    const double lo = center - 0.5 * (a + b);
    const int k0 = std::max(0, static_cast<int>(std::floor((lo - lo_edge) / dX)));
    const int k1 = std::min(n - 1,
                            static_cast<int>(std::floor((center + 0.5 * (a + b) - lo_edge) / dX)));
    for (int k = k0; k <= k1; ++k) {
        const double bl = lo_edge + k * dX;
        const double f = trapezoid_cdf(bl + dX - lo, a, b) - trapezoid_cdf(bl - lo, a, b);
        if (f > 0.0) out.emplace_back(k, f);
    }
}

/// Bilinear field value at offsets (u0, u1) in units of the cell steps,
/// u in (-1/2, 1/2), around node (i0, j0) of a two-axis field.
double bilinear_at(const RealField& field, int i0, int j0, double u0, double u1) {
    const int n0 = field.grid.axes[0].count;
    const int n1 = field.grid.axes[1].count;
    const int i1 = u0 >= 0.0 ? std::min(i0 + 1, n0 - 1) : std::max(i0 - 1, 0);
    const int j1 = u1 >= 0.0 ? std::min(j0 + 1, n1 - 1) : std::max(j0 - 1, 0);
    const double a = std::abs(u0), b = std::abs(u1);
    auto at = [&](int i, int j) {
        return field.values[static_cast<std::size_t>(i) * n1 + j];
    };
    return (1.0 - a) * (1.0 - b) * at(i0, j0) + a * (1.0 - b) * at(i1, j0) +
           (1.0 - a) * b * at(i0, j1) + a * b * at(i1, j1);
}

void bin_row(const RealField& field, const QuadForm& form, const Axis& X,
             double scale, double* bins, double& dropped_frac) {
    const int d = field.grid.dims();
    std::vector<double> h(d);
    for (int a = 0; a < d; ++a) h[a] = field.grid.axes[a].step();
    const double mean_off = form.cell_mean_offset(h);

    // Near critical points of curved forms the cell image shrinks below the
    // bin width and plain deposits leave lattice-count ripple; such cells
    // are subdivided with bilinear field interpolation.
    bool nonzero_hessian = false;
    for (double a : form.A)
        if (a != 0.0) { nonzero_hessian = true; break; }
    const bool curved = nonzero_hessian && d == 2;
    const double min_span = 2.0 * X.step();
    constexpr int kSub = 4;

    NodeIter it(field.grid);
    double g[8];
    double total = 0.0, dropped = 0.0;
    std::size_t flat = 0;
    do {
        const double v = field.values[flat++];
        if (v == 0.0) continue;
        const double mass = v * it.w * scale;
        form.gradient(it.x, g);
        double span = 0.0;
        for (int a = 0; a < d; ++a) span += std::abs(g[a]) * h[a];

        if (curved && span < min_span) {
            const double base_w = it.w * scale / (kSub * kSub);
            double xs[2];
            for (int si = 0; si < kSub; ++si) {
                const double u0 = (si + 0.5) / kSub - 0.5;
                xs[0] = it.x[0] + u0 * h[0];
                for (int sj = 0; sj < kSub; ++sj) {
                    const double u1 = (sj + 0.5) / kSub - 0.5;
                    xs[1] = it.x[1] + u1 * h[1];
                    const double vs = bilinear_at(field, it.idx[0], it.idx[1], u0, u1);
                    if (vs == 0.0) continue;
                    form.gradient(xs, g);
                    const double center = form.value(xs) + mean_off / (kSub * kSub);
                    deposit_trapezoid(center, std::abs(g[0]) * h[0] / kSub,
                                      std::abs(g[1]) * h[1] / kSub, vs * base_w, X,
                                      bins, dropped);
                }
            }
            total += std::abs(mass);
            continue;
        }

        const double center = form.value(it.x) + mean_off;
        if (d == 2)
            deposit_trapezoid(center, std::abs(g[0]) * h[0], std::abs(g[1]) * h[1],
                              mass, X, bins, dropped);
        else
            deposit(center, 0.5 * span, mass, X, bins, dropped);
        total += std::abs(mass);
    } while (it.advance());
    const double dX = X.step();
    for (int k = 0; k < X.count; ++k) bins[k] /= dX;
    dropped_frac = total > 0.0 ? std::abs(dropped) / total : 0.0;
}

void bin_row_2d(const RealField& field, const QuadForm& f1, const QuadForm& f2,
                const Axis& X1, const Axis& X2, double scale, double* bins,
                double& dropped_frac) {
    const int d = field.grid.dims();
    std::vector<double> h(d);
    for (int a = 0; a < d; ++a) h[a] = field.grid.axes[a].step();
    const double off1 = f1.cell_mean_offset(h);
    const double off2 = f2.cell_mean_offset(h);

    NodeIter it(field.grid);
    double g[8];
    std::vector<std::pair<int, double>> fr1, fr2;
    fr1.reserve(16);
    fr2.reserve(16);
    double total = 0.0, dropped = 0.0;
    std::size_t flat = 0;
    const int n2 = X2.count;
    do {
        const double v = field.values[flat++];
        if (v == 0.0) continue;
        const double mass = v * it.w * scale;

        // each constraint touches at most two axes; feed the two largest
        // per-axis widths into the trapezoid deposit
        auto widths = [&](const QuadForm& f) {
            f.gradient(it.x, g);
            double w1 = 0.0, w2 = 0.0;
            for (int a = 0; a < d; ++a) {
                const double wa = std::abs(g[a]) * h[a];
                if (wa > w1) { w2 = w1; w1 = wa; }
                else if (wa > w2) w2 = wa;
            }
            return std::pair<double, double>{w1, w2};
        };
        const auto [a1, b1] = widths(f1);
        deposit_fractions(f1.value(it.x) + off1, a1, b1, X1, fr1);
        const auto [a2, b2] = widths(f2);
        deposit_fractions(f2.value(it.x) + off2, a2, b2, X2, fr2);

        double kept = 0.0;
        for (const auto& [k1, w1] : fr1)
            for (const auto& [k2, w2] : fr2) {
                bins[static_cast<std::size_t>(k1) * n2 + k2] += mass * w1 * w2;
                kept += w1 * w2;
            }
        dropped += std::abs(mass) * (1.0 - kept);
        total += std::abs(mass);
    } while (it.advance());
    const double inv = 1.0 / (X1.step() * X2.step());
    const std::size_t nb = static_cast<std::size_t>(X1.count) * n2;
    for (std::size_t k = 0; k < nb; ++k) bins[k] *= inv;
    dropped_frac = total > 0.0 ? dropped / total : 0.0;
}

void window_row(const RealField& field, const QuadForm& form, const WindowSpec& window,
                const Axis& X, double scale, double* out) {
    const double hw = window.support_halfwidth();
    const double dX = X.step();
    NodeIter it(field.grid);
    std::size_t flat = 0;
    do {
        const double v = field.values[flat++];
        if (v == 0.0) continue;
        const double mass = v * it.w * scale;
        const double center = form.value(it.x);
        const int k0 = std::max(0, static_cast<int>(std::ceil((center - hw - X.min) / dX)));
        const int k1 = std::min(X.count - 1,
                                static_cast<int>(std::floor((center + hw - X.min) / dX)));
        for (int k = k0; k <= k1; ++k) out[k] += mass * window.value(X.at(k) - center);
    } while (it.advance());
}

} // namespace

QuadForm QuadForm::linear(std::vector<double> coeffs, double c0) {
    QuadForm f;
    f.d = static_cast<int>(coeffs.size());
    f.b = std::move(coeffs);
    f.c = c0;
    return f;
}

QuadForm QuadForm::shifted_quadratic(const std::vector<double>& B,
                                     const std::vector<double>& C,
                                     const std::vector<double>& shift, int d) {
    // 0.5*(x-r)'B(x-r) + C'(x-r) = 0.5 x'Bx + (C - Br)'x + (0.5 r'Br - C'r)
    QuadForm f;
    f.d = d;
    f.A = B;
    f.b.assign(d, 0.0);
    f.c = 0.0;
    for (int i = 0; i < d; ++i) {
        double br = 0.0;
        for (int j = 0; j < d; ++j) br += B[i * d + j] * shift[j];
        f.b[i] = (C.empty() ? 0.0 : C[i]) - br;
        f.c += 0.5 * shift[i] * br - (C.empty() ? 0.0 : C[i]) * shift[i];
    }
    return f;
}

QuadForm QuadForm::full_quadratic(const std::vector<double>& B,
                                  const std::vector<double>& shift, int d) {
    std::vector<double> twoB(B.size());
    for (std::size_t i = 0; i < B.size(); ++i) twoB[i] = 2.0 * B[i];
    return shifted_quadratic(twoB, {}, shift, d);
}

double QuadForm::value(const double* x) const {
    double v = c;
    for (int i = 0; i < d; ++i) v += b[i] * x[i];
    if (!A.empty()) {
        for (int i = 0; i < d; ++i) {
            double ax = 0.0;
            for (int j = 0; j < d; ++j) ax += A[i * d + j] * x[j];
            v += 0.5 * x[i] * ax;
        }
    }
    return v;
}

void QuadForm::gradient(const double* x, double* g) const {
    for (int i = 0; i < d; ++i) {
        g[i] = b[i];
        if (!A.empty())
            for (int j = 0; j < d; ++j) g[i] += A[i * d + j] * x[j];
    }
}

double QuadForm::cell_mean_offset(const std::vector<double>& h) const {
    if (A.empty()) return 0.0;
    double off = 0.0;
    for (int a = 0; a < d; ++a) off += A[a * d + a] * h[a] * h[a];
    return off / 24.0;
}

BinResult bin_marginal_serial(const RealField& field, const std::vector<QuadForm>& forms,
                              const Axis& X, double scale) {
    const std::size_t np = forms.size();
    BinResult r;
    r.values.assign(np * X.count, 0.0);
    double worst = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
        double df = 0.0;
        bin_row(field, forms[p], X, scale, r.values.data() + p * X.count, df);
        worst = std::max(worst, df);
    }
    r.dropped_fraction = worst;
    return r;
}

BinResult bin_marginal(const RealField& field, const std::vector<QuadForm>& forms,
                       const Axis& X, double scale) {
    const std::size_t np = forms.size();
    BinResult r;
    r.values.assign(np * X.count, 0.0);
    std::vector<double> dropped(np, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(np); ++p)
        bin_row(field, forms[p], X, scale, r.values.data() + p * X.count, dropped[p]);
    r.dropped_fraction = np ? *std::max_element(dropped.begin(), dropped.end()) : 0.0;
    return r;
}

BinResult bin_marginal_2d_serial(const RealField& field,
                                 const std::vector<std::pair<QuadForm, QuadForm>>& forms,
                                 const Axis& X1, const Axis& X2, double scale) {
    const std::size_t np = forms.size();
    const std::size_t nb = static_cast<std::size_t>(X1.count) * X2.count;
    BinResult r;
    r.values.assign(np * nb, 0.0);
    double worst = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
        double df = 0.0;
        bin_row_2d(field, forms[p].first, forms[p].second, X1, X2, scale,
                   r.values.data() + p * nb, df);
        worst = std::max(worst, df);
    }
    r.dropped_fraction = worst;
    return r;
}

BinResult bin_marginal_2d(const RealField& field,
                          const std::vector<std::pair<QuadForm, QuadForm>>& forms,
                          const Axis& X1, const Axis& X2, double scale) {
    const std::size_t np = forms.size();
    const std::size_t nb = static_cast<std::size_t>(X1.count) * X2.count;
    BinResult r;
    r.values.assign(np * nb, 0.0);
    std::vector<double> dropped(np, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(np); ++p)
        bin_row_2d(field, forms[p].first, forms[p].second, X1, X2, scale,
                   r.values.data() + p * nb, dropped[p]);
    r.dropped_fraction = np ? *std::max_element(dropped.begin(), dropped.end()) : 0.0;
    return r;
}

std::vector<double> window_marginal_serial(const RealField& field,
                                           const std::vector<QuadForm>& forms,
                                           const WindowSpec& window, const Axis& X,
                                           double scale) {
    if (window.is_delta())
        throw std::invalid_argument("window_marginal: delta windows use the binned path");
    std::vector<double> out(forms.size() * X.count, 0.0);
    for (std::size_t p = 0; p < forms.size(); ++p)
        window_row(field, forms[p], window, X, scale, out.data() + p * X.count);
    return out;
}

std::vector<double> window_marginal(const RealField& field,
                                    const std::vector<QuadForm>& forms,
                                    const WindowSpec& window, const Axis& X,
                                    double scale) {
    if (window.is_delta())
        throw std::invalid_argument("window_marginal: delta windows use the binned path");
    std::vector<double> out(forms.size() * X.count, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(forms.size()); ++p)
        window_row(field, forms[p], window, X, scale, out.data() + p * X.count);
    return out;
}

double bin_sinc(double k, double dX) {
    const double u = 0.5 * k * dX;
    if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

std::vector<Complex> char_rows_serial(const std::vector<double>& values, int rows,
                                      const Axis& X, double k, bool bin_weights) {
    const int nX = X.count;
    std::vector<Complex> phase(nX);
    for (int j = 0; j < nX; ++j) {
        double w = X.step();
        if (!bin_weights && (j == 0 || j == nX - 1)) w *= 0.5;
        phase[j] = std::polar(w, k * X.at(j));
    }
    std::vector<Complex> out(rows);
    for (int r = 0; r < rows; ++r) {
        Complex acc{0.0, 0.0};
        const double* row = values.data() + static_cast<std::size_t>(r) * nX;
        for (int j = 0; j < nX; ++j) acc += row[j] * phase[j];
        out[r] = acc;
    }
    return out;
}

std::vector<Complex> char_rows(const std::vector<double>& values, int rows,
                               const Axis& X, double k, bool bin_weights) {
    const int nX = X.count;
    std::vector<Complex> phase(nX);
    for (int j = 0; j < nX; ++j) {
        double w = X.step();
        if (!bin_weights && (j == 0 || j == nX - 1)) w *= 0.5;
        phase[j] = std::polar(w, k * X.at(j));
    }
    std::vector<Complex> out(rows);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < rows; ++r) {
        Complex acc{0.0, 0.0};
        const double* row = values.data() + static_cast<std::size_t>(r) * nX;
        for (int j = 0; j < nX; ++j) acc += row[j] * phase[j];
        out[r] = acc;
    }
    return out;
}

namespace {

std::vector<Complex> separable_fourier_impl(const std::vector<Complex>& in,
                                            const std::vector<Axis>& axes,
                                            const std::vector<std::vector<double>>& targets,
                                            double sign, bool parallel) {
    if (axes.size() != targets.size())
        throw std::invalid_argument("separable_fourier: axis/target count mismatch");
    std::vector<Complex> cur = in;
    for (std::size_t s = 0; s < axes.size(); ++s) {
        const Axis& ax = axes[s];
        const int nin = ax.count;
        const std::vector<double>& tgt = targets[s];
        const int nout = static_cast<int>(tgt.size());
        const std::size_t rest = cur.size() / nin;

        std::vector<Complex> phase(static_cast<std::size_t>(nin) * nout);
        for (int i = 0; i < nin; ++i) {
            double w = ax.step();
            if (i == 0 || i == nin - 1) w *= 0.5;
            for (int j = 0; j < nout; ++j)
                phase[static_cast<std::size_t>(i) * nout + j] =
                    std::polar(w, sign * ax.at(i) * tgt[j]);
        }

        std::vector<Complex> next(rest * nout);
#pragma omp parallel for schedule(static) if (parallel)
        for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rest); ++r) {
            for (int j = 0; j < nout; ++j) {
                Complex acc{0.0, 0.0};
                for (int i = 0; i < nin; ++i)
                    acc += cur[static_cast<std::size_t>(i) * rest + r] *
                           phase[static_cast<std::size_t>(i) * nout + j];
                next[static_cast<std::size_t>(r) * nout + j] = acc;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace

std::vector<Complex> separable_fourier_serial(const std::vector<Complex>& in,
                                              const std::vector<Axis>& axes,
                                              const std::vector<std::vector<double>>& targets,
                                              double sign) {
    return separable_fourier_impl(in, axes, targets, sign, false);
}

std::vector<Complex> separable_fourier(const std::vector<Complex>& in,
                                       const std::vector<Axis>& axes,
                                       const std::vector<std::vector<double>>& targets,
                                       double sign) {
    return separable_fourier_impl(in, axes, targets, sign, true);
}

namespace {

double skip_threshold(const std::vector<Complex>& coeffs) {
    double cmax = 0.0;
    for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
    return 1e-12 * cmax;
}

} // namespace

Matrix expm_weighted_sum_serial(const std::vector<Complex>& coeffs,
                                const std::function<Matrix(std::size_t)>& generator,
                                int out_dim) {
    const double floor = skip_threshold(coeffs);
    Matrix acc = Matrix::Zero(out_dim, out_dim);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (std::abs(coeffs[k]) <= floor) continue;
        Matrix e = expm(Complex(0.0, -1.0) * generator(k));
        acc += coeffs[k] * e.topLeftCorner(out_dim, out_dim);
    }
    return acc;
}

Matrix expm_weighted_sum(const std::vector<Complex>& coeffs,
                         const std::function<Matrix(std::size_t)>& generator,
                         int out_dim) {
    const double floor = skip_threshold(coeffs);
    const std::size_t n = coeffs.size();
    const int nchunks = kReductionChunks;
    std::vector<Matrix> partial(nchunks, Matrix::Zero(out_dim, out_dim));
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < nchunks; ++c) {
        const std::size_t lo = n * c / nchunks;
        const std::size_t hi = n * (c + 1) / nchunks;
        Matrix acc = Matrix::Zero(out_dim, out_dim);
        for (std::size_t k = lo; k < hi; ++k) {
            if (std::abs(coeffs[k]) <= floor) continue;
            Matrix e = expm(Complex(0.0, -1.0) * generator(k));
            acc += coeffs[k] * e.topLeftCorner(out_dim, out_dim);
        }
        partial[c] = std::move(acc);
    }
    Matrix acc = Matrix::Zero(out_dim, out_dim);
    for (int c = 0; c < nchunks; ++c) acc += partial[c];
    return acc;
}

namespace {

Matrix displacement_sum_impl(const std::vector<Complex>& coeffs,
                             const std::vector<std::array<double, 2>>& mu_nu,
                             int n_max, bool parallel) {
    if (coeffs.size() != mu_nu.size())
        throw std::invalid_argument("displacement_weighted_sum: size mismatch");
    double beta_max = 0.0;
    for (const auto& [mu, nu] : mu_nu)
        beta_max = std::max(beta_max, std::sqrt((mu * mu + nu * nu) / 2.0));
    const int dim_top = displacement_reach_dim(n_max, beta_max);
    const int out = n_max + 1;

    Matrix Q = Matrix::Zero(dim_top, dim_top);
    for (int n = 0; n + 1 < dim_top; ++n) {
        Q(n, n + 1) = std::sqrt((n + 1) / 2.0);
        Q(n + 1, n) = Q(n, n + 1);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(Q);
    const Eigen::VectorXd lam = es.eigenvalues().real();
    const Matrix Vb = es.eigenvectors().topRows(out); // out x dim_top

    const double floor = skip_threshold(coeffs);
    const int nchunks = kReductionChunks;
    const std::size_t n = coeffs.size();
    std::vector<Matrix> partial(nchunks, Matrix::Zero(out, out));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int c = 0; c < nchunks; ++c) {
        const std::size_t lo = n * c / nchunks;
        const std::size_t hi = n * (c + 1) / nchunks;
        Matrix acc = Matrix::Zero(out, out);
        Eigen::VectorXcd ph(dim_top);
        Matrix scaled(out, dim_top);
        for (std::size_t k = lo; k < hi; ++k) {
            if (std::abs(coeffs[k]) <= floor) continue;
            const double mu = mu_nu[k][0], nu = mu_nu[k][1];
            const double s = std::sqrt(mu * mu + nu * nu);
            const double phi = std::atan2(nu, mu);
            for (int i = 0; i < dim_top; ++i) ph(i) = std::polar(1.0, -s * lam(i));
            scaled = Vb * ph.asDiagonal();
            Matrix K = scaled * Vb.adjoint(); // exp(-i s Q) block
            for (int m = 0; m < out; ++m)
                for (int nn = 0; nn < out; ++nn)
                    acc(m, nn) += coeffs[k] * std::polar(1.0, phi * (m - nn)) * K(m, nn);
        }
        partial[c] = std::move(acc);
    }
    Matrix acc = Matrix::Zero(out, out);
    for (int c = 0; c < nchunks; ++c) acc += partial[c];
    return acc;
}

} // namespace

Matrix displacement_weighted_sum(const std::vector<Complex>& coeffs,
                                 const std::vector<std::array<double, 2>>& mu_nu,
                                 int n_max) {
    return displacement_sum_impl(coeffs, mu_nu, n_max, true);
}

Matrix displacement_weighted_sum_serial(const std::vector<Complex>& coeffs,
                                        const std::vector<std::array<double, 2>>& mu_nu,
                                        int n_max) {
    return displacement_sum_impl(coeffs, mu_nu, n_max, false);
}

int displacement_reach_dim(int n_max, double beta_max) {
    const double top = std::sqrt(n_max + 1.0) + std::max(beta_max, 0.0);
    const int reach = static_cast<int>(std::ceil(top * top)) + 8;
    return std::max(n_max + 1 + kFockBuffer, reach);
}

void hermite_functions(double x, int count, double* out) {
    const double pi_quarter = 0.75112554446494248286; // pi^(-1/4)
    out[0] = pi_quarter * std::exp(-0.5 * x * x);
    if (count == 1) return;
    out[1] = std::sqrt(2.0) * x * out[0];
    for (int n = 2; n < count; ++n)
        out[n] = std::sqrt(2.0 / n) * x * out[n - 1] -
                 std::sqrt((n - 1.0) / n) * out[n - 2];
}

namespace {

RealField wigner_transform_impl(const Matrix& rho, const Grid& grid, int n_s,
                                bool parallel) {
    if (grid.dims() != 2)
        throw std::invalid_argument("wigner_transform: single-mode grids only");
    const int d = static_cast<int>(rho.rows());
    const Axis& pax = grid.axes[0];
    const Axis& qax = grid.axes[1];

    // Position density at the grid boundary must be negligible.
    auto diag_density = [&](double x) {
        std::vector<double> u(d);
        hermite_functions(x, d, u.data());
        double v = 0.0;
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n) v += (rho(m, n) * u[m] * u[n]).real();
        return v;
    };
    for (double edge : {qax.min, qax.max, pax.min, pax.max}) {
        if (std::abs(diag_density(edge)) > 1e-10)
            throw GridTooSmall("wigner_transform: state has support at the grid boundary");
    }

    const double x_supp = std::sqrt(2.0 * (d - 1) + 1.0) + 5.0;
    const double L = 2.0 * x_supp;
    Axis s_axis(-L, L, n_s);

    // A[j][l] = <q_j - s_l/2| rho |q_j + s_l/2>
    const int nq = qax.count, np = pax.count;
    std::vector<Complex> A(static_cast<std::size_t>(nq) * n_s);
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < nq; ++j) {
        std::vector<double> ul(d), ur(d);
        std::vector<Complex> t(d);
        const double q = qax.at(j);
        for (int l = 0; l < n_s; ++l) {
            const double s = s_axis.at(l);
            hermite_functions(q - 0.5 * s, d, ul.data());
            hermite_functions(q + 0.5 * s, d, ur.data());
            for (int m = 0; m < d; ++m) {
                Complex acc{0.0, 0.0};
                for (int n = 0; n < d; ++n) acc += rho(m, n) * ur[n];
                t[m] = acc;
            }
            Complex acc{0.0, 0.0};
            for (int m = 0; m < d; ++m) acc += ul[m] * t[m];
            A[static_cast<std::size_t>(j) * n_s + l] = acc;
        }
    }

    // W(p,q) = Re sum_l w_l A[q][l] e^{i p s_l}
    RealField out(grid);
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < np; ++i) {
        std::vector<Complex> ph(n_s);
        const double p = pax.at(i);
        for (int l = 0; l < n_s; ++l) {
            double w = s_axis.step();
            if (l == 0 || l == n_s - 1) w *= 0.5;
            ph[l] = std::polar(w, p * s_axis.at(l));
        }
        for (int j = 0; j < nq; ++j) {
            Complex acc{0.0, 0.0};
            const Complex* row = A.data() + static_cast<std::size_t>(j) * n_s;
            for (int l = 0; l < n_s; ++l) acc += row[l] * ph[l];
            out.values[static_cast<std::size_t>(i) * nq + j] = acc.real();
        }
    }
    return out;
}

} // namespace

RealField wigner_transform_serial(const Matrix& rho, const Grid& grid, int n_s) {
    return wigner_transform_impl(rho, grid, n_s, false);
}

RealField wigner_transform(const Matrix& rho, const Grid& grid, int n_s) {
    return wigner_transform_impl(rho, grid, n_s, true);
}

} // namespace tomo::kernels
