#include "tomo/analytic.hpp"

#include <cmath>

namespace tomo::analytic {

namespace {
constexpr double kPi = 3.14159265358979323846;

double laguerre(int n, double x) {
    double lm1 = 1.0;
    if (n == 0) return lm1;
    double l = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        const double lp1 = ((2.0 * k + 1.0 - x) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}
} // namespace

double coherent_tomogram_value(Complex alpha, double sigma, double mu, double nu,
                               double X) {
    const double s2 = mu * mu + nu * nu + 2.0 * sigma * sigma;
    if (s2 <= 0.0)
        throw std::invalid_argument("coherent_tomogram_value: (mu, nu, sigma) = 0 "
                                    "has no pointwise value");
    const double xbar = std::sqrt(2.0) * (mu * alpha.real() + nu * alpha.imag());
    const double d = X - xbar;
    return std::exp(-d * d / s2) / std::sqrt(kPi * s2);
}

double fock1_tomogram_value(double mu, double nu, double X) {
    const double s2 = mu * mu + nu * nu;
    const double s = std::sqrt(s2);
    const double u = X / s;
    return (2.0 / std::sqrt(kPi)) * u * u * std::exp(-u * u) / s;
}

double thermal_tomogram_value(double nbar, double mu, double nu, double X) {
    const double var = (mu * mu + nu * nu) * (nbar + 0.5);
    return std::exp(-X * X / (2.0 * var)) / std::sqrt(2.0 * kPi * var);
}

double wigner_vacuum(double p, double q) { return 2.0 * std::exp(-p * p - q * q); }

double wigner_coherent(Complex alpha, double p, double q) {
    const double dq = q - std::sqrt(2.0) * alpha.real();
    const double dp = p - std::sqrt(2.0) * alpha.imag();
    return 2.0 * std::exp(-dp * dp - dq * dq);
}

double wigner_fock(int n, double p, double q) {
    const double r2 = p * p + q * q;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return 2.0 * sign * laguerre(n, 2.0 * r2) * std::exp(-r2);
}

double wigner_thermal(double nbar, double p, double q) {
    const double s = nbar + 0.5;
    return (1.0 / s) * std::exp(-(p * p + q * q) / (2.0 * s));
}

namespace {
WignerField fill_field(const Grid& grid, const std::function<double(double, double)>& f) {
    WignerField out(grid);
    const Axis& pax = grid.axes[0];
    const Axis& qax = grid.axes[1];
    std::size_t k = 0;
    for (int i = 0; i < pax.count; ++i)
        for (int j = 0; j < qax.count; ++j, ++k)
            out.values[k] = f(pax.at(i), qax.at(j));
    return out;
}
} // namespace

WignerField wigner_field_coherent(Complex alpha, const Grid& grid) {
    return fill_field(grid, [&](double p, double q) { return wigner_coherent(alpha, p, q); });
}

WignerField wigner_field_fock(int n, const Grid& grid) {
    return fill_field(grid, [&](double p, double q) { return wigner_fock(n, p, q); });
}

WignerField wigner_field_thermal(double nbar, const Grid& grid) {
    return fill_field(grid, [&](double p, double q) { return wigner_thermal(nbar, p, q); });
}

namespace {
Tomogram sampled_symplectic(const Axis& mu, const Axis& nu, const Axis& X,
                            const std::function<double(double, double, double)>& f) {
    Tomogram t;
    t.family = Family::symplectic;
    t.param_names = {"mu", "nu"};
    t.X_axes = {X};
    t.binned = false;
    t.param_axes = std::vector<Axis>{mu, nu};
    t.values.reserve(static_cast<std::size_t>(mu.count) * nu.count * X.count);
    for (int i = 0; i < mu.count; ++i)
        for (int j = 0; j < nu.count; ++j) {
            t.params.push_back({mu.at(i), nu.at(j)});
            for (int k = 0; k < X.count; ++k)
                t.values.push_back(f(mu.at(i), nu.at(j), X.at(k)));
        }
    return t;
}
} // namespace

Tomogram coherent_symplectic_tomogram(Complex alpha, double sigma, const Axis& mu,
                                      const Axis& nu, const Axis& X) {
    Tomogram t = sampled_symplectic(mu, nu, X, [&](double m, double n, double x) {
        return coherent_tomogram_value(alpha, sigma, m, n, x);
    });
    if (sigma > 0.0) t.window = WindowSpec::gaussian(sigma);
    return t;
}

Tomogram fock1_symplectic_tomogram(const Axis& mu, const Axis& nu, const Axis& X) {
    return sampled_symplectic(mu, nu, X, [&](double m, double n, double x) {
        return fock1_tomogram_value(m, n, x);
    });
}

double coherent_quadric_value(Complex alpha, double shift_p, double shift_q, double X) {
    if (X < 0.0) return 0.0;
    const double cp = std::sqrt(2.0) * alpha.imag() - shift_p;
    const double cq = std::sqrt(2.0) * alpha.real() - shift_q;
    const double c = std::sqrt(cp * cp + cq * cq);
    return 2.0 * std::exp(-2.0 * X - c * c) * std::cyl_bessel_i(0.0, 2.0 * c * std::sqrt(2.0 * X));
}

double vacuum_thick_quadric_value(double sigma, double X) {
    return std::exp(2.0 * sigma * sigma - 2.0 * X) *
           std::erfc((2.0 * sigma * sigma - X) / (std::sqrt(2.0) * sigma));
}

} // namespace tomo::analytic
