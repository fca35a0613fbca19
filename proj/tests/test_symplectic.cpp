#include "doctest.h"

#include <cmath>

#include "test_support.hpp"
#include "tomo/analytic.hpp"
#include "tomo/states.hpp"
#include "tomo/symplectic.hpp"

using namespace tomo;
namespace sym = tomo::symplectic;

namespace {

constexpr double kPi = oracle::kPi;

WignerField vacuum_field(int n = 256, double half = 8.0) {
    return wigner_analytic(StateSpec::vacuum(), phase_space_grid_1mode(-half, half, n));
}

Axis straddled(double cutoff, double step) {
    const int n = static_cast<int>(std::round(2.0 * cutoff / step));
    return Axis(-cutoff + step / 2.0, cutoff - step / 2.0, n);
}

} // namespace

TEST_CASE("symplectic tomogram of the vacuum matches the Gaussian marginal") {
    WignerField W = vacuum_field();
    Axis X(-8.0, 8.0, 321);
    auto t = sym::symplectic_tomogram(W, {{1.0, 0.0}, {1.0, 1.0}}, X);

    const int k0 = 160; // X = 0
    CHECK(t.row(0)[k0] == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(2e-3));
    CHECK(t.row(1)[k0] == doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(2e-3));
    CHECK(t.row_mass(0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(t.row_mass(1) == doctest::Approx(1.0).epsilon(1e-3));
    for (double v : t.values) CHECK(v >= -1e-9);
}

TEST_CASE("coherent tomogram peaks at the displaced center") {
    Grid g = phase_space_grid_1mode(-8.0, 8.0, 256);
    const Complex alpha{1.0, -0.6};
    WignerField W = wigner_analytic(StateSpec::coherent(alpha), g);
    Axis X(-8.0, 8.0, 321);
    const double mu = 0.8, nu = 1.1;
    auto t = sym::symplectic_tomogram(W, {{mu, nu}}, X);
    int kmax = 0;
    for (int k = 0; k < X.count; ++k)
        if (t.row(0)[k] > t.row(0)[kmax]) kmax = k;
    const double xbar = std::sqrt(2.0) * (mu * alpha.real() + nu * alpha.imag());
    CHECK(std::abs(X.at(kmax) - xbar) <= X.step() + 1e-12);
}

TEST_CASE("homodyne tomogram of the vacuum is isotropic") {
    WignerField W = vacuum_field();
    Axis theta = sym::periodic_theta_axis(8);
    Axis X(-6.0, 6.0, 241);
    auto h = sym::homodyne_tomogram(W, theta, X);
    for (int i = 0; i < theta.count; ++i)
        for (int k = 0; k < X.count; ++k) {
            const double expect = std::exp(-X.at(k) * X.at(k)) / std::sqrt(kPi);
            CHECK(std::abs(h.row(i)[k] - expect) < 4e-3);
        }
}

TEST_CASE("homodyne tomogram of fock states is theta independent") {
    Grid g = phase_space_grid_1mode(-8.0, 8.0, 256);
    WignerField W = analytic::wigner_field_fock(1, g);
    Axis theta = sym::periodic_theta_axis(6);
    Axis X(-6.0, 6.0, 201);
    auto h = sym::homodyne_tomogram(W, theta, X);
    for (int i = 1; i < theta.count; ++i)
        for (int k = 0; k < X.count; ++k)
            CHECK(std::abs(h.row(i)[k] - h.row(0)[k]) < 4e-3);
}

TEST_CASE("homodyne reflection symmetry R(X, theta+pi) = R(-X, theta)") {
    Grid g = phase_space_grid_1mode(-8.0, 8.0, 256);
    WignerField W = wigner_analytic(StateSpec::coherent({0.7, 0.4}), g);
    Axis theta = sym::periodic_theta_axis(8); // contains theta and theta + pi pairs
    Axis X(-7.0, 7.0, 281);                   // symmetric bins
    auto h = sym::homodyne_tomogram(W, theta, X);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < X.count; ++k)
            CHECK(std::abs(h.row(i + 4)[k] - h.row(i)[X.count - 1 - k]) < 1e-6);
}

TEST_CASE("homodyne slicing of a symplectic tomogram") {
    Axis X(-6.0, 6.0, 241);
    const Complex alpha{0.5, 0.2};

    auto sampled = [&](const std::vector<std::vector<double>>& pts, const Axis& Xa) {
        Tomogram t;
        t.family = Family::symplectic;
        t.param_names = {"mu", "nu"};
        t.binned = false;
        t.X_axes = {Xa};
        for (const auto& pt : pts) {
            t.params.push_back(pt);
            for (int k = 0; k < Xa.count; ++k)
                t.values.push_back(analytic::coherent_tomogram_value(
                    alpha, 0.0, pt[0], pt[1], Xa.at(k)));
        }
        return t;
    };

    SUBCASE("r = 1 returns the matching row") {
        auto t = sampled({{0.0, 1.0}, {1.0, 0.0}}, X);
        auto prof = sym::homodyne_from_symplectic(t, 1.0, kPi / 2.0); // (mu,nu)=(0,1)
        const std::size_t p = t.find_param({std::cos(kPi / 2.0), 1.0});
        for (int k = 0; k < X.count; ++k)
            CHECK(prof.values[k] == doctest::Approx(t.row(p)[k]).epsilon(1e-12));
    }

    SUBCASE("vacuum at r = 2 reproduces the unit-radius profile") {
        Tomogram t;
        t.family = Family::symplectic;
        t.param_names = {"mu", "nu"};
        t.binned = false;
        t.X_axes = {X};
        t.params.push_back({2.0, 0.0});
        for (int k = 0; k < X.count; ++k)
            t.values.push_back(analytic::coherent_tomogram_value(
                {0.0, 0.0}, 0.0, 2.0, 0.0, X.at(k)));
        auto prof = sym::homodyne_from_symplectic(t, 2.0, 0.0);
        for (int k = 0; k < prof.X.count; ++k) {
            const double x = prof.X.at(k);
            CHECK(prof.values[k] ==
                  doctest::Approx(std::exp(-x * x) / std::sqrt(kPi)).epsilon(1e-12));
        }
    }

    SUBCASE("homogeneity identity across radii") {
        const double theta = kPi / 4.0;
        for (double r : {0.5, 1.0, 2.0}) {
            Axis Xr(-6.0 * r, 6.0 * r, 241);
            auto t = sampled({{r * std::cos(theta), r * std::sin(theta)}}, Xr);
            auto prof = sym::homodyne_from_symplectic(t, r, theta);
            for (int k = 0; k < prof.X.count; ++k) {
                const double expect = analytic::coherent_tomogram_value(
                    alpha, 0.0, std::cos(theta), std::sin(theta), prof.X.at(k));
                CHECK(std::abs(prof.values[k] - expect) < 1e-10);
            }
        }
    }

    SUBCASE("missing parameter point raises") {
        auto t = sampled({{1.0, 0.0}}, X);
        CHECK_THROWS_AS(sym::homodyne_from_symplectic(t, 1.7, 0.123),
                        MissingParameterPoint);
    }
}

TEST_CASE("wigner round-trip through the symplectic tomogram") {
    Grid g = phase_space_grid_1mode(-7.0, 7.0, 192);
    Axis mu = straddled(5.0, 0.25), nu = straddled(5.0, 0.25);
    Axis X(-33.0, 33.0, 529);
    Grid out = phase_space_grid_1mode(-6.0, 6.0, 96);

    SUBCASE("vacuum") {
        WignerField W = wigner_analytic(StateSpec::vacuum(), g);
        auto t = sym::symplectic_tomogram(W, mu, nu, X);
        sym::InvertReport rep;
        WignerField rec = sym::invert_to_wigner(t, out, {}, &rep);
        WignerField ref = wigner_analytic(StateSpec::vacuum(), out);
        CHECK(l2_relative_error(rec, ref) < 1e-2);
        CHECK(rep.imag_residual < 1e-6);
    }

    SUBCASE("fock(1) recovers the negative origin") {
        // the fock(1) characteristic function decays slower; use the full
        // default domain cutoff
        Axis muf = straddled(8.0, 0.25), nuf = straddled(8.0, 0.25);
        Axis Xf(-38.0, 38.0, 609);
        WignerField W = analytic::wigner_field_fock(1, g);
        auto t = sym::symplectic_tomogram(W, muf, nuf, Xf);
        Grid out_odd = phase_space_grid_1mode(-6.0, 6.0, 97);
        WignerField rec = sym::invert_to_wigner(t, out_odd, {});
        const int c = 48;
        CHECK(rec.values[static_cast<std::size_t>(c) * 97 + c] < -1.5);
        WignerField ref = analytic::wigner_field_fock(1, out_odd);
        CHECK(l2_relative_error(rec, ref) < 1e-2);
    }

    SUBCASE("linearity of the inversion") {
        WignerField W0 = wigner_analytic(StateSpec::vacuum(), g);
        WignerField W1 = analytic::wigner_field_fock(1, g);
        auto t0 = sym::symplectic_tomogram(W0, mu, nu, X);
        auto t1 = sym::symplectic_tomogram(W1, mu, nu, X);
        Tomogram avg = t0;
        for (std::size_t i = 0; i < avg.values.size(); ++i)
            avg.values[i] = 0.5 * (t0.values[i] + t1.values[i]);
        WignerField rec_avg = sym::invert_to_wigner(avg, out, {});
        WignerField r0 = sym::invert_to_wigner(t0, out, {});
        WignerField r1 = sym::invert_to_wigner(t1, out, {});
        double max_err = 0.0;
        for (std::size_t i = 0; i < rec_avg.values.size(); ++i)
            max_err = std::max(max_err, std::abs(rec_avg.values[i] -
                                                 0.5 * (r0.values[i] + r1.values[i])));
        CHECK(max_err < 1e-10);
    }
}

TEST_CASE("direct 3-D quadrature verifies the reduced inversion") {
    Grid g = phase_space_grid_1mode(-6.0, 6.0, 96);
    Axis mu = straddled(5.0, 0.5), nu = straddled(5.0, 0.5);
    Axis X(-35.0, 35.0, 281);
    WignerField W = wigner_analytic(StateSpec::coherent({0.4, 0.1}), g);
    auto t = sym::symplectic_tomogram(W, mu, nu, X);
    Grid out = phase_space_grid_1mode(-2.0, 2.0, 9);
    WignerField fast = sym::invert_to_wigner(t, out, {});
    WignerField slow = sym::invert_to_wigner_direct(t, out, {});
    for (std::size_t i = 0; i < fast.values.size(); ++i)
        CHECK(fast.values[i] == doctest::Approx(slow.values[i]).epsilon(1e-10));
}

TEST_CASE("density reconstruction from the symplectic tomogram") {
    Axis mu = straddled(8.0, 0.25), nu = straddled(8.0, 0.25);
    Axis X(-70.0, 70.0, 1401);

    SUBCASE("coherent(0.8) at n_max = 12") {
        auto t = analytic::coherent_symplectic_tomogram({0.8, 0.0}, 0.0, mu, nu, X);
        sym::InvertReport rep;
        auto rho = sym::invert_to_density(t, 12, {}, &rep);
        auto truth = build_state(StateSpec::coherent({0.8, 0.0}), 12);
        CHECK(fidelity(rho, truth) > 0.999);
        CHECK(std::abs(rep.trace_before_renormalization - 1.0) < 1e-3);
        CHECK(rep.min_eigenvalue > -1e-3);
    }

    SUBCASE("vacuum") {
        auto t = analytic::coherent_symplectic_tomogram({0.0, 0.0}, 0.0, mu, nu, X);
        auto rho = sym::invert_to_density(t, 12, {});
        CHECK(rho.rho(0, 0).real() > 0.999);
    }
}

TEST_CASE("density reconstruction from the homodyne tomogram") {
    Axis X(-12.0, 12.0, 961);
    Axis theta = sym::periodic_theta_axis(128);

    auto analytic_homodyne = [&](Complex alpha) {
        sym::HomodyneTomogram h;
        h.theta = theta;
        h.X = X;
        h.binned = false;
        h.values.resize(static_cast<std::size_t>(theta.count) * X.count);
        for (int i = 0; i < theta.count; ++i)
            for (int k = 0; k < X.count; ++k)
                h.values[static_cast<std::size_t>(i) * X.count + k] =
                    analytic::coherent_tomogram_value(alpha, 0.0, std::cos(theta.at(i)),
                                                      std::sin(theta.at(i)), X.at(k));
        return h;
    };

    SUBCASE("vacuum fidelity") {
        auto h = analytic_homodyne({0.0, 0.0});
        sym::RadialOptions opts;
        opts.r_max = 8.0;
        auto rho = sym::homodyne_invert_to_density(h, 10, opts);
        auto truth = build_state(StateSpec::vacuum(), 10);
        CHECK(fidelity(rho, truth) > 0.999);
    }

    SUBCASE("fock(1) fidelity") {
        sym::HomodyneTomogram h;
        h.theta = theta;
        h.X = X;
        h.binned = false;
        h.values.resize(static_cast<std::size_t>(theta.count) * X.count);
        for (int i = 0; i < theta.count; ++i)
            for (int k = 0; k < X.count; ++k)
                h.values[static_cast<std::size_t>(i) * X.count + k] =
                    analytic::fock1_tomogram_value(std::cos(theta.at(i)),
                                                   std::sin(theta.at(i)), X.at(k));
        auto rho = sym::homodyne_invert_to_density(h, 10, {});
        auto truth = build_state(StateSpec::fock(1), 10);
        CHECK(fidelity(rho, truth) > 0.99);
    }

    SUBCASE("polar conversion agrees with the cartesian route") {
        const Complex alpha{0.5, 0.3};
        auto h = analytic_homodyne(alpha);
        auto rho_polar = sym::homodyne_invert_to_density(h, 8, {});

        Axis mu = straddled(8.0, 0.25), nu = straddled(8.0, 0.25);
        Axis Xc(-70.0, 70.0, 1401);
        auto t = analytic::coherent_symplectic_tomogram(alpha, 0.0, mu, nu, Xc);
        auto rho_cart = sym::invert_to_density(t, 8, {});
        CHECK((rho_polar.rho - rho_cart.rho).cwiseAbs().maxCoeff() < 1e-3);
    }
}

TEST_CASE("two-mode forward maps") {
    SUBCASE("center-of-mass reduces to the single-mode marginal") {
        Grid g1 = phase_space_grid_1mode(-4.5, 4.5, 40);
        WignerField Wv = wigner_analytic(StateSpec::vacuum(), g1);
        WignerField W2 = tensor_product_two_mode(Wv, Wv);
        Axis X(-8.0, 8.0, 65); // bins comparable to the grid cells
        auto t = sym::com_tomogram(W2, {{1.0, 0.0, 0.0, 0.0}}, X);
        for (int k = 0; k < X.count; ++k) {
            const double expect = std::exp(-X.at(k) * X.at(k)) / std::sqrt(kPi);
            CHECK(std::abs(t.row(0)[k] - expect) < 8e-3);
        }
        CHECK(t.row_mass(0) == doctest::Approx(1.0).epsilon(1e-3));
    }

    SUBCASE("product states convolve in X") {
        Grid g1 = phase_space_grid_1mode(-4.5, 4.5, 32);
        WignerField Wv = wigner_analytic(StateSpec::vacuum(), g1);
        WignerField W2 = tensor_product_two_mode(Wv, Wv);
        Axis X(-10.0, 10.0, 201);
        const std::array<double, 4> pt = {0.8, 0.3, -0.5, 1.1};
        auto t = sym::com_tomogram(W2, {pt}, X);
        // the X constraint adds the two independent mode contributions, so
        // the row is the convolution of the single-mode Gaussians
        const double s1 = pt[0] * pt[0] + pt[1] * pt[1];
        const double s2 = pt[2] * pt[2] + pt[3] * pt[3];
        for (int k = 0; k < X.count; ++k) {
            const double s = s1 + s2;
            const double expect = std::exp(-X.at(k) * X.at(k) / s) / std::sqrt(kPi * s);
            CHECK(std::abs(t.row(0)[k] - expect) < 1.5e-2);
        }
        CHECK(t.row_mass(0) == doctest::Approx(1.0).epsilon(1e-3));
    }

    SUBCASE("two-mode marginal factorizes exactly for product states") {
        Grid g1 = phase_space_grid_1mode(-4.5, 4.5, 24);
        WignerField Wa = wigner_analytic(StateSpec::coherent({0.4, 0.0}), g1);
        WignerField Wv = wigner_analytic(StateSpec::vacuum(), g1);
        WignerField W2 = tensor_product_two_mode(Wa, Wv);
        Axis X1(-6.0, 6.0, 61), X2(-6.0, 6.0, 61);
        Axis a_mu(0.5, 1.5, 3), a_nu(-0.5, 0.5, 3);
        auto t2 = sym::two_mode_tomogram(W2, a_mu, a_nu, a_mu, a_nu, X1, X2);

        // single-mode rows on the same axes (the 1/(2 pi) scale appears once
        // per mode in the two-mode map)
        auto ta = sym::symplectic_tomogram(Wa, a_mu, a_nu, X1);
        auto tv = sym::symplectic_tomogram(Wv, a_mu, a_nu, X2);
        double max_rel = 0.0;
        for (std::size_t p = 0; p < t2.params.size(); ++p) {
            const auto& pt = t2.params[p];
            const std::size_t pa = ta.find_param({pt[0], pt[1]});
            const std::size_t pv = tv.find_param({pt[2], pt[3]});
            const double* row2 = t2.row(p);
            for (int k1 = 0; k1 < X1.count; ++k1)
                for (int k2 = 0; k2 < X2.count; ++k2) {
                    const double prod = ta.row(pa)[k1] * tv.row(pv)[k2];
                    max_rel = std::max(max_rel,
                                       std::abs(row2[k1 * X2.count + k2] - prod));
                }
        }
        CHECK(max_rel < 1e-12);

        // and the closed-form product at (1, 0) x (1, 0) for the vacuum pair
        WignerField W2v = tensor_product_two_mode(Wv, Wv);
        auto tvv = sym::two_mode_tomogram(W2v, a_mu, a_nu, a_mu, a_nu, X1, X2);
        const std::size_t p = tvv.find_param({1.0, 0.0, 1.0, 0.0});
        double max_err = 0.0, mass = 0.0;
        for (int k1 = 0; k1 < X1.count; ++k1)
            for (int k2 = 0; k2 < X2.count; ++k2) {
                const double expect = std::exp(-X1.at(k1) * X1.at(k1)) *
                                      std::exp(-X2.at(k2) * X2.at(k2)) / kPi;
                max_err = std::max(max_err,
                                   std::abs(tvv.row(p)[k1 * X2.count + k2] - expect));
                mass += tvv.row(p)[k1 * X2.count + k2];
            }
        CHECK(max_err < 3e-2); // coarse-grid level; exactness is the check above
        CHECK(mass * X1.step() * X2.step() == doctest::Approx(1.0).epsilon(1e-3));
    }
}

namespace {

/// Two-mode thermal product tomograms sampled from the closed forms
/// (Gaussian with variance (mu^2 + nu^2)(nbar + 1/2) per mode).
Tomogram analytic_com_thermal(double nbar, const Axis& par, const Axis& X) {
    Tomogram t;
    t.family = Family::center_of_mass;
    t.param_names = {"mu1", "nu1", "mu2", "nu2"};
    t.X_axes = {X};
    t.binned = false;
    t.param_axes = std::vector<Axis>{par, par, par, par};
    const double c = nbar + 0.5;
    for (int a = 0; a < par.count; ++a)
        for (int b = 0; b < par.count; ++b)
            for (int cc = 0; cc < par.count; ++cc)
                for (int d = 0; d < par.count; ++d) {
                    const double mu1 = par.at(a), nu1 = par.at(b);
                    const double mu2 = par.at(cc), nu2 = par.at(d);
                    t.params.push_back({mu1, nu1, mu2, nu2});
                    const double var =
                        (mu1 * mu1 + nu1 * nu1 + mu2 * mu2 + nu2 * nu2) * c;
                    for (int k = 0; k < X.count; ++k)
                        t.values.push_back(std::exp(-X.at(k) * X.at(k) / (2.0 * var)) /
                                           std::sqrt(2.0 * kPi * var));
                }
    return t;
}

Tomogram analytic_two_mode_thermal(double nbar, const Axis& par, const Axis& X1,
                                   const Axis& X2) {
    Tomogram t;
    t.family = Family::two_mode;
    t.param_names = {"mu1", "nu1", "mu2", "nu2"};
    t.X_axes = {X1, X2};
    t.binned = false;
    t.param_axes = std::vector<Axis>{par, par, par, par};
    for (int a = 0; a < par.count; ++a)
        for (int b = 0; b < par.count; ++b)
            for (int cc = 0; cc < par.count; ++cc)
                for (int d = 0; d < par.count; ++d) {
                    const double mu1 = par.at(a), nu1 = par.at(b);
                    const double mu2 = par.at(cc), nu2 = par.at(d);
                    t.params.push_back({mu1, nu1, mu2, nu2});
                    for (int k1 = 0; k1 < X1.count; ++k1) {
                        const double v1 = analytic::thermal_tomogram_value(
                            nbar, mu1, nu1, X1.at(k1));
                        for (int k2 = 0; k2 < X2.count; ++k2)
                            t.values.push_back(v1 * analytic::thermal_tomogram_value(
                                                        nbar, mu2, nu2, X2.at(k2)));
                    }
                }
    return t;
}

} // namespace

TEST_CASE("two-mode inversions recover the product Wigner function") {
    const double nbar = 1.5;
    Axis par(-2.1, 2.1, 8); // step 0.6; thermal characteristic width 1/2
    Grid out({Axis(-2.0, 2.0, 10), Axis(-2.0, 2.0, 10), Axis(-2.0, 2.0, 10),
              Axis(-2.0, 2.0, 10)});
    WignerField ref = tensor_product_two_mode(
        analytic::wigner_field_thermal(nbar, Grid({out.axes[0], out.axes[2]})),
        analytic::wigner_field_thermal(nbar, Grid({out.axes[1], out.axes[3]})));

    SUBCASE("center-of-mass route") {
        Axis X(-25.0, 25.0, 201);
        auto t = analytic_com_thermal(nbar, par, X);
        sym::InvertReport rep;
        WignerField rec = sym::com_invert_to_wigner(t, out, {}, &rep);
        CHECK(l2_relative_error(rec, ref) < 3e-2);
        CHECK(rep.imag_residual < 1e-3);
    }

    SUBCASE("ordinary route and route agreement") {
        Axis X1(-15.0, 15.0, 101), X2(-15.0, 15.0, 101);
        auto t2 = analytic_two_mode_thermal(nbar, par, X1, X2);
        WignerField rec2 = sym::two_mode_invert_to_wigner(t2, out, {});
        CHECK(l2_relative_error(rec2, ref) < 3e-2);

        Axis X(-25.0, 25.0, 201);
        auto t1 = analytic_com_thermal(nbar, par, X);
        WignerField rec1 = sym::com_invert_to_wigner(t1, out, {});
        CHECK(l2_relative_error(rec2, rec1) < 3e-2);

        SUBCASE("linearity of the two-mode inversion") {
            Tomogram half = t2;
            for (auto& v : half.values) v *= 0.5;
            WignerField rec_half = sym::two_mode_invert_to_wigner(half, out, {});
            double max_err = 0.0;
            for (std::size_t i = 0; i < rec2.values.size(); ++i)
                max_err = std::max(max_err,
                                   std::abs(rec_half.values[i] - 0.5 * rec2.values[i]));
            CHECK(max_err < 1e-10);
        }
    }
}

TEST_CASE("inversion error paths") {
    SUBCASE("imaginary residual guard") {
        Axis mu(-2.875, 2.875, 12), nu(-2.875, 2.875, 12);
        Axis X(-6.0, 6.0, 121);
        auto t = analytic::coherent_symplectic_tomogram({0.0, 0.0}, 0.0, mu, nu, X);
        // corrupt: zero out the mu < 0 half to break the symmetry
        for (std::size_t p = 0; p < t.params.size(); ++p)
            if (t.params[p][0] < 0.0)
                for (int k = 0; k < X.count; ++k) t.row(p)[k] = 0.0;
        Grid out = phase_space_grid_1mode(-2.0, 2.0, 16);
        CHECK_THROWS_AS(sym::invert_to_wigner(t, out, {}), ImagResidualTooLarge);
    }

    SUBCASE("narrow X grids are rejected") {
        WignerField W = vacuum_field(128, 6.0);
        Axis X(-0.4, 0.4, 17);
        CHECK_THROWS_AS(sym::symplectic_tomogram(W, {{3.0, 0.0}}, X), GridTooSmall);
    }

    SUBCASE("tomograms without a parameter grid cannot be inverted") {
        WignerField W = vacuum_field(96, 6.0);
        Axis X(-6.0, 6.0, 101);
        auto t = sym::symplectic_tomogram(W, {{1.0, 0.0}, {0.3, 0.7}}, X);
        Grid out = phase_space_grid_1mode(-2.0, 2.0, 16);
        CHECK_THROWS(sym::invert_to_wigner(t, out, {}));
    }
}
