#include "doctest.h"

#include <cmath>

#include "test_support.hpp"
#include "tomo/analytic.hpp"
#include "tomo/quadric.hpp"
#include "tomo/states.hpp"
#include "tomo/symplectic.hpp"

using namespace tomo;
namespace qd = tomo::quadric;

namespace {

constexpr double kPi = oracle::kPi;

Axis straddled(double cutoff, double step) {
    const int n = static_cast<int>(std::round(2.0 * cutoff / step));
    return Axis(-cutoff + step / 2.0, cutoff - step / 2.0, n);
}

} // namespace

TEST_CASE("quantum quadric tomogram of the vacuum") {
    WignerField W = wigner_analytic(StateSpec::vacuum(), phase_space_grid_1mode(-6.0, 6.0, 512));
    QuadricSpec q = QuadricSpec::identity(2); // H = (p^2 + q^2)/2
    Axis X(0.0, 14.0, 701);                   // bin width 0.02
    auto t = qd::quantum_quadric_tomogram(W, q, {{0.0, 0.0}}, X);

    auto profile = [](double x) { return x >= 0.0 ? 2.0 * std::exp(-2.0 * x) : 0.0; };
    double max_err = 0.0;
    for (int k = 0; k < X.count; ++k) {
        const double avg = oracle::bin_average(profile, X.at(k), X.step(), 256);
        max_err = std::max(max_err, std::abs(t.row(0)[k] - avg));
    }
    CHECK(max_err < 1e-3);
    CHECK(t.row_mass(0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("shifted quadric tomogram matches the displaced closed form") {
    const Complex alpha{0.7, -0.4};
    WignerField W = wigner_analytic(StateSpec::coherent(alpha),
                                    phase_space_grid_1mode(-7.0, 7.0, 384));
    QuadricSpec q = QuadricSpec::identity(2);
    Axis X(0.0, 18.0, 451);
    const std::vector<double> shift = {0.5, -0.3}; // (mu, nu) pairing (p, q)
    auto t = qd::quantum_quadric_tomogram(W, q, {shift}, X);
    auto profile = [&](double x) {
        return analytic::coherent_quadric_value(alpha, shift[0], shift[1], x);
    };
    double max_err = 0.0;
    for (int k = 0; k < X.count; ++k) {
        const double avg = oracle::bin_average(profile, X.at(k), X.step(), 128);
        max_err = std::max(max_err, std::abs(t.row(0)[k] - avg));
    }
    CHECK(max_err < 2e-3);
    CHECK(t.row_mass(0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("shift covariance of the quadric tomogram") {
    const int n = 160;
    Grid g = phase_space_grid_1mode(-6.0, 6.0, n);
    const double h = g.axes[0].step();
    const double s = 5.0 * h;
    WignerField W0 = wigner_analytic(StateSpec::vacuum(), g);
    // translated Wigner field: a coherent state displaced on-grid in q
    WignerField Ws(g);
    Ws.fill([&](const std::vector<double>& x) {
        const double dq = x[1] - s;
        return 2.0 * std::exp(-x[0] * x[0] - dq * dq);
    });
    QuadricSpec q = QuadricSpec::identity(2);
    Axis X(0.0, 20.0, 501);
    auto t_shift_param = qd::quantum_quadric_tomogram(W0, q, {{0.3, -s}}, X);
    auto t_shift_field = qd::quantum_quadric_tomogram(Ws, q, {{0.3, 0.0}}, X);
    double max_err = 0.0;
    for (int k = 0; k < X.count; ++k)
        max_err = std::max(max_err,
                           std::abs(t_shift_param.row(0)[k] - t_shift_field.row(0)[k]));
    CHECK(max_err < 1e-12);
}

TEST_CASE("quadric support stays above zero for positive forms") {
    WignerField W = wigner_analytic(StateSpec::vacuum(), phase_space_grid_1mode(-6.0, 6.0, 128));
    QuadricSpec q = QuadricSpec::identity(2);
    Axis X(-2.0, 10.0, 241);
    auto t = qd::quantum_quadric_tomogram(W, q, {{0.0, 0.0}}, X);
    const double width = 0.5 * (6.0 + 6.0) * W.grid.axes[0].step(); // deposit span bound
    for (int k = 0; k < X.count; ++k)
        if (X.at(k) < -width - 0.5 * X.step()) CHECK(t.row(0)[k] == 0.0);
}

TEST_CASE("degenerate forms bin forward but refuse inversion") {
    WignerField W = wigner_analytic(StateSpec::vacuum(), phase_space_grid_1mode(-6.0, 6.0, 128));
    QuadricSpec parabolic(2, {1.0, 0.0, 0.0, 0.0}); // H = p^2/2, level sets are lines
    Axis X(-1.0, 20.0, 211);
    auto t = qd::quantum_quadric_tomogram(W, parabolic, {{0.0, 0.0}}, X);
    CHECK(t.row_mass(0) == doctest::Approx(1.0).epsilon(1e-3));
    for (double v : t.values) CHECK(v >= -1e-9);
    Grid out = phase_space_grid_1mode(-2.0, 2.0, 16);
    CHECK_THROWS_AS(qd::quantum_quadric_inverse(t, parabolic, out, {}), DegenerateQuadric);
}

TEST_CASE("quantum quadric round-trip") {
    Grid g = phase_space_grid_1mode(-6.5, 6.5, 256);
    QuadricSpec q = QuadricSpec::identity(2);
    std::vector<Axis> r_axes = {straddled(6.5, 0.25), straddled(6.5, 0.25)};
    Axis X(-2.0, 102.0, 2081);
    Grid out = phase_space_grid_1mode(-3.0, 3.0, 64);

    SUBCASE("vacuum with the validated constant") {
        WignerField W = wigner_analytic(StateSpec::vacuum(), g);
        auto t = qd::quantum_quadric_tomogram(W, q, r_axes, X);
        qd::InvertReport rep;
        WignerField rec = qd::quantum_quadric_inverse(t, q, out, {}, &rep);
        WignerField ref = wigner_analytic(StateSpec::vacuum(), out);
        CHECK(l2_relative_error(rec, ref) < 1e-2);
        CHECK(rep.imag_residual < 1e-3);

        // round-trip scale factor: the baked constant must be the exact one
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < rec.values.size(); ++i) {
            num += rec.values[i] * ref.values[i];
            den += ref.values[i] * ref.values[i];
        }
        CHECK(num / den == doctest::Approx(1.0).epsilon(5e-3));
    }

    SUBCASE("coherent(1) round-trip") {
        WignerField W = wigner_analytic(StateSpec::coherent({1.0, 0.0}), g);
        auto t = qd::quantum_quadric_tomogram(W, q, r_axes, X);
        // the displaced state shifts its characteristic support toward one
        // side of the r domain; the residual there is truncation-level
        qd::InvertOptions opts;
        opts.imag_tolerance = 5e-3;
        WignerField rec = qd::quantum_quadric_inverse(t, q, out, opts);
        WignerField ref = wigner_analytic(StateSpec::coherent({1.0, 0.0}), out);
        CHECK(l2_relative_error(rec, ref) < 2e-2);
    }

    SUBCASE("zero tomogram inverts to zero") {
        WignerField W = wigner_analytic(StateSpec::vacuum(), g);
        auto t = qd::quantum_quadric_tomogram(W, q, r_axes, X);
        for (auto& v : t.values) v = 0.0;
        WignerField rec = qd::quantum_quadric_inverse(t, q, out, {});
        CHECK(rec.max_abs() == 0.0);
    }
}

TEST_CASE("quadric round-trip with a linear term") {
    Grid g = phase_space_grid_1mode(-6.5, 6.5, 256);
    QuadricSpec q(2, {1.0, 0.0, 0.0, 1.0}, {0.3, -0.2});
    std::vector<Axis> r_axes = {straddled(6.5, 0.25), straddled(6.5, 0.25)};
    Axis X(-8.0, 88.0, 1921);
    WignerField W = wigner_analytic(StateSpec::vacuum(), g);
    auto t = qd::quantum_quadric_tomogram(W, q, r_axes, X);
    Grid out = phase_space_grid_1mode(-3.0, 3.0, 64);
    WignerField rec = qd::quantum_quadric_inverse(t, q, out, {});
    WignerField ref = wigner_analytic(StateSpec::vacuum(), out);
    CHECK(l2_relative_error(rec, ref) < 2e-2);
}

TEST_CASE("non-diagonal quadrics use the direct inversion path") {
    Grid g = phase_space_grid_1mode(-6.0, 6.0, 160);
    QuadricSpec q(2, {1.0, 0.3, 0.3, 1.0});
    std::vector<Axis> r_axes = {straddled(4.0, 0.4), straddled(4.0, 0.4)};
    Axis X(-2.0, 72.0, 741);
    WignerField W = wigner_analytic(StateSpec::vacuum(), g);
    auto t = qd::quantum_quadric_tomogram(W, q, r_axes, X);
    Grid out = phase_space_grid_1mode(-2.0, 2.0, 24);
    qd::InvertOptions opts;
    opts.imag_tolerance = 0.1; // coarse sampling, truncation-level residual
    WignerField rec = qd::quantum_quadric_inverse(t, q, out, opts);
    WignerField ref = wigner_analytic(StateSpec::vacuum(), out);
    CHECK(l2_relative_error(rec, ref) < 3e-2);
}

TEST_CASE("multipartite quadric tomogram factorizes for product states") {
    Grid g1 = phase_space_grid_1mode(-4.5, 4.5, 24);
    WignerField Wv = wigner_analytic(StateSpec::vacuum(), g1);
    WignerField W2 = tensor_product_two_mode(Wv, Wv);
    QuadricSpec q = QuadricSpec::identity(2);
    Axis X1(0.0, 8.0, 81), X2(0.0, 8.0, 81);
    Axis a(-0.5, 0.5, 3);
    auto t = qd::multipartite_quadric_tomogram(W2, q, q, {a, a, a, a}, X1, X2);

    // exact factorization against single-mode rows on the same axes
    std::vector<std::vector<double>> shifts;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) shifts.push_back({a.at(i), a.at(j)});
    auto t1 = qd::quantum_quadric_tomogram(Wv, q, shifts, X1);
    double max_rel = 0.0;
    for (std::size_t p = 0; p < t.params.size(); ++p) {
        const auto& pt = t.params[p];
        const std::size_t p1 = t1.find_param({pt[0], pt[1]});
        const std::size_t p2 = t1.find_param({pt[2], pt[3]});
        const double* row = t.row(p);
        for (int k1 = 0; k1 < X1.count; ++k1)
            for (int k2 = 0; k2 < X2.count; ++k2) {
                // the single-mode path refines cells near the form's critical
                // point; compare where no refinement triggers
                if (X1.at(k1) < 1.0 || X2.at(k2) < 1.0) continue;
                max_rel = std::max(max_rel,
                                   std::abs(row[k1 * X2.count + k2] -
                                            t1.row(p1)[k1] * t1.row(p2)[k2]));
            }
    }
    CHECK(max_rel < 1e-12);

    const std::size_t p0 = t.find_param({0.0, 0.0, 0.0, 0.0});
    double mass = 0.0;
    for (std::size_t k = 0; k < t.bins_per_param(); ++k) mass += t.row(p0)[k];
    CHECK(mass * X1.step() * X2.step() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("multipartite quadric inversion recovers a thermal product") {
    // thermal(1/2): quadric profile (1/s) e^{-(2X + c^2)/(2s)} I0(c sqrt(2X)/s)
    // with s = 1, sampled exactly; X grids start at the support edge.
    const double s = 1.0;
    QuadricSpec q = QuadricSpec::identity(2);
    Axis par = straddled(4.5, 0.9);
    Axis X(0.0, 26.0, 66);

    Tomogram t;
    t.family = Family::multipartite_quadric;
    t.param_names = {"mu1", "nu1", "mu2", "nu2"};
    t.X_axes = {X, X};
    t.binned = false;
    t.param_axes = std::vector<Axis>{par, par, par, par};
    auto rice = [&](double c2, double X_) {
        return (1.0 / s) * std::exp(-(2.0 * X_ + c2) / (2.0 * s)) *
               std::cyl_bessel_i(0.0, std::sqrt(2.0 * X_ * c2) / s);
    };
    for (int a = 0; a < par.count; ++a)
        for (int b = 0; b < par.count; ++b)
            for (int c = 0; c < par.count; ++c)
                for (int d = 0; d < par.count; ++d) {
                    const double c1sq = par.at(a) * par.at(a) + par.at(b) * par.at(b);
                    const double c2sq = par.at(c) * par.at(c) + par.at(d) * par.at(d);
                    t.params.push_back({par.at(a), par.at(b), par.at(c), par.at(d)});
                    for (int k1 = 0; k1 < X.count; ++k1) {
                        const double v1 = rice(c1sq, X.at(k1));
                        for (int k2 = 0; k2 < X.count; ++k2)
                            t.values.push_back(v1 * rice(c2sq, X.at(k2)));
                    }
                }

    Grid out({Axis(-1.5, 1.5, 9), Axis(-1.5, 1.5, 9), Axis(-1.5, 1.5, 9),
              Axis(-1.5, 1.5, 9)});
    qd::InvertOptions opts;
    opts.imag_tolerance = 0.1; // reduced sampling
    qd::InvertReport rep;
    WignerField rec = qd::multipartite_quadric_inverse(t, q, q, out, opts, &rep);
    WignerField ref = tensor_product_two_mode(
        analytic::wigner_field_thermal(0.5, Grid({out.axes[0], out.axes[2]})),
        analytic::wigner_field_thermal(0.5, Grid({out.axes[1], out.axes[3]})));
    CHECK(l2_relative_error(rec, ref) < 5e-2);
}

TEST_CASE("deformed quantum tomogram") {
    Grid g = phase_space_grid_1mode(-7.0, 7.0, 256);
    WignerField W = wigner_analytic(StateSpec::vacuum(), g);

    SUBCASE("nu = 0 coincides with the symplectic marginal") {
        Axis xi(0.5, 1.5, 3), nu(-0.5, 0.5, 3);
        Axis X(-8.0, 8.0, 321);
        auto td = qd::deformed_quantum_tomogram(W, xi, nu, X);
        auto ts = tomo::symplectic::symplectic_tomogram(W, {{1.0, 0.0}}, X);
        const std::size_t p = td.find_param({1.0, 0.0});
        for (int k = 0; k < X.count; ++k)
            CHECK(td.row(p)[k] == doctest::Approx(ts.row(0)[k]).epsilon(1e-12));
    }

    SUBCASE("direct quadrature oracle at (xi, nu) = (1, 0.5)") {
        Axis xi(1.0, 2.0, 2), nu(0.5, 1.0, 2);
        Axis X(-30.0, 30.0, 1201);
        auto t = qd::deformed_quantum_tomogram(W, xi, nu, X);
        const std::size_t p = t.find_param({1.0, 0.5});
        auto wig = [](double pp, double qq) {
            return 2.0 * std::exp(-pp * pp - qq * qq) / (2.0 * kPi);
        };
        for (double Xv : {-1.0, -0.3, 0.2, 0.8, 1.6}) {
            const int k = static_cast<int>(std::round((Xv - X.min) / X.step()));
            const double direct =
                oracle::deformed_marginal_direct(wig, 1.0, 0.5, X.at(k), -7.0, 7.0);
            CHECK(std::abs(t.row(p)[k] - direct) < 1e-3);
        }
        CHECK(t.row_mass(p) == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("operator-level spectral quadric profile matches the Wigner level") {
    // semiclassical state: thermal(2); the smoothed operator spectrum tracks
    // the Wigner-level marginal of the same quadratic form
    auto rho = build_state(StateSpec::thermal(2.0), 48);
    QuadricSpec q = QuadricSpec::identity(2);
    Axis X(-1.0, 25.0, 261);
    auto spectral = qd::quadric_tomogram_spectral(rho.rho, q, X, 0.5);

    WignerField W = wigner_analytic(StateSpec::vacuum(), phase_space_grid_1mode(-9.0, 9.0, 192));
    W.fill([&](const std::vector<double>& x) {
        return analytic::wigner_thermal(2.0, x[0], x[1]);
    });
    auto t = qd::quantum_quadric_tomogram(W, q, {{0.0, 0.0}}, X);
    // smooth the Wigner-level profile with the same Gaussian for comparison
    std::vector<double> smoothed(X.count, 0.0);
    for (int k = 0; k < X.count; ++k) {
        double acc = 0.0;
        for (int j = 0; j < X.count; ++j) {
            const double d = X.at(k) - X.at(j);
            acc += t.row(0)[j] * std::exp(-d * d / (2.0 * 0.25)) /
                   std::sqrt(2.0 * kPi * 0.25) * X.step();
        }
        smoothed[k] = acc;
    }
    double max_err = 0.0;
    for (int k = 0; k < X.count; ++k)
        if (X.at(k) > 1.5) // clear of the support edge
            max_err = std::max(max_err, std::abs(spectral[k] - smoothed[k]));
    CHECK(max_err < 0.01);
}
