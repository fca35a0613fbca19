#include "doctest.h"

#include <cmath>

#include "test_support.hpp"
#include "tomo/classical.hpp"

using namespace tomo;
namespace cls = tomo::classical;

namespace {

constexpr double kPi = oracle::kPi;

ClassicalField gaussian_2d(double c0, double c1, int n, double lo, double hi) {
    ClassicalField f(Grid({Axis(lo, hi, n), Axis(lo, hi, n)}));
    f.fill([&](const std::vector<double>& x) {
        const double d0 = x[0] - c0, d1 = x[1] - c1;
        return std::exp(-d0 * d0 - d1 * d1) / kPi;
    });
    return f;
}

Axis straddled(double cutoff, double step) {
    const int n = static_cast<int>(std::round(2.0 * cutoff / step));
    return Axis(-cutoff + step / 2.0, cutoff - step / 2.0, n);
}

} // namespace

TEST_CASE("classical quadric tomogram of an isotropic Gaussian") {
    // f = exp(-|x|^2)/pi against B = I/2: omega(X) = 2 exp(-2X) for X >= 0,
    // from the polar reduction of the level-set integral.
    ClassicalField f = gaussian_2d(0.0, 0.0, 384, -5.0, 5.0);
    QuadricSpec q = QuadricSpec::scaled_identity(2, 0.5);
    Axis X(0.0, 12.0, 601); // bin width 0.02
    auto t = cls::quadric_tomogram(f, q, {{0.0, 0.0}}, X);

    auto profile = [](double x) { return x >= 0.0 ? 2.0 * std::exp(-2.0 * x) : 0.0; };
    double max_err = 0.0;
    for (int k = 0; k < X.count; ++k) {
        const double avg = oracle::bin_average(profile, X.at(k), X.step(), 256);
        max_err = std::max(max_err, std::abs(t.row(0)[k] - avg));
    }
    CHECK(max_err < 1e-3);
    CHECK(t.row_mass(0) == doctest::Approx(f.integral()).epsilon(1e-3));
    for (double v : t.values) CHECK(v >= -1e-9);
}

TEST_CASE("translation covariance of the quadric tomogram") {
    const int n = 128;
    ClassicalField f = gaussian_2d(0.0, 0.0, n, -5.0, 5.0);
    const double h = f.grid.axes[0].step();
    const double s = 4.0 * h; // on-grid shift
    ClassicalField g = gaussian_2d(s, 0.0, n, -5.0, 5.0);

    QuadricSpec q = QuadricSpec::identity(2);
    Axis X(0.0, 16.0, 401);
    auto t_shifted_alpha = cls::quadric_tomogram(f, q, {{-s, 0.5}}, X);
    auto t_shifted_field = cls::quadric_tomogram(g, q, {{0.0, 0.5}}, X);
    double max_err = 0.0;
    for (int k = 0; k < X.count; ++k)
        max_err = std::max(max_err,
                           std::abs(t_shifted_alpha.row(0)[k] - t_shifted_field.row(0)[k]));
    CHECK(max_err < 1e-12);
}

TEST_CASE("classical quadric round-trip") {
    ClassicalField f = gaussian_2d(0.0, 0.0, 256, -5.0, 5.0);
    QuadricSpec q = QuadricSpec::scaled_identity(2, 0.5);
    std::vector<Axis> alpha = {straddled(6.5, 0.25), straddled(6.5, 0.25)};
    Axis X(0.0, 80.0, 1601);
    auto t = cls::quadric_tomogram(f, q, alpha, X);

    Grid out({Axis(-3.0, 3.0, 64), Axis(-3.0, 3.0, 64)});
    cls::InvertReport rep;
    ClassicalField rec = cls::quadric_inverse(t, q, out, {}, &rep);
    ClassicalField ref(out);
    ref.fill([&](const std::vector<double>& x) {
        return std::exp(-x[0] * x[0] - x[1] * x[1]) / kPi;
    });
    CHECK(l2_relative_error(rec, ref) < 1e-2);
    CHECK(rep.imag_residual < 1e-3);

    SUBCASE("zero tomogram inverts to zero") {
        Tomogram zero = t;
        for (auto& v : zero.values) v = 0.0;
        ClassicalField rz = cls::quadric_inverse(zero, q, out, {});
        CHECK(rz.max_abs() == 0.0);
    }

    SUBCASE("degenerate quadrics are rejected for inversion") {
        QuadricSpec bad(2, {1.0, 0.0, 0.0, 0.0});
        CHECK_THROWS_AS(cls::quadric_inverse(t, bad, out, {}), DegenerateQuadric);
    }
}

TEST_CASE("concentrated tomogram reconstructs the oscillatory shell") {
    // A single occupied (X, alpha) cell: the reconstruction must agree with
    // the direct quadrature of the inversion integral.
    QuadricSpec q = QuadricSpec::scaled_identity(2, 0.5);
    Tomogram t;
    t.family = Family::quadric;
    t.param_names = {"alpha1", "alpha2"};
    t.X_axes = {Axis(0.0, 4.0, 41)};
    Axis a(-2.0, 2.0, 17);
    t.param_axes = std::vector<Axis>{a, a};
    for (int i = 0; i < a.count; ++i)
        for (int j = 0; j < a.count; ++j) {
            t.params.push_back({a.at(i), a.at(j)});
            for (int k = 0; k < 41; ++k)
                t.values.push_back((i == 8 && j == 8 && k == 20) ? 1.0 : 0.0);
        }

    Grid out({Axis(-1.0, 1.0, 5), Axis(-1.0, 1.0, 5)});
    cls::InvertOptions opts;
    opts.imag_tolerance = 1e9; // a single-cell tomogram reconstructs a complex shell
    ClassicalField rec = cls::quadric_inverse(t, q, out, opts);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const double direct = cls::quadric_inverse_direct_at(
                t, q, {out.axes[0].at(i), out.axes[1].at(j)}, opts);
            CHECK(rec.values[static_cast<std::size_t>(i) * 5 + j] ==
                  doctest::Approx(direct).epsilon(1e-10));
        }
}

TEST_CASE("deformed Radon map") {
    // Gaussian centered at (q, p) = (2, 1); field axes are (p, q)
    ClassicalField f(Grid({Axis(-6.0, 6.0, 256), Axis(-6.0, 6.0, 256)}));
    f.fill([&](const std::vector<double>& x) {
        const double dp = x[0] - 1.0, dq = x[1] - 2.0;
        return std::exp(-dp * dp - dq * dq) / kPi;
    });

    SUBCASE("nu = 0 rows reduce to the plain line marginal") {
        Axis mu(0.5, 1.5, 3), nu(-0.4, 0.4, 3); // middle row has nu = 0
        Axis X(-12.0, 12.0, 481);
        auto t = cls::deformed_radon(f, mu, nu, X);
        const std::size_t p = t.find_param({1.0, 0.0});
        // reference: marginal over p of f at q = X
        for (int k = 120; k < 360; k += 12) {
            const double q = X.at(k);
            const double expect = std::exp(-(q - 2.0) * (q - 2.0)) / std::sqrt(kPi);
            CHECK(std::abs(t.row(p)[k] - expect) < 2e-3);
        }
    }

    SUBCASE("direct quadrature oracle at (mu, nu) = (1, 0.5)") {
        Axis mu(1.0, 2.0, 2), nu(0.5, 1.0, 2);
        Axis X(-40.0, 40.0, 1601);
        auto t = cls::deformed_radon(f, mu, nu, X);
        const std::size_t p = t.find_param({1.0, 0.5});
        auto fval = [](double pp, double qq) {
            const double dp = pp - 1.0, dq = qq - 2.0;
            return std::exp(-dp * dp - dq * dq) / kPi;
        };
        for (double Xv : {0.5, 1.5, 3.0, 4.5, 6.0}) {
            const int k = static_cast<int>(std::round((Xv - X.min) / X.step()));
            const double direct =
                oracle::deformed_marginal_direct(fval, 1.0, 0.5, X.at(k), -6.0, 6.0);
            CHECK(std::abs(t.row(p)[k] - direct) < 1e-3);
        }
        CHECK(t.row_mass(p) == doctest::Approx(f.integral()).epsilon(1e-3));
    }
}

TEST_CASE("deformed Radon inversion") {
    ClassicalField f(Grid({Axis(-6.0, 6.0, 192), Axis(-6.0, 6.0, 192)}));
    f.fill([&](const std::vector<double>& x) {
        const double dp = x[0] - 1.0, dq = x[1] - 2.0;
        return std::exp(-dp * dp - dq * dq) / kPi;
    });
    Axis mu = straddled(6.0, 0.25), nu = straddled(4.0, 0.125);
    Axis X(-100.0, 140.0, 961);
    auto t = cls::deformed_radon(f, mu, nu, X);

    SUBCASE("round-trip within the reconstructible region") {
        Grid out({Axis(-3.5, 3.5, 57), Axis(-1.0, 5.0, 49)}); // (p, q)
        cls::InvertReport rep;
        auto rec = cls::deformed_radon_inverse(t, out, 0.25, false, {}, &rep);
        RealField ref(out);
        ref.fill([&](const std::vector<double>& x) {
            const double dp = x[0] - 1.0, dq = x[1] - 2.0;
            return std::exp(-dp * dp - dq * dq) / kPi;
        });
        CHECK(oracle::masked_l2(rec.field.values, ref.values, rec.mask) < 5e-2);
        // masked band reported as not reconstructed
        bool saw_masked = false;
        for (std::size_t i = 0; i < rec.mask.size(); ++i)
            if (!rec.mask[i]) {
                saw_masked = true;
                CHECK(rec.field.values[i] == 0.0);
            }
        CHECK(saw_masked);
    }

    SUBCASE("zero tomogram inverts to zero") {
        Tomogram zero = t;
        for (auto& v : zero.values) v = 0.0;
        Grid out({Axis(-2.0, 2.0, 9), Axis(0.5, 3.5, 9)});
        auto rz = cls::deformed_radon_inverse(zero, out, 0.25, false, {});
        CHECK(rz.field.max_abs() == 0.0);
    }

    SUBCASE("singular band can be refused") {
        Grid out({Axis(-2.0, 2.0, 9), Axis(-0.1, 3.5, 9)});
        CHECK_THROWS_AS(cls::deformed_radon_inverse(t, out, 0.25, true, {}),
                        SingularRegionRequested);
    }
}

TEST_CASE("deformed reconstruction preserves even parity in p") {
    // f even in p: the kernel pairs (nu, p) -> (-nu, -p) exactly
    ClassicalField f(Grid({Axis(-5.0, 5.0, 128), Axis(-5.0, 5.0, 128)}));
    f.fill([&](const std::vector<double>& x) {
        const double dq = x[1] - 2.0;
        return std::exp(-x[0] * x[0] - dq * dq) / kPi;
    });
    Axis mu = straddled(5.0, 0.25), nu = straddled(3.0, 0.25);
    Axis X(-60.0, 80.0, 561);
    auto t = cls::deformed_radon(f, mu, nu, X);
    Grid out({Axis(-2.0, 2.0, 17), Axis(0.5, 3.5, 13)});
    auto rec = cls::deformed_radon_inverse(t, out, 0.25, false, {});
    const int np = 17, nq = 13;
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < nq; ++j)
            CHECK(std::abs(rec.field.values[static_cast<std::size_t>(i) * nq + j] -
                           rec.field.values[static_cast<std::size_t>(np - 1 - i) * nq + j]) <
                  1e-6);
}
