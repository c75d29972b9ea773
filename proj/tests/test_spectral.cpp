#include <doctest.h>

#include "helpers.hpp"
#include "hybesov/regression.hpp"
#include "hybesov/spectral.hpp"
#include "oracles/reference_values.hpp"

using namespace hybesov;
using testing::field_err;
using testing::random_field;
using testing::rel_err;

namespace {

Scaling scaling_of(bool diffusive) { return diffusive ? Scaling::diffusive : Scaling::relax; }

}  // namespace

TEST_CASE("symbol trace and determinant") {
    const auto s = LinearSymbol::make(0.1, 3.0);
    CHECK(s.trace() == doctest::Approx(10.0));
    CHECK(s.det() == doctest::Approx(9.0));
    const auto d = LinearSymbol::make(0.1, 3.0, Scaling::diffusive);
    CHECK(d.trace() == doctest::Approx(100.0));
    CHECK(d.det() == doctest::Approx(900.0));
    CHECK_THROWS(LinearSymbol::make(0.0, 1.0));
    CHECK_THROWS(eigenvalues(-0.1, 1.0));
}

TEST_CASE("eigenvalues match the mpmath oracle") {
    for (const auto& ref : oracle::eigen_values) {
        const EigenPair ev = eigenvalues(ref.eps, ref.xi, scaling_of(ref.diffusive));
        CHECK(rel_err(ev.lambda_minus.real(), ref.re_minus) < 1e-12);
        CHECK(std::abs(ev.lambda_minus.imag() - ref.im_minus) < 1e-12 * std::abs(ref.re_minus));
    }
}

TEST_CASE("eigenvalue examples") {
    const EigenPair a = eigenvalues(0.1, 1.0);
    CHECK(rel_err(a.lambda_plus.real(), 9.898979485566356) < 1e-12);
    CHECK(rel_err(a.lambda_minus.real(), 0.1010205144336438) < 1e-12);
    const EigenPair z = eigenvalues(0.1, 0.0);
    CHECK(z.lambda_minus == cplx(0.0));
    CHECK(z.lambda_plus == cplx(10.0));
    const EigenPair h = eigenvalues(0.1, 100.0);
    CHECK(h.lambda_plus.real() == 5.0);
    CHECK(h.lambda_minus.real() == 5.0);
}

TEST_CASE("Vieta identities") {
    for (Scaling sc : {Scaling::relax, Scaling::diffusive}) {
        for (double eps : {0.3, 0.1, 0.02}) {
            for (double xi : {0.0, 1e-3, 0.4, 2.0, 24.9, 25.1, 300.0}) {
                const auto s = LinearSymbol::make(eps, xi, sc);
                const EigenPair ev = eigenvalues(eps, xi, sc);
                CHECK(std::abs(ev.lambda_plus + ev.lambda_minus - s.trace()) < 1e-12 * s.trace());
                CHECK(std::abs(ev.lambda_plus * ev.lambda_minus - s.det()) <= 1e-12 * std::max(s.det(), 1e-300));
            }
        }
    }
}

TEST_CASE("eigenvalues are real exactly up to 2 eps xi = 1") {
    const double eps = 0.125;
    CHECK(eigenvalues(eps, 4.0).real());
    CHECK_FALSE(eigenvalues(eps, std::nextafter(4.0, 5.0)).real());
    CHECK(eigenvalues(eps, 3.9).real());
    CHECK_FALSE(eigenvalues(eps, 4.1).real());
}

TEST_CASE("asymptotics report") {
    const double eps = 0.1;
    const auto rows = asymptotics_report(eps, {1e-2, 100.0});
    REQUIRE(rows.size() == 2);
    CHECK(std::abs(rows[0].low_ratio - 1.0) < 1e-5);
    CHECK(rows[1].re_plus_scaled == 0.5);
    CHECK(rows[1].re_minus_scaled == 0.5);
    CHECK(asymptotics_report(eps, {}).empty());
}

TEST_CASE("mode propagator matches the mpmath matrix exponential") {
    for (const auto& ref : oracle::propagators) {
        const Mat2 M = mode_propagator(ref.eps, ref.xi, ref.t, scaling_of(ref.diffusive));
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(M[k] - cplx(ref.re[k], ref.im[k])) < 1e-13);
        }
    }
}

TEST_CASE("propagator is continuous across the series switch") {
    // z = t·(λ₊ − λ₋)/2 crosses 0.1 between these two wavenumbers
    const double eps = 0.1;
    const double xi0 = 5.0 * std::sqrt(0.9984);
    for (double dxi : {-1e-9, 1e-9}) {
        const Mat2 a = mode_propagator(eps, xi0 + dxi, 0.5);
        const Mat2 b = mode_propagator(eps, xi0, 0.5);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-8);
    }
}

TEST_CASE("linear propagation is a semigroup") {
    for (const Grid g : {Grid(1, 256, two_pi * 2), Grid(2, 64, two_pi)}) {
        const GridField c0 = random_field(g, 1);
        std::vector<GridField> comps;
        for (int a = 0; a < g.d; ++a) comps.push_back(random_field(g, 10 + a));
        const VecField v0(comps);
        for (Scaling sc : {Scaling::relax, Scaling::diffusive}) {
            const LinearState one = linear_propagate(c0, v0, 0.1, 0.05, sc, 0.7);
            const LinearState a = linear_propagate(c0, v0, 0.1, 0.02, sc, 0.7);
            const LinearState two = linear_propagate(a.c, a.v, 0.1, 0.03, sc, 0.7);
            CHECK(field_err(two.c, one.c) < 1e-11);
            CHECK(lp_norm(two.v - one.v, infinity) < 1e-11 * lp_norm(one.v, infinity));
        }
        const LinearState id = linear_propagate(c0, v0, 0.1, 0.0);
        CHECK(field_err(id.c, c0) < 1e-15);
    }
}

TEST_CASE("DC mode: c is frozen and v decays at the damping rate") {
    const Grid g(1, 64, two_pi);
    const GridField c0 = GridField::constant(g, 0.3);
    const VecField v0({GridField::constant(g, 2.0)});
    const LinearState s = linear_propagate(c0, v0, 0.1, 0.04, Scaling::diffusive);
    CHECK(field_err(s.c, c0) < 1e-15);
    CHECK(rel_err(s.v[0].mean(), 2.0 * std::exp(-4.0)) < 1e-14);
}

TEST_CASE("high-frequency energy decays at the symbol rate") {
    const double eps = 0.1;
    const Grid g(1, 256, two_pi);
    const int k = 30;  // ε|ξ| = 3
    const GridField c0 = single_mode(g, k, 1.0);
    const VecField v0(g);
    const double rate = eigenvalues(eps, k, Scaling::diffusive).lambda_minus.real();
    std::vector<double> t, logE;
    for (int i = 0; i <= 200; ++i) {
        const double ti = 0.2 * i / 200.0;
        const LinearState s = linear_propagate(c0, v0, eps, ti, Scaling::diffusive);
        const double E = std::hypot(lp_norm(s.c, 2.0), eps * lp_norm(s.v, 2.0));
        t.push_back(ti);
        logE.push_back(std::log(E));
    }
    const LinearFit fit = least_squares(t, logE);
    CHECK(std::abs(-fit.slope / rate - 1.0) < 0.1);
}

TEST_CASE("damped-mode rewrite holds on exact linear trajectories") {
    const Grid g(1, 256, two_pi * 4);
    const DampedModeResidual zero = damped_mode_residual(GridField(g), VecField(g), 0.05, 0.3);
    CHECK(zero.res_c == 0.0);
    CHECK(zero.res_w == 0.0);

    const DampedModeResidual one = damped_mode_residual(single_mode(g, 5, 1.0), VecField(g), 0.05, 0.3);
    CHECK(one.res_c < 1e-10);
    CHECK(one.res_w < 1e-10);

    const Grid g2(2, 64, two_pi);
    for (int t = 0; t < 5; ++t) {
        const GridField c0 = random_field(g2, 20 + t);
        const VecField v0({random_field(g2, 30 + t), random_field(g2, 40 + t)});
        const DampedModeResidual r = damped_mode_residual(c0, v0, 0.1, 0.01);
        CHECK(r.res_c < 1e-10);
        CHECK(r.res_w < 1e-10);
    }
}

TEST_CASE("linear rate is the derivative of the propagator") {
    const Grid g(1, 128, two_pi);
    const GridField c0 = random_field(g, 5);
    const VecField v0({random_field(g, 6)});
    const double h = 1e-6;
    const LinearState rate = linear_rate(c0, v0, 0.2, Scaling::relax);
    const LinearState p = linear_propagate(c0, v0, 0.2, h);
    const LinearState m = linear_propagate(c0, v0, 0.2, 0.0);
    const GridField fd = (1.0 / h) * (p.c - m.c);
    CHECK(field_err(fd, rate.c) < 1e-4);
}
