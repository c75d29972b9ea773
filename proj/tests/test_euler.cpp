#include <doctest.h>

#include "helpers.hpp"
#include "hybesov/euler.hpp"
#include "hybesov/functionals.hpp"
#include "oracles/reference_values.hpp"

using namespace hybesov;
using testing::field_err;
using testing::random_field;
using testing::rel_err;

namespace {

const EulerParams kParams{2.0, 0.5, 0.2};

EulerState run(EulerState s, const EulerParams& params, double dt, int steps) {
    for (int k = 0; k < steps; ++k) s = step(s, params, dt);
    return s;
}

}  // namespace

TEST_CASE("derived constants") {
    CHECK(kParams.c_bar() == doctest::Approx(2.0));
    CHECK(kParams.gamma_check() == 0.5);
    CHECK(kParams.kappa() == doctest::Approx(1.0));
    const EulerParams air{1.4, 1.0, 0.1};
    CHECK(rel_err(air.c_bar(), std::sqrt(5.6) / 0.4) < 1e-15);
    CHECK_THROWS(EulerParams{1.0, 1.0, 0.1}.validate());
    CHECK_THROWS(EulerParams{2.0, 0.0, 0.1}.validate());
    CHECK_THROWS(EulerParams{2.0, 1.0, 0.0}.validate());
}

TEST_CASE("equilibrium maps to the origin") {
    const Grid g(1, 64, two_pi);
    const EulerState s = to_sound_vars(GridField::constant(g, 1.0), VecField(g), kParams);
    CHECK(max_abs(s.c) < 1e-15);
    CHECK(max_abs(s.v) == 0.0);
}

TEST_CASE("sound speed follows the power law pointwise") {
    const Grid g(1, 256, two_pi);
    const GridField rho = GridField::from_function(g, [](double x, double) { return 1.0 + 0.01 * std::cos(x); });
    const EulerState s = to_sound_vars(rho, VecField(g), kParams);
    CHECK(std::abs(s.c.samples()[0] - oracle::sound_speed_at_1_01) < 1e-14);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(std::abs(s.c.samples()[i] - 2.0 * (std::sqrt(rho.samples()[i]) - 1.0)) < 1e-14);
    }
    const GridField back = density(s, kParams);
    CHECK(field_err(back, rho) < 1e-12);
}

TEST_CASE("velocity rescaling round trips") {
    const Grid g(1, 128, two_pi);
    const VecField u({random_field(g, 3, 0.01)});
    const EulerState s = to_sound_vars(GridField::constant(g, 1.0), u, kParams);
    CHECK(lp_norm(momentum_velocity(s, kParams) - u, infinity) < 1e-15);
}

TEST_CASE("nonpositive density and vacuum are rejected") {
    const Grid g(1, 64, two_pi);
    const GridField rho = GridField::from_function(g, [](double x, double) { return std::cos(x); });
    CHECK_THROWS(to_sound_vars(rho, VecField(g), kParams));
    EulerState s{GridField::constant(g, -1.95), VecField(g), 0.0};
    CHECK_THROWS_AS(check_vacuum(s, kParams), VacuumError);
    CHECK_THROWS_AS(step(s, kParams, 1e-3), VacuumError);
    s.c = GridField::constant(g, -2.5);
    CHECK_THROWS_AS(density(s, kParams), VacuumError);
    CHECK_THROWS_AS(rhs(s, kParams), VacuumError);
}

TEST_CASE("step size bounds are enforced") {
    const Grid g(1, 128, two_pi);
    const EulerState s{GridField(g), VecField(g), 0.0};
    CHECK_THROWS_AS(step(s, kParams, 0.0), StepSizeError);
    CHECK_THROWS_AS(step(s, kParams, 0.1), StepSizeError);
    CHECK_NOTHROW(step(s, kParams, 1e-3));
}

TEST_CASE("rhs at equilibrium and without velocity") {
    const Grid g(1, 128, two_pi);
    const EulerRates z = rhs(EulerState{GridField(g), VecField(g), 0.0}, kParams);
    CHECK(max_abs(z.dc) == 0.0);
    CHECK(max_abs(z.dv) == 0.0);

    const GridField c = random_field(g, 7, 0.1);
    const EulerRates r = rhs(EulerState{c, VecField(g), 0.0}, kParams);
    CHECK(max_abs(r.dc) == 0.0);
    const double gc = kParams.gamma_check();
    const double inv2 = 1.0 / (kParams.eps * kParams.eps);
    const GridField expect = -gc * inv2 * product(c + GridField::constant(g, kParams.c_bar()), partial(c, 0));
    CHECK(field_err(r.dv[0], expect) < 1e-12);
}

TEST_CASE("rhs is linearized by the diffusive symbol") {
    const Grid g(1, 128, two_pi * 4);
    auto mismatch = [&](double a) {
        const EulerState s{single_mode(g, 3, a), VecField({single_mode(g, 5, a, true)}), 0.0};
        const EulerRates r = rhs(s, kParams);
        const LinearState lin = linear_rate(s.c, s.v, kParams.eps, Scaling::diffusive, kParams.kappa());
        const double inv2 = 1.0 / (kParams.eps * kParams.eps);
        const VecField dv = r.dv - inv2 * s.v;
        return std::max(field_err(r.dc, lin.c), lp_norm(dv - lin.v, infinity) / lp_norm(lin.v, infinity));
    };
    const double m3 = mismatch(1e-3);
    const double m4 = mismatch(1e-4);
    CHECK(m3 < 1e-2);
    CHECK(m3 / m4 == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("equilibrium is exactly stationary") {
    const Grid g(2, 32, two_pi);
    const EulerState s = run(EulerState{GridField(g), VecField(g), 0.0}, kParams, 1e-3, 10);
    CHECK(max_abs(s.c) == 0.0);
    CHECK(max_abs(s.v) == 0.0);
    CHECK(s.t == doctest::Approx(1e-2));
}

TEST_CASE("small data follow the exact linear propagator") {
    const Grid g(1, 256, two_pi * 4);
    const EulerState s = well_prepared(single_mode(g, 3, 1e-8), kParams);
    const EulerState one = step(s, kParams, 1e-2);
    const LinearState ref = linear_propagate(s.c, s.v, kParams.eps, 1e-2, Scaling::diffusive, kParams.kappa());
    CHECK(lp_norm(one.c - ref.c, 2.0) / lp_norm(ref.c, 2.0) < 1e-6);
    CHECK(lp_norm(one.v - ref.v, 2.0) / lp_norm(ref.v, 2.0) < 1e-6);
}

TEST_CASE("trajectories approach the linear ones at rate O(amplitude)") {
    const Grid g(1, 128, two_pi * 4);
    auto deviation = [&](double a) {
        const EulerState s0 = well_prepared(random_band_limited(g, 0.0, 4.0, 5, a), kParams);
        const EulerState s = run(s0, kParams, 1e-2, 20);
        const LinearState ref = linear_propagate(s0.c, s0.v, kParams.eps, s.t, Scaling::diffusive, kParams.kappa());
        return lp_norm(s.c - ref.c, 2.0) / lp_norm(ref.c, 2.0);
    };
    const double r = deviation(1e-3) / deviation(1e-4);
    CHECK(r > 7.0);
    CHECK(r < 13.0);
}

TEST_CASE("Strang step is second order") {
    const Grid g(1, 256, two_pi * 4);
    const EulerState s0 = well_prepared(random_band_limited(g, 0.0, 3.0, 11, 0.05), kParams);
    const double T = 0.1;
    const EulerState a = run(s0, kParams, T / 10, 10);
    const EulerState b = run(s0, kParams, T / 20, 20);
    const EulerState c = run(s0, kParams, T / 40, 40);
    const double ratio = lp_norm(a.c - b.c, 2.0) / lp_norm(b.c - c.c, 2.0);
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
}

TEST_CASE("density mean is conserved") {
    const Grid g(1, 256, two_pi * 4);
    EulerState s = well_prepared(random_band_limited(g, 0.0, 4.0, 13, 0.02), kParams);
    const double m0 = density(s, kParams).mean();
    // the drift is splitting error, O(dt²·amplitude²)
    s = run(s, kParams, 5e-3, 200);
    CHECK(rel_err(density(s, kParams).mean(), m0) < 1e-8);
}

TEST_CASE("damped mode vanishes on equilibrium and well-prepared data") {
    const Grid g(2, 32, two_pi);
    CHECK(max_abs(damped_mode(EulerState{GridField(g), VecField(g), 0.0}, kParams)) == 0.0);
    const EulerState s = well_prepared(random_field(g, 17, 0.1), kParams);
    CHECK(max_abs(damped_mode(s, kParams)) < 1e-15);
    const EulerState t{s.c, VecField(g), 0.0};
    const VecField W = damped_mode(t, kParams);
    CHECK(lp_norm(damped_mode(t, kParams, true) - kParams.eps * W, infinity) < 1e-17);
}

TEST_CASE("smallness gate") {
    const Grid g(1, 256, two_pi * 4);
    const FrequencyPartition part(kParams.eps, 1, 4, 1);
    const AdmissibleSequence seq{6.0, 1, {3.0}};
    const SmallnessVerdict zero = smallness_gate(EulerState{GridField(g), VecField(g), 0.0}, kParams, part, seq, 0.1);
    CHECK(zero.pass);
    CHECK(zero.X0 == 0.0);

    const EulerState s = well_prepared(random_field(g, 19, 0.01), kParams);
    const SmallnessVerdict small = smallness_gate(s, kParams, part, seq, 1e6);
    CHECK(small.X0 == accumulate_X0(s, kParams, part, seq));
    const EulerState big{10.0 * s.c, 10.0 * s.v, 0.0};
    const SmallnessVerdict fail = smallness_gate(big, kParams, part, seq, small.X0);
    CHECK_FALSE(fail.pass);
    CHECK(rel_err(fail.X0, 10.0 * small.X0) < 1e-13);
}

TEST_CASE("high-frequency functional decays after the transient") {
    const EulerParams params{2.0, 0.5, 0.1};
    const Grid g(1, 128, two_pi);
    const FrequencyPartition part(params.eps, 1, 4, 0);
    for (int t = 0; t < 20; ++t) {
        EulerState s{random_field(g, 100 + t, 1e-3), VecField({random_field(g, 200 + t, 1e-3)}), 0.0};
        std::vector<double> series;
        for (int k = 0; k < 100; ++k) {
            s = step(s, params, 2e-3);
            if (k % 5 == 4) {
                const double ch = DyadicDecomposition(s.c).semi_norm(part, Regime::high(), 1.5, 2.0);
                const double vh = DyadicDecomposition(s.v).semi_norm(part, Regime::high(), 1.5, 2.0);
                series.push_back(params.eps * ch + params.eps * params.eps * vh);
            }
        }
        for (std::size_t i = 3; i < series.size(); ++i) CHECK(series[i] <= series[i - 1]);
    }
}

TEST_CASE("cross-term Lyapunov functional") {
    const double eps = 0.1;
    const Grid g(1, 256, two_pi);
    const int J = FrequencyPartition::threshold(eps, 1);
    const GridField c0 = random_field(g, 31);
    const VecField v0({random_field(g, 32)});
    for (int j = J; j <= J + 2; ++j) {
        double prev = infinity;
        for (int k = 0; k <= 20; ++k) {
            const LinearState ls = linear_propagate(c0, v0, eps, 1e-3 * k, Scaling::diffusive);
            const EulerState s{ls.c, ls.v, 1e-3 * k};
            const double L = lyapunov(s, eps, j);
            const double ref = lyapunov_reference(s, eps, j);
            CHECK(L >= 0.5 * ref);
            CHECK(L <= 2.0 * ref);
            CHECK(L <= prev);
            prev = L;
        }
    }
}
