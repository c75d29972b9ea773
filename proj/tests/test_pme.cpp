#include <doctest.h>

#include "helpers.hpp"
#include "hybesov/pme.hpp"

using namespace hybesov;
using testing::field_err;
using testing::random_field;
using testing::rel_err;

namespace {

const PressureLaw kLaw{2.0, 0.5};

PMEState run(PMEState s, double dt, int steps, std::vector<PMEState>* trace = nullptr) {
    if (trace) trace->push_back(s);
    for (int k = 0; k < steps; ++k) {
        s = pme_step(s, kLaw, dt);
        if (trace) trace->push_back(s);
    }
    return s;
}

GridField one_plus(const GridField& f) { return GridField::constant(f.grid(), 1.0) + f; }

}  // namespace

TEST_CASE("pressure law") {
    CHECK(kLaw.pressure(2.0) == doctest::Approx(2.0));
    CHECK(kLaw.dpressure(2.0) == doctest::Approx(2.0));
    const Grid g(1, 64, two_pi);
    CHECK(pme_mu(PMEState{GridField::constant(g, 1.5), 0.0}, kLaw) == doctest::Approx(1.5));
}

TEST_CASE("constant density is stationary") {
    const Grid g(1, 128, two_pi);
    const PMEState s = run(PMEState{GridField::constant(g, 1.3), 0.0}, 1e-3, 20);
    CHECK(field_err(s.N, GridField::constant(g, 1.3)) < 1e-15);
}

TEST_CASE("linear regime follows the heat kernel") {
    const Grid g(1, 128, two_pi);
    const int k = 4;
    const double a = 1e-8;
    const PMEState s = run(PMEState{one_plus(single_mode(g, k, a)), 0.0}, 1e-3, 100);
    const double mu = 1.0;
    const double xi = g.wavenumber(k);
    const GridField expect = std::exp(-mu * xi * xi * s.t) * single_mode(g, k, a);
    const GridField pert = s.N - GridField::constant(g, 1.0);
    CHECK(lp_norm(pert - expect, infinity) / lp_norm(expect, infinity) < 1e-6);
}

TEST_CASE("porous medium step is second order") {
    const Grid g(1, 256, two_pi * 4);
    const PMEState s0{one_plus(random_band_limited(g, 0.0, 3.0, 3, 0.05)), 0.0};
    const double T = 0.1;
    const PMEState a = run(s0, T / 10, 10);
    const PMEState b = run(s0, T / 20, 20);
    const PMEState c = run(s0, T / 40, 40);
    const double ratio = lp_norm(a.N - b.N, 2.0) / lp_norm(b.N - c.N, 2.0);
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
}

TEST_CASE("mass is conserved") {
    const Grid g(1, 256, two_pi * 4);
    PMEState s{one_plus(random_band_limited(g, 0.0, 4.0, 5, 0.1)), 0.0};
    const double m0 = s.N.mean();
    s = run(s, 1e-2, 100);
    CHECK(rel_err(s.N.mean(), m0) < 1e-10);
}

TEST_CASE("stability bound and positivity") {
    const Grid g(1, 256, two_pi);
    const PMEState s{one_plus(random_field(g, 1, 0.5)), 0.0};
    CHECK_THROWS_AS(pme_step(s, kLaw, 0.1), StepSizeError);
    CHECK_THROWS_AS(pme_step(s, kLaw, 0.0), StepSizeError);
    const PMEState neg{random_field(g, 2), 0.0};
    CHECK_THROWS(pme_step(neg, kLaw, 1e-6));
    CHECK_THROWS(darcy_velocity(neg, kLaw));
}

TEST_CASE("Darcy velocity") {
    const Grid g(1, 256, two_pi);
    CHECK(max_abs(darcy_velocity(PMEState{GridField::constant(g, 2.0), 0.0}, kLaw)) == 0.0);

    const PMEState s{one_plus(random_band_limited(g, 0.0, 20.0, 7, 0.1)), 0.0};
    const VecField V = darcy_velocity(s, kLaw);
    const VecField ref = -1.0 * gradient(s.N);
    CHECK(lp_norm(V - ref, infinity) / lp_norm(ref, infinity) < 1e-10);

    const PressureLaw cubic{3.0, 1.0};
    auto lin_err = [&](double a) {
        const PMEState q{one_plus(single_mode(g, 3, a)), 0.0};
        const VecField lin = -cubic.dpressure(1.0) * gradient(q.N);
        return lp_norm(darcy_velocity(q, cubic) - lin, infinity) / lp_norm(lin, infinity);
    };
    CHECK(lin_err(1e-3) / lin_err(1e-4) == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("Y functional") {
    const Grid g(1, 256, two_pi);
    const double p = 6.0;
    CHECK(pme_functional_Y({PMEState{GridField::constant(g, 1.0), 0.0}}, p) == 0.0);

    const int k = 3;
    const double a = 1e-6;
    const PMEState s0{one_plus(single_mode(g, k, a)), 0.0};
    const GridField unit = single_mode(g, k, 1.0);
    const double b0 = besov_norm(unit, 1.0 / p, p);
    const double b2 = besov_norm(unit, 1.0 / p + 2.0, p);
    CHECK(rel_err(pme_functional_Y({s0}, p), a * b0) < 1e-9);

    std::vector<PMEState> trace;
    const double T = 0.2;
    run(s0, 1e-3, 200, &trace);
    const double rate = std::pow(g.wavenumber(k), 2);
    const double closed = a * b0 + a * b2 * (1.0 - std::exp(-rate * T)) / rate;
    CHECK(rel_err(pme_functional_Y(trace, p), closed) < 0.02);
    CHECK_THROWS(pme_functional_Y({}, p));
}

TEST_CASE("Y stays proportional to the initial perturbation") {
    const Grid g(1, 256, two_pi * 2);
    const double p = 6.0;
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const GridField pert = random_band_limited(g, 0.0, 8.0, 40 + t, 0.05);
        const double x0 = besov_norm(pert, 1.0 / p, p);
        std::vector<PMEState> trace;
        run(PMEState{one_plus(pert), 0.0}, 2e-3, 100, &trace);
        worst = std::max(worst, pme_functional_Y(trace, p) / x0);
    }
    MESSAGE("max Y/x0 = " << worst);
    CHECK(worst < 10.0);
}
