#include <doctest.h>

#include "helpers.hpp"
#include "hybesov/bony.hpp"

using namespace hybesov;
using testing::field_err;
using testing::random_field;

TEST_CASE("Bony identity on random dealiased pairs") {
    const Grid g(1, 256, two_pi);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const GridField f = random_field(g, 2 * t + 1);
        const GridField h = random_field(g, 2 * t + 2);
        const BonyParts parts = bony_decompose(f, h);
        const double scale = lp_norm(f, infinity) * lp_norm(h, infinity);
        worst = std::max(worst, lp_norm(product(f, h) - parts.sum(), infinity) / scale);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("Bony identity in two dimensions") {
    const Grid g(2, 64, two_pi * 2);
    const GridField f = random_field(g, 3);
    const GridField h = random_field(g, 4);
    CHECK(field_err(bony_decompose(f, h).sum(), product(f, h)) < 1e-10);
}

TEST_CASE("paraproduct with a constant") {
    const Grid g(1, 256, two_pi);
    const GridField h = random_field(g, 9) + GridField::constant(g, 0.7);
    const GridField t = paraproduct(GridField::constant(g, 2.5), h);
    CHECK(field_err(t, 2.5 * (h - subgrid_remainder(h))) < 1e-11);
    CHECK(lp_norm(paraproduct(h, GridField(g)), infinity) == 0.0);
    CHECK(lp_norm(remainder(h, GridField(g)), infinity) == 0.0);
}

TEST_CASE("paraproduct summands stay within the measured spread") {
    const Margins m = measure_margins();
    CHECK(m.N1 <= 4);
    CHECK(m.N2 <= 4);
    const Grid g(1, 1024, two_pi);
    for (int t = 0; t < 5; ++t) {
        const GridField f = random_field(g, 40 + t);
        const GridField h = random_field(g, 50 + t);
        for (int jp = 2; jp <= 7; ++jp) CHECK(paraproduct_excess_spread(f, h, jp) <= m.N2);
    }
    const GridField one = GridField::constant(g, 1.0);
    CHECK(paraproduct_excess_spread(one, random_field(g, 60), 5) == 0);
}

TEST_CASE("remainder of spectrally separated fields vanishes") {
    const Grid g(1, 1024, two_pi);
    const GridField f = random_band_limited(g, 3.0, 6.0, 1, 1.0);
    const GridField h = random_band_limited(g, 100.0, 160.0, 2, 1.0);
    CHECK(lp_norm(remainder(f, h), infinity) < 1e-11 * lp_norm(product(f, h), infinity));
    CHECK(lp_norm(remainder(h, f), infinity) < 1e-11 * lp_norm(product(f, h), infinity));
}

TEST_CASE("cos(4x)^2 closes the identity") {
    const Grid g(1, 128, two_pi);
    const GridField c = GridField::from_function(g, [](double x, double) { return std::cos(4 * x); });
    const BonyParts parts = bony_decompose(c, c);
    CHECK(field_err(parts.sum(), product(c, c)) < 1e-10);
    CHECK(lp_norm(parts.remainder, 2.0) > 0.1);
}

TEST_CASE("commutator with a constant vanishes") {
    const Grid g(1, 512, two_pi);
    const GridField h = random_field(g, 70);
    for (int j = 1; j <= 6; ++j) CHECK(lp_norm(commutator(GridField::constant(g, 3.0), h, j), infinity) < 1e-13);
}

TEST_CASE("commutator formula agrees with the Bony split") {
    const Grid g(1, 1024, two_pi);
    const Margins m = measure_margins();
    const GridField f = random_band_limited(g, 0.0, 6.0, 71, 1.0);
    for (int j = 4; j <= 7; ++j) {
        const GridField h = dyadic_block(random_field(g, 80 + j), j);
        const GridField a = commutator(f, h, j);
        const GridField b = commutator_split(f, h, j, m.N2);
        CHECK(lp_norm(a - b, infinity) < 1e-11 * lp_norm(f, infinity) * lp_norm(h, infinity));
    }
}

TEST_CASE("commutator gains one derivative per shell") {
    const Grid g(1, 1024, two_pi);
    const GridField f = GridField::from_function(g, [](double x, double) { return std::cos(x); });
    std::vector<double> scaled;
    for (int j = 3; j <= 7; ++j) {
        const double xi = std::exp2(j);
        const GridField h = GridField::from_function(g, [&](double x, double) { return std::cos(xi * x); });
        scaled.push_back(xi * lp_norm(commutator(f, h, j), 2.0) / lp_norm(h, 2.0));
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    CHECK(*lo > 0.0);
    CHECK(*hi / *lo < 2.0);
}

TEST_CASE("products of low-band fields have no high-frequency content") {
    const Grid g(1, 1024, two_pi);
    const FrequencyPartition part(0.01, 1, 4, 0);
    const double a0 = 0.125;
    const double cutoff = a0 * std::exp2(part.J()) * (1.0 - 1e-12);
    for (int t = 0; t < 20; ++t) {
        const GridField f = random_band_limited(g, 0.0, cutoff, 300 + t, 1.0);
        const GridField h = random_band_limited(g, 0.0, cutoff, 400 + t, 1.0);
        CHECK(support_vanish_residual(f, h, part, a0) < 1e-12);
    }
    CHECK(support_vanish_residual(GridField(g), random_field(g, 1), part, a0) == 0.0);
    const GridField bad = single_mode(g, static_cast<int>(std::exp2(part.J())) - 33, 1.0);
    CHECK(support_vanish_residual(bad, bad, part, a0) > 1e-3);
    CHECK_THROWS(support_vanish_residual(bad, bad, part, 0.2));
}

TEST_CASE("high-frequency product and commutator ratios are finite and positive") {
    const Grid g(1, 512, two_pi);
    const FrequencyPartition part(0.1, 1, 4, 1);
    const AdmissibleSequence seq{6.0, 1, {3.0}};
    for (int t = 0; t < 5; ++t) {
        const double top = std::exp2(part.J() + 2);
        const GridField f = random_band_limited(g, 0.0, top, 500 + t, 1.0);
        const GridField h = random_band_limited(g, 0.0, top, 600 + t, 1.0);
        const LemmaRatio pr = product_law_ratio(f, h, part, seq, 1.5);
        const LemmaRatio cr = commutator_law_ratio(f, h, part, seq, 1.5);
        CHECK(pr.ratio > 0.0);
        CHECK(pr.ratio < 1.0);
        CHECK(cr.ratio > 0.0);
        CHECK(cr.ratio < 1.0);
    }
}
