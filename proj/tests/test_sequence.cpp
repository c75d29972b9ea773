#include <doctest.h>

#include "hybesov/lp.hpp"

using namespace hybesov;

TEST_CASE("p = 6 with one medium exponent 3 is admissible") {
    for (int d : {1, 2, 3}) {
        const SequenceVerdict v = validate_sequence({6.0, d, {3.0}});
        CHECK(v.valid);
        CHECK(v.violated.empty());
    }
}

TEST_CASE("p = 6, p_1 = 5 violates the first constraint") {
    const SequenceVerdict v = validate_sequence({6.0, 3, {5.0}});
    CHECK_FALSE(v.valid);
    CHECK(v.violated == "p_1 <= bound(2)");
    CHECK(v.lhs == 5.0);
    CHECK(v.bound == doctest::Approx(3.0));
}

TEST_CASE("nonpositive denominators are vacuous") {
    const SequenceVerdict v = validate_sequence({3.0, 2, {2.5}});
    CHECK(v.valid);
}

TEST_CASE("malformed sequences raise") {
    CHECK_THROWS_AS(validate_sequence({6.0, 3, {4.0, 3.5}}), SequenceError);
    CHECK_THROWS_AS(validate_sequence({6.0, 3, {6.5}}), SequenceError);
    CHECK_THROWS_AS(validate_sequence({2.0, 3, {}}), SequenceError);
    CHECK_THROWS_AS(example_sequence(2.0, 3), SequenceError);
}

TEST_CASE("explicit family") {
    const AdmissibleSequence s10 = example_sequence(10.0, 3);
    REQUIRE(s10.R() == 7);
    for (int i = 1; i <= 7; ++i) CHECK(s10.ps[i - 1] == doctest::Approx(2.0 + 0.5 * i));
    CHECK(example_sequence(4.0 + 1e-6, 3).R() == 1);
    // The literal formula gives R = 2 at p = 6; the single-regime choice p_1 = 3 is checked separately.
    const AdmissibleSequence s6 = example_sequence(6.0, 3);
    CHECK(s6.R() == 2);
    CHECK(s6.ps[0] == doctest::Approx(3.0));
}

TEST_CASE("p at most 4 uses the smallest admissible evenly spaced sequence") {
    for (double p : {3.0, 4.0}) {
        for (int d : {1, 2, 3}) {
            const AdmissibleSequence s = example_sequence(p, d);
            CHECK(validate_sequence(s).valid);
            for (int R = 0; R < s.R(); ++R) {
                AdmissibleSequence c{p, d, {}};
                for (int i = 1; i <= R; ++i) c.ps.push_back(2.0 + i * (p - 2.0) / (R + 1));
                CHECK_FALSE(validate_sequence(c).valid);
            }
        }
    }
}

TEST_CASE("without medium regimes the high and low regimes meet directly") {
    CHECK(validate_sequence({3.0, 3, {}}).valid);
    CHECK_FALSE(validate_sequence({7.0, 3, {}}).valid);
}

TEST_CASE("every evaluated constraint is listed") {
    const SequenceVerdict v = validate_sequence({10.0, 3, {2.5, 3.0, 3.5}});
    CHECK(v.checks.size() == 4);
}
