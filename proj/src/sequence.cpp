#include <cmath>
#include <limits>
#include <sstream>

#include "hybesov/lp.hpp"

namespace hybesov {

namespace {

constexpr double kRelTol = 1e-12;

// a·b/(b−a) style bound; a nonpositive denominator means no constraint.
double ratio_bound(double num, double den) {
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

std::string fmt(double v) {
    if (std::isinf(v)) return "inf";
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

SequenceVerdict validate_sequence(const AdmissibleSequence& seq) {
    const double p = seq.p;
    const int d = seq.d;
    if (!(p > 2.0)) throw SequenceError("low-frequency exponent p must exceed 2");
    if (d < 1) throw SequenceError("dimension must be positive");
    for (std::size_t i = 0; i < seq.ps.size(); ++i) {
        if (!(seq.ps[i] > 2.0 && seq.ps[i] < p))
            throw SequenceError("sequence entry p_" + std::to_string(i + 1) + " lies outside (2, p)");
        if (i > 0 && !(seq.ps[i] > seq.ps[i - 1]))
            throw SequenceError("sequence is not strictly increasing at p_" + std::to_string(i + 1));
    }

    SequenceVerdict v;
    const bool large_p = p > 4.0;
    auto check = [&](const std::string& name, double lhs, double bound) {
        v.checks.push_back(name + ": " + fmt(lhs) + " <= " + fmt(bound));
        const bool ok = std::isinf(bound) || lhs <= bound * (1.0 + kRelTol);
        if (!ok && v.valid) {
            v.valid = false;
            v.violated = name;
            v.lhs = lhs;
            v.bound = bound;
        }
    };

    const int R = seq.R();
    if (R == 0) {
        // No medium regime: the high regime (L^2) meets the low one directly.
        double b = ratio_bound(2.0 * d, d - 2.0);
        if (large_p) b = std::min(b, ratio_bound(2.0 * p, p - 2.0));
        check("p <= bound(2)", p, b);
        return v;
    }
    double b1 = ratio_bound(2.0 * d, d - 2.0);
    if (large_p) b1 = std::min(b1, ratio_bound(2.0 * p, p - 2.0));
    check("p_1 <= bound(2)", seq.ps[0], b1);
    for (int i = 0; i + 1 < R; ++i) {
        const double pi = seq.ps[i];
        double b = ratio_bound(pi * d, d - pi);
        if (large_p) b = std::min(b, ratio_bound(pi * p, p - pi));
        check("p_" + std::to_string(i + 2) + " <= bound(p_" + std::to_string(i + 1) + ")", seq.ps[i + 1], b);
    }
    const double pR = seq.ps.back();
    double bR = ratio_bound(pR * d, d - pR);
    if (large_p) bR = std::min(bR, 2.0 * pR);
    check("p <= bound(p_R)", p, bR);
    return v;
}

AdmissibleSequence example_sequence(double p, int d) {
    if (!(p > 2.0)) throw SequenceError("example sequence needs p > 2");
    AdmissibleSequence seq;
    seq.p = p;
    seq.d = d;
    if (p > 4.0) {
        const int R = static_cast<int>(std::floor((p - 2.0) * (p - 4.0) / 8.0)) + 1;
        for (int i = 1; i <= R; ++i) seq.ps.push_back(2.0 + 4.0 * i / (p - 2.0));
        return seq;
    }
    for (int R = 0; R <= 64; ++R) {
        AdmissibleSequence cand{p, d, {}};
        for (int i = 1; i <= R; ++i) cand.ps.push_back(2.0 + i * (p - 2.0) / (R + 1));
        if (validate_sequence(cand).valid) return cand;
    }
    throw SequenceError("no evenly spaced admissible sequence found");
}

}  // namespace hybesov
