// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "hybesov/bony.hpp"
#include "hybesov/data.hpp"
#include "hybesov/euler.hpp"
#include "hybesov/pme.hpp"
#include "hybesov/spectral.hpp"
#include "hybesov/sweep.hpp"
#include "oracles/reference_values.hpp"

using namespace hybesov;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Outcome partition_of_unity() {
    const auto t0 = Clock::now();
    const Grid g(1, 1024, two_pi);
    const auto& geo = geometry(g);
    const ShellRange range = grid_shells(g);
    const DyadicCutoff& cut = default_cutoff();
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (geo.radius[i] == 0.0) continue;
        double s = 0.0;
        for (int j = range.jmin; j <= range.jmax; ++j) s += cut.phi(geo.radius[i] / std::exp2(j));
        worst = std::max(worst, std::abs(s - 1.0));
    }
    // regime tiling on a random field
    const GridField f = random_band_limited(g, 0.0, g.max_dealiased_wavenumber(), 1, 1.0);
    const FrequencyPartition part(0.01, 1, 2, 2);
    GridField sum = project_regime(f, part, Regime::low()) + project_regime(f, part, Regime::high()) +
                    subgrid_remainder(f);
    for (int i = 1; i <= part.R(); ++i) sum += project_regime(f, part, Regime::medium(i));
    const double tiling = lp_norm(sum - f, infinity) / lp_norm(f, infinity);
    const double dt = seconds_since(t0);
    return {worst < 1e-12 && tiling < 1e-12 && dt < 1.0,
            "max|sum phi - 1| = " + fmt("%.2e", worst) + " (< 1e-12), tiling " + fmt("%.2e", tiling) +
                " (< 1e-12), time " + fmt("%.3f", dt) + " s (< 1 s)"};
}

Outcome bony_identity() {
    const Grid g(1, 1024, two_pi);
    const double kmax = g.max_dealiased_wavenumber();
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const GridField f = random_band_limited(g, 0.0, kmax, 1000 + 2 * t, 1.0);
        const GridField h = random_band_limited(g, 0.0, kmax, 1001 + 2 * t, 1.0);
        const double scale = lp_norm(f, infinity) * lp_norm(h, infinity);
        worst = std::max(worst, lp_norm(product(f, h) - bony_decompose(f, h).sum(), infinity) / scale);
    }
    return {worst < 1e-10, "max relative residual over 100 pairs " + fmt("%.2e", worst) + " (< 1e-10)"};
}

Outcome support_vanishing() {
    const Grid g(1, 1024, two_pi);
    const double a0 = 0.125;
    const FrequencyPartition part(0.01, 1, 4, 0);
    const double cutoff = a0 * std::exp2(part.J()) * (1.0 - 1e-12);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const GridField f = random_band_limited(g, 0.0, cutoff, 2000 + 2 * t, 1.0);
        const GridField h = random_band_limited(g, 0.0, cutoff, 2001 + 2 * t, 1.0);
        worst = std::max(worst, support_vanish_residual(f, h, part, a0));
    }
    // one mode just below the high threshold 3/4·2^J
    const int k = static_cast<int>(std::exp2(part.J()) / g.min_wavenumber()) - 33;
    const GridField bad = single_mode(g, k, 1.0);
    const double counter = support_vanish_residual(bad, bad, part, a0);
    return {worst < 1e-12 && counter > 1e-3, "max residual over 100 trials " + fmt("%.2e", worst) +
                                                 " (< 1e-12), counterexample " + fmt("%.3f", counter) + " (> 1e-3)"};
}

Outcome eigen_asymptotics() {
    const double lm = eigenvalues(0.1, 1.0).lambda_minus.real();
    const double ref = oracle::eigen_values[0].re_minus;
    const double err = std::abs(lm - ref) / ref;
    const double ratio = std::abs(lm / 0.1 - 1.0);
    const EigenPair hi = eigenvalues(0.1, 100.0);
    const bool exact = hi.lambda_plus.real() * 0.1 == 0.5 && hi.lambda_minus.real() * 0.1 == 0.5;
    return {err < 1e-12 && ratio < 2e-2 && exact,
            "lambda_- = " + fmt("%.10f", lm) + ", rel. error " + fmt("%.1e", err) + " (< 1e-12), |ratio - 1| = " +
                fmt("%.4f", ratio) + " (< 2e-2), Re(lambda)*eps at eps|xi| = 10: " +
                (exact ? "0.5 exactly" : "not 0.5")};
}

Outcome damped_mode_rewrite() {
    const Grid g(1, 256, two_pi * 4);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const GridField c0 = random_band_limited(g, 0.0, 12.0, 3000 + t, 1.0);
        const GridField v0 = random_band_limited(g, 0.0, 12.0, 3100 + t, 1.0);
        const DampedModeResidual r = damped_mode_residual(c0, VecField({v0}), 0.05, 0.3 * (t + 1) / 20.0);
        worst = std::max({worst, r.res_c, r.res_w});
    }
    return {worst < 1e-10, "max residual over 20 data sets " + fmt("%.2e", worst) + " (< 1e-10)"};
}

Outcome self_convergence() {
    const Grid g(1, 256, two_pi * 4);
    const double T = 0.1;
    const EulerParams params{2.0, 0.5, 0.2};
    const EulerState e0 = well_prepared(random_band_limited(g, 0.0, 3.0, 11, 0.05), params);
    const PMEState n0{GridField::constant(g, 1.0) + random_band_limited(g, 0.0, 3.0, 3, 0.05), 0.0};
    double slowest = 0.0;
    auto euler_run = [&](int steps) {
        const auto t0 = Clock::now();
        EulerState s = e0;
        for (int k = 0; k < steps; ++k) s = step(s, params, T / steps);
        slowest = std::max(slowest, seconds_since(t0));
        return s.c;
    };
    auto pme_run = [&](int steps) {
        const auto t0 = Clock::now();
        PMEState s = n0;
        for (int k = 0; k < steps; ++k) s = pme_step(s, params.law(), T / steps);
        slowest = std::max(slowest, seconds_since(t0));
        return s.N;
    };
    const GridField a = euler_run(10), b = euler_run(20), c = euler_run(40);
    const double re = lp_norm(a - b, 2.0) / lp_norm(b - c, 2.0);
    const GridField x = pme_run(10), y = pme_run(20), z = pme_run(40);
    const double rp = lp_norm(x - y, 2.0) / lp_norm(y - z, 2.0);
    const bool ok = re >= 3.0 && re <= 5.0 && rp >= 3.0 && rp <= 5.0 && slowest < 10.0;
    return {ok, "Richardson ratio Euler " + fmt("%.3f", re) + ", PME " + fmt("%.3f", rp) +
                    " (in [3, 5]), slowest run " + fmt("%.3f", slowest) + " s (< 10 s)"};
}

struct SweepResult {
    std::vector<SweepPoint> points;
    SweepFits fits;
    double seconds = 0.0;
};

const SweepResult& sweep() {
    static const SweepResult result = [] {
        SweepSetup setup;  // d = 1, n = 512, gamma = 2, A = 1/2, amplitude 1e-2, eps {0.2, 0.1, 0.05, 0.025}
        setup.deltas = {1.0, 0.5};
        setup.perturbations = {0.0, 1.0};
        setup.rs = {1.0};
        const auto t0 = Clock::now();
        SweepResult r;
        r.points = run_sweep(setup);
        r.fits = fit_sweep(setup, r.points);
        r.seconds = seconds_since(t0);
        return r;
    }();
    return result;
}

std::string failed_points(const SweepResult& r) {
    std::string out;
    for (const auto& p : r.points) {
        if (!p.ok) out += " [eps " + fmt("%g", p.eps) + ": " + p.error + "]";
    }
    return out;
}

Outcome damped_mode_decay() {
    const SweepResult& r = sweep();
    if (!r.fits.W[0]) return {false, "fit refused:" + failed_points(r)};
    const double slope = r.fits.W[0]->slope;
    const bool ok = std::abs(slope - 1.0) <= 0.2 && r.seconds < 300.0;
    return {ok, "exponent of ||W||_{L^1_T} " + fmt("%.4f", slope) + " (1 +/- 0.2), R^2 " + fmt("%.4f", r.fits.W[0]->r2) +
                    ", sweep " + fmt("%.1f", r.seconds) + " s (< 300 s)" + failed_points(r)};
}

Outcome relaxation_rate() {
    const SweepResult& r = sweep();
    if (!r.fits.sup[0] || !r.fits.sup[1]) return {false, "fit refused:" + failed_points(r)};
    const double s1 = r.fits.sup[0]->slope;
    const double s5 = r.fits.sup[1]->slope;
    const bool ok = std::abs(s1 - 1.0) <= 0.25 && std::abs(s5 - 0.5) <= 0.2;
    return {ok, "slope delta=1 " + fmt("%.4f", s1) + " (1 +/- 0.25), delta=0.5 " + fmt("%.4f", s5) + " (0.5 +/- 0.2)"};
}

Outcome sequence_validator() {
    const bool base = validate_sequence({6.0, 3, {3.0}}).valid;
    std::ostringstream rep;
    rep << "p=6, p_1=3 " << (base ? "valid" : "INVALID");
    for (double p : {6.0, 8.0, 10.0}) {
        const AdmissibleSequence fam = example_sequence(p, 3);  // p_i = 2 + 4i/(p-2)
        const SequenceVerdict v = validate_sequence(fam);
        rep << "; p=" << p << " R=" << fam.R() << " " << (v.valid ? "valid" : "violates " + v.violated);
    }
    return {base, rep.str()};
}

Outcome lemma_ratio_stability() {
    const AdmissibleSequence seq{6.0, 1, {3.0}};
    double pmin = infinity, pmax = 0.0, cmin = infinity, cmax = 0.0;
    std::ostringstream rep;
    for (double eps : {0.1, 0.05}) {
        const FrequencyPartition part(eps, 1, 4, 1);
        const double top = 4.0 * std::exp2(part.J());
        for (int n : {512, 1024}) {
            const Grid g(1, n, two_pi);
            double pr = 0.0, cr = 0.0;
            for (int t = 0; t < 50; ++t) {
                const GridField f = random_band_limited(g, 0.0, top, 4000 + 2 * t, 1.0);
                const GridField h = random_band_limited(g, 0.0, top, 4001 + 2 * t, 1.0);
                pr = std::max(pr, product_law_ratio(f, h, part, seq, 1.5).ratio);
                cr = std::max(cr, commutator_law_ratio(f, h, part, seq, 1.5).ratio);
            }
            pmin = std::min(pmin, pr);
            pmax = std::max(pmax, pr);
            cmin = std::min(cmin, cr);
            cmax = std::max(cmax, cr);
        }
    }
    const double sp = pmax / pmin, sc = cmax / cmin;
    return {sp < 2.0 && sc < 2.0, "product ratio in [" + fmt("%.4f", pmin) + ", " + fmt("%.4f", pmax) +
                                      "], commutator ratio in [" + fmt("%.4f", cmin) + ", " + fmt("%.4f", cmax) +
                                      "], spreads x" + fmt("%.3f", sp) + " and x" + fmt("%.3f", sc) + " (< x2)"};
}

}  // namespace

int main() {
    criterion(1, "partition of unity and regime tiling", partition_of_unity);
    criterion(2, "Bony identity", bony_identity);
    criterion(3, "support vanishing", support_vanishing);
    criterion(4, "eigenvalue asymptotics", eigen_asymptotics);
    criterion(5, "linear damped-mode rewrite", damped_mode_rewrite);
    criterion(6, "solver self-convergence", self_convergence);
    criterion(7, "damped-mode decay rate", damped_mode_decay);
    criterion(8, "relaxation rate", relaxation_rate);
    criterion(9, "admissible-sequence validator", sequence_validator);
    criterion(10, "product and commutator ratio stability", lemma_ratio_stability);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
