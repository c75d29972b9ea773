#include "hybesov/verify.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "hybesov/bony.hpp"
#include "hybesov/data.hpp"
#include "hybesov/euler.hpp"
#include "hybesov/pme.hpp"
#include "hybesov/spectral.hpp"

namespace hybesov {

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["passed"] = passed();
    auto& arr = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name}, {"measured", c.measured}, {"relation", c.relation}, {"limit", c.limit},
                       {"pass", c.pass}});
    }
    for (const auto& [k, v] : extras) j["report"][k] = v;
    return j.dump(2);
}

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"lp", "bony", "spectral", "solvers"};
    return names;
}

namespace {

void below(VerifyReport& r, const std::string& name, double value, double limit) {
    r.checks.push_back({name, value, limit, "<", value < limit});
}

void above(VerifyReport& r, const std::string& name, double value, double limit) {
    r.checks.push_back({name, value, limit, ">", value > limit});
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void suite_lp(VerifyReport& r, const ExperimentConfig& cfg) {
    const DyadicCutoff& cut = default_cutoff();
    for (const Grid g : {Grid(1, 1024), Grid(2, 128)}) {
        const auto& geo = geometry(g);
        const ShellRange range = grid_shells(g);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (geo.radius[i] == 0.0) continue;
            double s = 0.0;
            for (int j = range.jmin; j <= range.jmax; ++j) s += cut.phi(geo.radius[i] / std::ldexp(1.0, j));
            worst = std::max(worst, std::abs(s - 1.0));
        }
        below(r, "partition_of_unity_d" + std::to_string(g.d), worst, 1e-12);
    }

    const Grid& g = cfg.grid;
    const GridField f = random_band_limited(g, 0.0, g.max_dealiased_wavenumber() / std::sqrt(double(g.d)),
                                            cfg.data.seed, 1.0);
    const FrequencyPartition part = cfg.partition();
    const AdmissibleSequence seq = cfg.sequence();
    GridField sum = project_regime(f, part, Regime::low()) + project_regime(f, part, Regime::high());
    for (int i = 1; i <= part.R(); ++i) sum += project_regime(f, part, Regime::medium(i));
    sum += subgrid_remainder(f);
    below(r, "regime_tiling", lp_norm(sum - f, infinity) / lp_norm(f, infinity), 1e-12);

    const DyadicDecomposition dec(f);
    const double s = g.d / cfg.p;
    double pieces = dec.semi_norm(part, Regime::low(), s, seq.exponent(0));
    for (int i = 1; i <= part.R(); ++i) pieces += dec.semi_norm(part, Regime::medium(i), s, seq.exponent(i));
    pieces += dec.semi_norm(part, Regime::high(), s, 2.0);
    const double whole = part.R() >= 1
                             ? dec.semi_norm(part, Regime::low_medium(1), s, cfg.p, &seq) +
                                   dec.semi_norm(part, Regime::high(), s, 2.0)
                             : dec.semi_norm(part, Regime::low(), s, cfg.p) + dec.semi_norm(part, Regime::high(), s, 2.0);
    below(r, "bracket_recomposition", relative(whole, pieces), 1e-12);

    const SequenceVerdict v = validate_sequence(seq);
    r.checks.push_back({"sequence_valid", v.valid ? 1.0 : 0.0, 1.0, "==", v.valid});
    r.extras["J"] = part.J();
    r.extras["R"] = part.R();
}

void suite_bony(VerifyReport& r, const ExperimentConfig& cfg) {
    const Grid g(1, 1024, two_pi);
    const double kmax = g.max_dealiased_wavenumber();
    double identity = 0.0;
    for (int t = 0; t < 10; ++t) {
        const GridField f = random_band_limited(g, 0.0, kmax, cfg.data.seed + 2 * t, 1.0);
        const GridField h = random_band_limited(g, 0.0, kmax, cfg.data.seed + 2 * t + 1, 1.0);
        const GridField fg = product(f, h);
        const BonyParts parts = bony_decompose(f, h);
        identity = std::max(identity, lp_norm(fg - parts.sum(), infinity) / lp_norm(fg, infinity));
    }
    below(r, "identity_residual", identity, 1e-10);
    r.extras["identity_residual"] = identity;

    const FrequencyPartition part(0.01, cfg.k0, cfg.N0, 0);
    const double cutoff = cfg.a0 * std::ldexp(1.0, part.J());
    double support = 0.0;
    for (int t = 0; t < 10; ++t) {
        const GridField f = random_band_limited(g, 0.0, cutoff * (1.0 - 1e-12), cfg.data.seed + 100 + 2 * t, 1.0);
        const GridField h = random_band_limited(g, 0.0, cutoff * (1.0 - 1e-12), cfg.data.seed + 101 + 2 * t, 1.0);
        support = std::max(support, support_vanish_residual(f, h, part, cfg.a0));
    }
    below(r, "support_residual", support, 1e-12);
    r.extras["support_residual"] = support;

    const int k = static_cast<int>(std::ldexp(1.0, part.J()) / g.min_wavenumber()) - 33;
    const GridField bad = single_mode(g, k, 1.0);
    const double counter = support_vanish_residual(bad, bad, part, cfg.a0);
    above(r, "counterexample_residual", counter, 1e-3);

    const Margins m = measure_margins();
    r.extras["N1"] = m.N1;
    r.extras["N1_same_shell"] = m.N1_same_shell;
    r.extras["N2"] = m.N2;
    r.checks.push_back({"N0_covers_margins", double(cfg.N0), double(std::max(m.N1 + 1, m.N2)), ">=",
                        cfg.N0 >= std::max(m.N1 + 1, m.N2)});

    const Grid lg(1, 512, two_pi);
    const FrequencyPartition lpart(0.1, cfg.k0, cfg.N0, 1);
    const AdmissibleSequence seq{6.0, 1, {3.0}};
    double pmax = 0.0, cmax = 0.0;
    for (int t = 0; t < 5; ++t) {
        const double top = std::ldexp(4.0, lpart.J());
        const GridField f = random_band_limited(lg, 0.0, top, cfg.data.seed + 200 + 2 * t, 1.0);
        const GridField h = random_band_limited(lg, 0.0, top, cfg.data.seed + 201 + 2 * t, 1.0);
        pmax = std::max(pmax, product_law_ratio(f, h, lpart, seq, 1.5).ratio);
        cmax = std::max(cmax, commutator_law_ratio(f, h, lpart, seq, 1.5).ratio);
    }
    r.extras["lemma_ratio_product_max"] = pmax;
    r.extras["lemma_ratio_commutator_max"] = cmax;
}

void suite_spectral(VerifyReport& r, const ExperimentConfig& cfg) {
    double vieta = 0.0;
    for (Scaling sc : {Scaling::relax, Scaling::diffusive}) {
        for (double eps : {0.2, 0.1, 0.05}) {
            for (double xi = 0.0; xi <= 200.0; xi += 0.37) {
                const auto sym = LinearSymbol::make(eps, xi, sc);
                const EigenPair ev = eigenvalues(eps, xi, sc);
                const cplx sum = ev.lambda_plus + ev.lambda_minus;
                const cplx prod = ev.lambda_plus * ev.lambda_minus;
                vieta = std::max(vieta, std::abs(sum - sym.trace()) / std::abs(sym.trace()));
                if (sym.det() > 0.0) vieta = std::max(vieta, std::abs(prod - sym.det()) / sym.det());
            }
        }
    }
    below(r, "vieta_residual", vieta, 1e-12);

    const double lm = eigenvalues(0.1, 1.0).lambda_minus.real();
    const double oracle = (10.0 - std::sqrt(96.0)) / 2.0;
    below(r, "lambda_minus_eps0.1_xi1", relative(lm, oracle), 1e-12);
    below(r, "low_frequency_ratio", std::abs(lm / 0.1 - 1.0), 2e-2);
    const EigenPair hi = eigenvalues(0.1, 100.0);
    below(r, "high_frequency_real_part",
          std::max(std::abs(hi.lambda_plus.real() * 0.1 - 0.5), std::abs(hi.lambda_minus.real() * 0.1 - 0.5)), 1e-15);

    const Grid g(1, 256, two_pi * 4.0);
    double res = 0.0;
    for (int t = 0; t < 5; ++t) {
        const GridField c0 = random_band_limited(g, 0.0, 10.0, cfg.data.seed + 300 + t, 1.0);
        const GridField v0 = random_band_limited(g, 0.0, 10.0, cfg.data.seed + 400 + t, 1.0);
        const DampedModeResidual d = damped_mode_residual(c0, VecField({v0}), 0.1, 0.01);
        res = std::max({res, d.res_c, d.res_w});
    }
    below(r, "damped_mode_rewrite", res, 1e-10);
}

void suite_solvers(VerifyReport& r, const ExperimentConfig& cfg) {
    const Grid g(1, 128, two_pi);
    const EulerParams params{cfg.gamma, cfg.A, 0.2};

    EulerState zero{GridField(g), VecField(g), 0.0};
    const EulerState z1 = step(zero, params, 1e-3);
    below(r, "euler_equilibrium", std::max(max_abs(z1.c), max_abs(z1.v)), 1e-300);

    EulerState s = well_prepared(single_mode(g, 2, 1e-2), params);
    const double m0 = density(s, params).mean();
    for (int k = 0; k < 100; ++k) s = step(s, params, 1e-3);
    below(r, "euler_mass_drift", relative(density(s, params).mean(), m0), 1e-8);

    const EulerState lin = well_prepared(single_mode(g, 3, 1e-8), params);
    const EulerState one = step(lin, params, 1e-3);
    const LinearState ref = linear_propagate(lin.c, lin.v, params.eps, 1e-3, Scaling::diffusive, params.kappa());
    below(r, "euler_linear_consistency", lp_norm(one.c - ref.c, 2.0) / lp_norm(ref.c, 2.0), 1e-6);

    const PressureLaw law = params.law();
    PMEState n{GridField::constant(g, 1.0) + single_mode(g, 2, 1e-2), 0.0};
    const double n0 = n.N.mean();
    for (int k = 0; k < 100; ++k) n = pme_step(n, law, 1e-3);
    below(r, "pme_mass_drift", relative(n.N.mean(), n0), 1e-10);

    if (std::abs(law.gamma - 2.0) < 1e-15 && std::abs(law.A - 0.5) < 1e-15) {
        const PMEState q{GridField::constant(g, 1.0) + random_band_limited(g, 0.0, 20.0, cfg.data.seed, 0.1), 0.0};
        const VecField V = darcy_velocity(q, law);
        const VecField ref_v = -1.0 * gradient(q.N);
        below(r, "darcy_oracle", lp_norm(V - ref_v, infinity) / lp_norm(ref_v, infinity), 1e-10);
    }
}

}  // namespace

VerifyReport run_verify(const std::string& suite, const ExperimentConfig& config) {
    VerifyReport r;
    r.suite = suite;
    if (suite == "lp") {
        suite_lp(r, config);
    } else if (suite == "bony") {
        suite_bony(r, config);
    } else if (suite == "spectral") {
        suite_spectral(r, config);
    } else if (suite == "solvers") {
        suite_solvers(r, config);
    } else {
        throw Error("unknown verify suite '" + suite + "' (expected lp, bony, spectral or solvers)");
    }
    return r;
}

}  // namespace hybesov
