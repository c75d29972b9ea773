#include "hybesov/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hybesov/data.hpp"
#include "hybesov/functionals.hpp"
#include "hybesov/io.hpp"
#include "hybesov/regression.hpp"
#include "hybesov/spectral.hpp"
#include "hybesov/svg.hpp"
#include "hybesov/sweep.hpp"
#include "hybesov/verify.hpp"

namespace hybesov {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

fs::path prepare_dir(const ExperimentConfig& c) {
    fs::create_directories(c.dir);
    return c.dir;
}

void emit(const ExperimentConfig& c, const std::string& name, const json& j, std::ostream& out) {
    const std::string text = j.dump(2);
    if (c.wants("json")) {
        std::ofstream f(prepare_dir(c) / (name + ".json"));
        f << text << "\n";
    }
    out << text << "\n";
}

json fit_json(const std::optional<LinearFit>& f) {
    if (!f) return nullptr;
    return {{"slope", f->slope}, {"intercept", f->intercept}, {"r2", f->r2}, {"points", f->points}};
}

std::string tag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double run_horizon(const ExperimentConfig& c, const GridField& c0, const EulerParams& params) {
    if (c.T > 0.0) return c.T;
    return decay_horizon(c0, params, c.decay_tol, c.T_max);
}

int run_steps(const ExperimentConfig& c, double T) {
    if (c.dt > 0.0) return std::max(1, static_cast<int>(std::ceil(T / c.dt - 1e-9)));
    return c.steps;
}

}  // namespace

int cmd_verify(const ExperimentConfig& config, const std::string& suite, std::ostream& out) {
    std::vector<std::string> suites;
    if (suite == "all") {
        suites = verify_suites();
    } else {
        suites.push_back(suite);
    }
    bool ok = true;
    json all = json::array();
    for (const auto& s : suites) {
        const VerifyReport r = run_verify(s, config);
        ok = ok && r.passed();
        all.push_back(json::parse(r.to_json()));
    }
    emit(config, "verify_" + suite, suites.size() == 1 ? all[0] : all, out);
    return ok ? 0 : 1;
}

int cmd_decompose(const ExperimentConfig& config, const std::optional<fs::path>& field, std::ostream& out) {
    const GridField f = field ? io::read_field(*field) : initial_state(config.grid, config.data, config.params()).c;
    const Grid& g = f.grid();
    const AdmissibleSequence seq = config.sequence();
    const FrequencyPartition part = config.partition();
    const DyadicDecomposition dec(f);
    const ShellRange range = dec.shells();
    const double s = g.d / config.p;

    if (config.wants("csv")) {
        io::CsvWriter csv(prepare_dir(config) / "decompose.csv");
        csv.header({"j", "regime", "two_pow_j", "norm_L2", "norm_Lp_regime", "p_regime"});
        for (int j = range.jmin; j <= range.jmax; ++j) {
            const int piece = part.piece(j);
            const std::string name = piece == 0 ? "low" : piece > part.R() ? "high" : "medium" + std::to_string(piece);
            const double q = seq.exponent(piece);
            csv.row({std::to_string(j), name, io::format_number(std::ldexp(1.0, j)),
                     io::format_number(dec.shell_norm(j, 2.0)), io::format_number(dec.shell_norm(j, q)),
                     io::format_number(q)});
        }
    }
    if (config.wants("bin")) io::write_field(prepare_dir(config) / "decompose_field.bin", f);

    json j;
    j["grid"] = {{"d", g.d}, {"n", g.n}, {"L", g.L}};
    j["J"] = part.J();
    j["R"] = part.R();
    j["shells"] = {{"jmin", range.jmin}, {"jmax", range.jmax}};
    json norms;
    norms["low"] = dec.semi_norm(part, Regime::low(), s, seq.exponent(0));
    for (int i = 1; i <= part.R(); ++i) {
        norms["medium" + std::to_string(i)] = dec.semi_norm(part, Regime::medium(i), g.d / seq.exponent(i), seq.exponent(i));
    }
    norms["high"] = dec.semi_norm(part, Regime::high(), 0.5 * g.d + 1.0, 2.0);
    norms["full_Bdp"] = besov_norm(f, s, config.p);
    j["semi_norms"] = norms;
    emit(config, "decompose", j, out);
    return 0;
}

int cmd_spectrum(const ExperimentConfig& config, std::ostream& out) {
    const double eps = config.eps;
    const EulerParams params = config.params();
    std::vector<double> xi;
    for (int k = 0; k <= 200; ++k) xi.push_back(std::pow(10.0, -2.0 + 4.0 * k / 200.0) / eps);
    std::vector<double> rp, rm, ip, im;
    for (double x : xi) {
        const EigenPair ev = eigenvalues(eps, x, Scaling::relax, params.kappa());
        rp.push_back(ev.lambda_plus.real());
        rm.push_back(ev.lambda_minus.real());
        ip.push_back(ev.lambda_plus.imag());
        im.push_back(ev.lambda_minus.imag());
    }
    if (config.wants("csv")) {
        io::CsvWriter csv(prepare_dir(config) / "spectrum.csv");
        csv.header({"xi", "re_lambda_plus", "im_lambda_plus", "re_lambda_minus", "im_lambda_minus"});
        for (std::size_t i = 0; i < xi.size(); ++i) csv.row(std::vector<double>{xi[i], rp[i], ip[i], rm[i], im[i]});
    }
    if (config.wants("svg")) {
        svg::Plot plot;
        plot.title = "Eigenvalues of the linearized symbol, eps = " + tag(eps);
        plot.xlabel = "|xi|";
        plot.ylabel = "rate";
        plot.logx = plot.logy = true;
        plot.series.push_back({"Re lambda+", xi, rp, false, std::nullopt});
        plot.series.push_back({"Re lambda-", xi, rm, false, std::nullopt});
        std::vector<double> xi_c, im_c;
        for (std::size_t i = 0; i < xi.size(); ++i) {
            if (ip[i] > 0.0) {
                xi_c.push_back(xi[i]);
                im_c.push_back(ip[i]);
            }
        }
        plot.series.push_back({"Im lambda+", xi_c, im_c, false, std::nullopt});
        svg::write(prepare_dir(config) / "spectrum.svg", plot);
    }
    json j;
    j["eps"] = eps;
    j["kappa"] = params.kappa();
    j["critical_xi"] = 1.0 / (2.0 * eps * params.kappa());
    const auto rows = asymptotics_report(eps, {1.0, 10.0 / eps});
    j["low_ratio_at_xi1"] = rows[0].low_ratio;
    j["re_plus_scaled_at_eps_xi_10"] = rows[1].re_plus_scaled;
    j["re_minus_scaled_at_eps_xi_10"] = rows[1].re_minus_scaled;
    emit(config, "spectrum", j, out);
    return 0;
}

int cmd_simulate(const ExperimentConfig& config, std::ostream& out) {
    const EulerParams params = config.params();
    const Grid& g = config.grid;
    const AdmissibleSequence seq = config.sequence();
    const FrequencyPartition part = config.partition();
    EulerState s = initial_state(g, config.data, params);
    const double T = run_horizon(config, s.c, params);
    const int steps = run_steps(config, T);
    const double dt = T / steps;
    const double sdp = g.d / config.p;
    const fs::path dir = prepare_dir(config);

    const SmallnessVerdict gate = smallness_gate(s, params, part, seq, config.eta);
    std::optional<io::CsvWriter> csv;
    if (config.wants("csv")) {
        csv.emplace(dir / "simulate.csv");
        std::vector<std::string> cols{"t", "c_low"};
        for (int i = 1; i <= part.R(); ++i) cols.push_back("c_m" + std::to_string(i));
        cols.insert(cols.end(), {"c_high", "v_low"});
        for (int i = 1; i <= part.R(); ++i) cols.push_back("v_m" + std::to_string(i));
        cols.insert(cols.end(), {"v_high", "W_Bdp", "epsW_Bdp", "mass"});
        csv->header(cols);
    }
    auto write_row = [&](const EulerState& st) {
        if (!csv) return;
        const DyadicDecomposition dc(st.c), dv(st.v);
        std::vector<double> row{st.t};
        for (const auto* dec : {&dc, &dv}) {
            row.push_back(dec->semi_norm(part, Regime::low(), sdp, seq.exponent(0)));
            for (int i = 1; i <= part.R(); ++i) {
                row.push_back(dec->semi_norm(part, Regime::medium(i), g.d / seq.exponent(i), seq.exponent(i)));
            }
            row.push_back(dec->semi_norm(part, Regime::high(), 0.5 * g.d + 1.0, 2.0));
        }
        const double w = besov_norm(damped_mode(st, params), sdp, config.p);
        row.push_back(w);
        row.push_back(params.eps * w);
        row.push_back(density(st, params).mean());
        csv->row(row);
    };
    int snap = 0;
    auto snapshot = [&](const EulerState& st) {
        if (!config.wants("bin")) return;
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_%04d_c.bin", snap);
        io::write_field(dir / name, st.c);
        for (int a = 0; a < g.d; ++a) {
            std::snprintf(name, sizeof name, "snapshot_%04d_v%d.bin", snap, a);
            io::write_field(dir / name, st.v[a]);
        }
        ++snap;
    };

    SolutionTrace trace;
    trace.push(s);
    write_row(s);
    snapshot(s);
    std::string error;
    for (int k = 1; k <= steps; ++k) {
        try {
            s = step(s, params, dt);
        } catch (const Error& e) {
            error = e.what();
            break;
        }
        write_row(s);
        if (k % config.record_every == 0 || k == steps) trace.push(s);
        if ((config.snapshot_every > 0 && k % config.snapshot_every == 0) || k == steps) snapshot(s);
    }

    json j;
    j["eps"] = params.eps;
    j["family"] = config.data.family;
    j["T"] = T;
    j["dt"] = dt;
    j["steps"] = steps;
    j["t_final"] = s.t;
    j["completed"] = error.empty();
    if (!error.empty()) j["error"] = error;
    j["smallness_gate"] = {{"X0", gate.X0}, {"eta", gate.eta}, {"pass", gate.pass}};
    const HybridFunctional X = accumulate_X(trace, params, part, seq);
    json items;
    for (const auto& [name, v] : X.items) items[name] = v;
    j["X"] = {{"low", X.X_low}, {"medium", X.X_med}, {"high", X.X_high}, {"total", X.X_total}, {"items", items}};
    emit(config, "simulate", j, out);
    return error.empty() ? 0 : 2;
}

int cmd_simulate_pme(const ExperimentConfig& config, std::ostream& out) {
    const EulerParams params = config.params();
    const Grid& g = config.grid;
    const EulerState e0 = initial_state(g, config.data, params);
    PMEState s{density(e0, params), 0.0};
    const double T = run_horizon(config, e0.c, params);
    const int steps = run_steps(config, T);
    const double dt = T / steps;
    const double sdp = g.d / config.p;
    const fs::path dir = prepare_dir(config);

    std::optional<io::CsvWriter> csv;
    if (config.wants("csv")) {
        csv.emplace(dir / "simulate_pme.csv");
        csv->header({"t", "N_Bdp", "N_Bdp2", "mass", "darcy_Linf"});
    }
    auto write_row = [&](const PMEState& st) {
        if (!csv) return;
        csv->row(std::vector<double>{st.t, besov_norm(st.N, sdp, config.p), besov_norm(st.N, sdp + 2.0, config.p),
                                     st.N.mean(), lp_norm(darcy_velocity(st, params.law()), infinity)});
    };
    auto snapshot = [&](const PMEState& st, int index) {
        if (!config.wants("bin")) return;
        char name[64];
        std::snprintf(name, sizeof name, "pme_snapshot_%04d_N.bin", index);
        io::write_field(dir / name, st.N);
    };
    std::vector<PMEState> trace{s};
    write_row(s);
    snapshot(s, 0);
    int snap = 1;
    std::string error;
    for (int k = 1; k <= steps; ++k) {
        try {
            s = pme_step(s, params.law(), dt);
        } catch (const Error& e) {
            error = e.what();
            break;
        }
        write_row(s);
        if (k % config.record_every == 0 || k == steps) trace.push_back(s);
        if ((config.snapshot_every > 0 && k % config.snapshot_every == 0) || k == steps) snapshot(s, snap++);
    }
    json j;
    j["T"] = T;
    j["dt"] = dt;
    j["steps"] = steps;
    j["t_final"] = s.t;
    j["completed"] = error.empty();
    if (!error.empty()) j["error"] = error;
    j["mu"] = pme_mu(trace.front(), params.law());
    j["Y"] = pme_functional_Y(trace, config.p);
    j["mass_initial"] = trace.front().N.mean();
    j["mass_final"] = s.N.mean();
    emit(config, "simulate_pme", j, out);
    return error.empty() ? 0 : 2;
}

namespace {

json sweep_table(const std::vector<SweepPoint>& pts) {
    json arr = json::array();
    for (const auto& p : pts) {
        json row{{"eps", p.eps}, {"ok", p.ok}};
        if (!p.ok) {
            row["error"] = p.error;
        } else {
            row["T"] = p.T;
            row["dt"] = p.dt;
            row["xi0"] = p.xi0;
            row["tail_ratio"] = p.tail_ratio;
            row["W_Lr"] = p.W_Lr;
            row["sup_err"] = p.sup_err;
            row["mixed_err"] = p.mixed_err;
        }
        arr.push_back(row);
    }
    return arr;
}

svg::Series series_of(const std::string& label, const std::vector<SweepPoint>& pts,
                      const std::function<double(const SweepPoint&)>& get, const std::optional<LinearFit>& fit) {
    svg::Series s;
    s.label = label;
    for (const auto& p : pts) {
        if (!p.ok) continue;
        s.x.push_back(p.eps);
        s.y.push_back(get(p));
    }
    s.fit = fit;
    return s;
}

}  // namespace

int cmd_relax_limit(const ExperimentConfig& config, std::ostream& out) {
    SweepSetup setup = config.sweep_setup();
    setup.with_pme = true;
    setup.rs = {1.0};
    const auto pts = run_sweep(setup);
    const SweepFits fits = fit_sweep(setup, pts);
    const fs::path dir = prepare_dir(config);

    if (config.wants("csv")) {
        io::CsvWriter csv(dir / "relax_limit.csv");
        std::vector<std::string> cols{"eps", "ok", "T", "dt", "xi0", "tail_ratio"};
        for (double d : setup.deltas) {
            cols.push_back("sup_err_delta" + tag(d));
            cols.push_back("mixed_err_delta" + tag(d));
        }
        cols.push_back("error");
        csv.header(cols);
        for (const auto& p : pts) {
            std::vector<std::string> row{io::format_number(p.eps), p.ok ? "1" : "0", io::format_number(p.T),
                                         io::format_number(p.dt), io::format_number(p.xi0),
                                         io::format_number(p.tail_ratio)};
            for (std::size_t k = 0; k < setup.deltas.size(); ++k) {
                row.push_back(p.ok ? io::format_number(p.sup_err[k]) : "");
                row.push_back(p.ok ? io::format_number(p.mixed_err[k]) : "");
            }
            row.push_back(p.error);
            csv.row(row);
        }
    }
    if (config.wants("svg")) {
        svg::Plot plot;
        plot.title = "Relaxation error against eps";
        plot.xlabel = "eps";
        plot.ylabel = "sup_t |rho - N| in B^{d/p - delta}";
        plot.logx = plot.logy = true;
        for (std::size_t k = 0; k < setup.deltas.size(); ++k) {
            plot.series.push_back(series_of("delta = " + tag(setup.deltas[k]), pts,
                                            [k](const SweepPoint& p) { return p.sup_err[k]; }, fits.sup[k]));
        }
        svg::write(dir / "relax_limit.svg", plot);
    }
    json j;
    j["points"] = sweep_table(pts);
    json fj = json::array();
    for (std::size_t k = 0; k < setup.deltas.size(); ++k) {
        fj.push_back({{"delta", setup.deltas[k]},
                      {"target", setup.deltas[k]},
                      {"sup_err", fit_json(fits.sup[k])},
                      {"mixed_err", fit_json(fits.mixed[k])}});
    }
    j["fits"] = fj;
    if (!fits.note.empty()) j["fit_note"] = fits.note;
    emit(config, "relax_limit", j, out);
    return 0;
}

int cmd_damped_mode(const ExperimentConfig& config, std::ostream& out) {
    SweepSetup setup = config.sweep_setup();
    setup.with_pme = false;
    const auto pts = run_sweep(setup);
    const SweepFits fits = fit_sweep(setup, pts);
    const fs::path dir = prepare_dir(config);

    if (config.wants("csv")) {
        io::CsvWriter csv(dir / "damped_mode.csv");
        std::vector<std::string> cols{"eps", "ok", "T", "dt", "xi0", "tail_ratio"};
        for (double r : setup.rs) cols.push_back("W_L" + tag(r));
        cols.push_back("error");
        csv.header(cols);
        for (const auto& p : pts) {
            std::vector<std::string> row{io::format_number(p.eps), p.ok ? "1" : "0", io::format_number(p.T),
                                         io::format_number(p.dt), io::format_number(p.xi0),
                                         io::format_number(p.tail_ratio)};
            for (std::size_t k = 0; k < setup.rs.size(); ++k) row.push_back(p.ok ? io::format_number(p.W_Lr[k]) : "");
            row.push_back(p.error);
            csv.row(row);
        }
    }
    if (config.wants("svg")) {
        svg::Plot plot;
        plot.title = "Damped mode against eps";
        plot.xlabel = "eps";
        plot.ylabel = "|W| in L^r_T(B^{d/p})";
        plot.logx = plot.logy = true;
        for (std::size_t k = 0; k < setup.rs.size(); ++k) {
            plot.series.push_back(series_of("r = " + tag(setup.rs[k]), pts,
                                            [k](const SweepPoint& p) { return p.W_Lr[k]; }, fits.W[k]));
        }
        svg::write(dir / "damped_mode.svg", plot);
    }
    json j;
    j["points"] = sweep_table(pts);
    json fj = json::array();
    for (std::size_t k = 0; k < setup.rs.size(); ++k) {
        const double r = setup.rs[k];
        json e{{"r", r}, {"target_2_over_r_minus_1", 2.0 / r - 1.0}, {"target_linear", 1.0}, {"fit", fit_json(fits.W[k])}};
        if (fits.W[k]) {
            // within the regression band of 0.25 around a target
            const double slope = fits.W[k]->slope;
            const bool near_rate = std::abs(slope - (2.0 / r - 1.0)) <= 0.25;
            const bool near_linear = std::abs(slope - 1.0) <= 0.25;
            e["observed"] = near_rate && near_linear ? "both" : near_rate ? "2/r-1" : near_linear ? "linear" : "neither";
        }
        fj.push_back(e);
    }
    j["fits"] = fj;
    if (!fits.note.empty()) j["fit_note"] = fits.note;
    emit(config, "damped_mode", j, out);
    return 0;
}

int cmd_sequence(const ExperimentConfig& config, std::ostream& out) {
    auto verdict_json = [](const AdmissibleSequence& seq, const SequenceVerdict& v) {
        return json{{"p", seq.p}, {"d", seq.d}, {"ps", seq.ps}, {"R", seq.R()}, {"valid", v.valid},
                    {"violated", v.violated}, {"lhs", v.lhs}, {"bound", v.bound}, {"checks", v.checks}};
    };
    const AdmissibleSequence configured = config.sequence();
    json j;
    j["configured"] = verdict_json(configured, validate_sequence(configured));
    try {
        const AdmissibleSequence ex = example_sequence(config.p, config.grid.d);
        j["explicit_family"] = verdict_json(ex, validate_sequence(ex));
    } catch (const SequenceError& e) {
        j["explicit_family"] = {{"error", e.what()}};
    }
    emit(config, "sequence", j, out);
    return 0;
}

int cmd_frequency_map(const ExperimentConfig& config, std::ostream& out) {
    const FrequencyPartition part = config.partition();
    const svg::FrequencyMap map = svg::frequency_map_layout(part, config.sequence());
    if (config.wants("svg")) {
        std::ofstream f(prepare_dir(config) / "frequency_map.svg");
        f << svg::render_frequency_map(map, part);
    }
    json zones = json::array();
    for (const auto& z : map.zones) zones.push_back({{"name", z.name}, {"space", z.space}});
    json j{{"eps", part.eps()}, {"J", part.J()}, {"N0", part.N0()}, {"boundaries", map.boundaries}, {"zones", zones}};
    emit(config, "frequency_map", j, out);
    return 0;
}

}  // namespace hybesov
