#include "hybesov/sweep.hpp"

#include <cmath>

namespace hybesov {

double perturbation_for(const SweepSetup& setup, std::size_t k) {
    if (setup.perturbations.empty()) return 0.0;
    if (setup.perturbations.size() == 1) return setup.perturbations.front();
    if (setup.perturbations.size() != setup.deltas.size()) throw Error("one perturbation per delta is required");
    return setup.perturbations[k];
}

SweepPoint run_sweep_point(const SweepSetup& setup, double eps) {
    SweepPoint out;
    out.eps = eps;
    try {
        if (setup.steps < 1 || setup.record_every < 1) throw Error("steps and record_every must be positive");
        const Grid& g = setup.grid;
        const EulerParams params{setup.gamma, setup.A, eps};
        params.validate();
        const double p = setup.data.p;
        const double s = g.d / p;

        const GridField c0 = sweep_c0(g, setup.data, eps);
        out.xi0 = data_wavenumber(g, setup.data, eps);
        EulerState state = well_prepared(c0, params);
        out.T = setup.T > 0.0 ? setup.T : decay_horizon(c0, params, setup.decay_tol, setup.T_max);
        out.dt = out.T / setup.steps;

        std::vector<PMEState> pme;
        std::vector<std::vector<PMEState>> pme_traces;
        if (setup.with_pme) {
            const GridField rho0 = density(state, params);
            for (std::size_t k = 0; k < setup.deltas.size(); ++k) {
                const double delta = setup.deltas[k];
                const double size = perturbation_for(setup, k) * setup.data.amplitude * std::pow(eps, delta);
                pme.push_back(perturbed_pme_datum(rho0, out.xi0, delta, p, size));
            }
            pme_traces.resize(pme.size());
        }

        SolutionTrace trace;
        auto record = [&]() {
            trace.push(state);
            for (std::size_t k = 0; k < pme.size(); ++k) pme_traces[k].push_back(pme[k]);
        };
        record();
        for (int k = 1; k <= setup.steps; ++k) {
            state = step(state, params, out.dt);
            for (auto& m : pme) m = pme_step(m, params.law(), out.dt);
            if (k % setup.record_every == 0 || k == setup.steps) record();
        }

        const double n0 = besov_norm(c0, s, p);
        out.tail_ratio = n0 > 0.0 ? besov_norm(state.c, s, p) / n0 : 0.0;
        for (double r : setup.rs) out.W_Lr.push_back(damped_mode_norm(trace, params, r, p));
        for (std::size_t k = 0; k < pme_traces.size(); ++k) {
            const RelaxationErrors e = relaxation_errors(trace, pme_traces[k], params, setup.deltas[k], 1.0, p);
            out.sup_err.push_back(e.sup_err);
            out.mixed_err.push_back(e.mixed_err);
        }
        out.ok = true;
    } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
    }
    return out;
}

std::vector<SweepPoint> run_sweep(const SweepSetup& setup) {
    const int n = static_cast<int>(setup.eps.size());
    std::vector<SweepPoint> points(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) points[i] = run_sweep_point(setup, setup.eps[i]);
    return points;
}

SweepFits fit_sweep(const SweepSetup& setup, const std::vector<SweepPoint>& points) {
    SweepFits fits;
    auto fit = [&](auto getter) -> std::optional<LinearFit> {
        std::vector<double> x, y;
        for (const auto& pt : points) {
            if (!pt.ok) continue;
            x.push_back(pt.eps);
            y.push_back(getter(pt));
        }
        try {
            return loglog_fit(x, y);
        } catch (const RegressionError& e) {
            fits.note = e.what();
            return std::nullopt;
        }
    };
    for (std::size_t k = 0; k < setup.rs.size(); ++k) {
        fits.W.push_back(fit([&](const SweepPoint& pt) { return pt.W_Lr[k]; }));
    }
    if (setup.with_pme) {
        for (std::size_t k = 0; k < setup.deltas.size(); ++k) {
            fits.sup.push_back(fit([&](const SweepPoint& pt) { return pt.sup_err[k]; }));
            fits.mixed.push_back(fit([&](const SweepPoint& pt) { return pt.mixed_err[k]; }));
        }
    }
    return fits;
}

}  // namespace hybesov
