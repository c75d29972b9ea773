#include "hybesov/pme.hpp"

#include <cmath>
#include <string>

#include "hybesov/functionals.hpp"
#include "hybesov/kernels.hpp"

namespace hybesov {

namespace {

void require_positive(const GridField& N) {
    if (!(min_value(N) > 0.0)) throw Error("porous medium density lost positivity");
}

// Δ(P(N) − μN)
GridField remainder_rate(const GridField& N, const PressureLaw& law, double mu) {
    require_positive(N);
    const auto x = N.samples();
    std::vector<double> q(x.size());
    kernels::for_range(q.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) q[i] = law.pressure(x[i]) - mu * x[i];
    });
    return laplacian(dealiased_from_samples(N.grid(), std::move(q)));
}

}  // namespace

double pme_mu(const PMEState& s, const PressureLaw& law) { return law.dpressure(s.N.mean()); }

GridField pme_rate(const PMEState& s, const PressureLaw& law) {
    require_positive(s.N);
    const auto x = s.N.samples();
    std::vector<double> q(x.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = law.pressure(x[i]);
    return laplacian(dealiased_from_samples(s.grid(), std::move(q)));
}

PMEState pme_step(const PMEState& s, const PressureLaw& law, double dt) {
    if (!(dt > 0.0)) throw StepSizeError("time step must be positive");
    require_positive(s.N);
    const double mu = pme_mu(s, law);
    const auto x = s.N.samples();
    double spread = 0.0;
    for (double n : x) spread = std::max(spread, std::abs(law.dpressure(n) - mu));
    const double xi = s.grid().max_dealiased_wavenumber();
    const double stab = dt * spread * xi * xi;
    if (stab > 0.5) throw StepSizeError("step size violates the explicit stability bound (" + std::to_string(stab) + ")");

    GridField u = heat(dealias(s.N), 0.5 * mu * dt);
    const GridField k1 = remainder_rate(u, law, mu);
    const GridField k2 = remainder_rate(u + (0.5 * dt) * k1, law, mu);
    const GridField k3 = remainder_rate(u + (0.5 * dt) * k2, law, mu);
    const GridField k4 = remainder_rate(u + dt * k3, law, mu);
    u = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    PMEState out{heat(u, 0.5 * mu * dt), s.t + dt};
    require_positive(out.N);
    return out;
}

VecField darcy_velocity(const PMEState& s, const PressureLaw& law) {
    require_positive(s.N);
    const Grid& g = s.grid();
    const auto x = s.N.samples();
    std::vector<double> q(x.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = law.pressure(x[i]);
    const VecField grad_p = gradient(GridField::from_samples(g, std::move(q)));
    std::vector<GridField> comps;
    for (int a = 0; a < g.d; ++a) {
        const auto gp = grad_p[a].samples();
        std::vector<double> v(x.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = -gp[i] / x[i];
        comps.push_back(dealiased_from_samples(g, std::move(v)));
    }
    return VecField(std::move(comps));
}

double pme_functional_Y(const std::vector<PMEState>& trace, double p) {
    if (trace.empty()) throw Error("empty trace");
    const int d = trace.front().grid().d;
    std::vector<double> t, sup, integrand;
    for (const auto& s : trace) {
        const DyadicDecomposition dec(s.N);
        const ShellRange r = dec.shells();
        t.push_back(s.t);
        sup.push_back(dec.weighted_sum(r.jmin, r.jmax, d / p, p));
        integrand.push_back(dec.weighted_sum(r.jmin, r.jmax, d / p + 2.0, p));
    }
    return time_sup(sup) + time_lq(t, integrand, 1.0);
}

}  // namespace hybesov
