#include "hybesov/euler.hpp"

#include <cmath>
#include <string>

#include "hybesov/functionals.hpp"
#include "hybesov/kernels.hpp"

namespace hybesov {

double PressureLaw::pressure(double rho) const { return A * std::pow(rho, gamma); }

double PressureLaw::dpressure(double rho) const { return A * gamma * std::pow(rho, gamma - 1.0); }

double EulerParams::c_bar() const { return std::sqrt(4.0 * gamma * A) / (gamma - 1.0); }

void EulerParams::validate() const {
    if (!(gamma > 1.0)) throw Error("gamma must exceed 1");
    if (!(A > 0.0)) throw Error("pressure constant A must be positive");
    if (!(eps > 0.0)) throw Error("eps must be positive");
}

namespace {

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

EulerState to_sound_vars(const GridField& rho, const VecField& u, const EulerParams& params) {
    params.validate();
    const Grid& g = rho.grid();
    require_same_grid(g, u.grid());
    if (u.dim() != g.d) throw Error("velocity dimension does not match the grid");
    if (!(min_value(rho) > 0.0)) throw Error("density must be positive");
    const double gc = params.gamma_check();
    const double scale = std::sqrt(params.gamma * params.A) / gc;
    const double cb = params.c_bar();
    std::vector<double> c(g.size());
    const auto r = rho.samples();
    kernels::for_range(c.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) c[i] = scale * std::pow(r[i], gc) - cb;
    });
    EulerState s;
    s.c = dealiased_from_samples(g, std::move(c));
    s.v = dealias((1.0 / params.eps) * u);
    return s;
}

GridField density(const EulerState& s, const EulerParams& params) {
    const double gc = params.gamma_check();
    const double cb = params.c_bar();
    const auto c = s.c.samples();
    std::vector<double> rho(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double base = (c[i] + cb) / cb;
        if (!(base > 0.0)) throw VacuumError("vacuum: c + c_bar <= 0");
        rho[i] = std::pow(base, 1.0 / gc);
    }
    return GridField::from_samples(s.grid(), std::move(rho));
}

VecField momentum_velocity(const EulerState& s, const EulerParams& params) { return params.eps * s.v; }

namespace {

// offset = c̄ gives the full rates, offset = 0 the nonlinear remainder.
EulerRates rates(const EulerState& s, const EulerParams& params, double offset) {
    const Grid& g = s.grid();
    const int d = g.d;
    const std::size_t N = g.size();
    const double gc = params.gamma_check();
    const double inv2 = 1.0 / (params.eps * params.eps);
    if (!(min_value(s.c) + params.c_bar() > 0.0)) throw VacuumError("vacuum: c + c_bar <= 0");

    const GridField c = dealias(s.c);
    const VecField v = dealias(s.v);
    const VecField grad_c = gradient(c);
    const GridField div_v = divergence(v);
    std::vector<VecField> grad_v;
    for (int a = 0; a < d; ++a) grad_v.push_back(gradient(v[a]));

    std::vector<double> dc(N);
    std::vector<std::vector<double>> dv(d, std::vector<double>(N));
    const auto cs = c.samples();
    const auto divs = div_v.samples();
    kernels::for_range(N, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double cc = cs[i] + offset;
            double adv_c = 0.0;
            for (int b = 0; b < d; ++b) adv_c += v[b].samples()[i] * grad_c[b].samples()[i];
            dc[i] = -adv_c - gc * cc * divs[i];
            for (int a = 0; a < d; ++a) {
                double adv = 0.0;
                for (int b = 0; b < d; ++b) adv += v[b].samples()[i] * grad_v[a][b].samples()[i];
                dv[a][i] = -adv - gc * cc * grad_c[a].samples()[i] * inv2;
            }
        }
    });
    EulerRates out;
    out.dc = dealiased_from_samples(g, std::move(dc));
    std::vector<GridField> comps;
    for (int a = 0; a < d; ++a) comps.push_back(dealiased_from_samples(g, std::move(dv[a])));
    out.dv = VecField(std::move(comps));
    return out;
}

EulerState advance(const EulerState& s, const EulerRates& k, double h) {
    EulerState out;
    out.c = s.c + h * k.dc;
    out.v = s.v + h * k.dv;
    out.t = s.t;
    return out;
}

}  // namespace

EulerRates rhs(const EulerState& s, const EulerParams& params) { return rates(s, params, params.c_bar()); }

EulerRates nonlinear_rhs(const EulerState& s, const EulerParams& params) { return rates(s, params, 0.0); }

void check_step_size(const EulerState& s, const EulerParams& params, double dt) {
    if (!(dt > 0.0)) throw StepSizeError("time step must be positive");
    const double xi = s.grid().max_dealiased_wavenumber();
    const double adv = dt * max_abs(s.v) * xi;
    const double sound = dt * (params.c_bar() + max_abs(s.c)) * xi * params.gamma_check();
    if (adv > 0.5 || sound > 0.5) {
        throw StepSizeError("step size violates the CFL bound (advective " + std::to_string(adv) + ", acoustic " +
                            std::to_string(sound) + ")");
    }
}

void check_vacuum(const EulerState& s, const EulerParams& params) {
    const double cb = params.c_bar();
    if (min_value(s.c) + cb < 0.1 * cb) throw VacuumError("vacuum guard: min(c + c_bar) < c_bar/10");
}

EulerState step(const EulerState& s, const EulerParams& params, double dt) {
    params.validate();
    check_vacuum(s, params);
    check_step_size(s, params, dt);
    const double kappa = params.kappa();

    const LinearState half = linear_propagate(s.c, s.v, params.eps, 0.5 * dt, Scaling::diffusive, kappa);
    EulerState u{half.c, half.v, s.t};

    const EulerRates k1 = nonlinear_rhs(u, params);
    const EulerRates k2 = nonlinear_rhs(advance(u, k1, 0.5 * dt), params);
    const EulerRates k3 = nonlinear_rhs(advance(u, k2, 0.5 * dt), params);
    const EulerRates k4 = nonlinear_rhs(advance(u, k3, dt), params);
    u.c = u.c + (dt / 6.0) * (k1.dc + 2.0 * k2.dc + 2.0 * k3.dc + k4.dc);
    u.v = u.v + (dt / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);

    const LinearState end = linear_propagate(u.c, u.v, params.eps, 0.5 * dt, Scaling::diffusive, kappa);
    EulerState out{end.c, end.v, s.t + dt};
    check_vacuum(out, params);
    return out;
}

VecField damped_mode(const EulerState& s, const EulerParams& params, bool scaled) {
    const Grid& g = s.grid();
    const VecField grad_c = gradient(s.c);
    const double gc = params.gamma_check();
    const double cb = params.c_bar();
    const auto cs = s.c.samples();
    std::vector<GridField> comps;
    for (int a = 0; a < g.d; ++a) {
        std::vector<double> w = to_vector(s.v[a].samples());
        const auto gs = grad_c[a].samples();
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += gc * (cs[i] + cb) * gs[i];
        comps.push_back(dealiased_from_samples(g, std::move(w)));
    }
    VecField out(std::move(comps));
    if (scaled) out *= params.eps;
    return out;
}

EulerState well_prepared(const GridField& c0, const EulerParams& params) {
    const Grid& g = c0.grid();
    const GridField c = dealias(c0);
    const VecField grad_c = gradient(c);
    const double gc = params.gamma_check();
    const double cb = params.c_bar();
    const auto cs = c.samples();
    std::vector<GridField> comps;
    for (int a = 0; a < g.d; ++a) {
        const auto gs = grad_c[a].samples();
        std::vector<double> v(g.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = -gc * (cs[i] + cb) * gs[i];
        comps.push_back(dealiased_from_samples(g, std::move(v)));
    }
    EulerState s;
    s.c = c;
    s.v = VecField(std::move(comps));
    return s;
}

SmallnessVerdict smallness_gate(const EulerState& s0, const EulerParams& params, const FrequencyPartition& part,
                                const AdmissibleSequence& seq, double eta) {
    SmallnessVerdict out;
    out.X0 = accumulate_X0(s0, params, part, seq);
    out.eta = eta;
    out.pass = out.X0 <= eta;
    return out;
}

namespace {

double inner(const GridField& a, const GridField& b) {
    const auto x = a.samples();
    const auto y = b.samples();
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s * a.grid().cell_volume();
}

}  // namespace

double lyapunov_reference(const EulerState& s, double eps, int j) {
    const GridField cj = dyadic_block(s.c, j);
    double out = inner(cj, cj);
    for (int a = 0; a < s.v.dim(); ++a) {
        const GridField vj = dyadic_block(s.v[a], j);
        out += eps * eps * inner(vj, vj);
    }
    return out;
}

double lyapunov(const EulerState& s, double eps, int j, double eta) {
    const GridField cj = dyadic_block(s.c, j);
    const VecField grad = gradient(cj);
    double cross = 0.0;
    for (int a = 0; a < s.v.dim(); ++a) cross += inner(grad[a], dyadic_block(s.v[a], j));
    return lyapunov_reference(s, eps, j) + eta * std::ldexp(1.0, -2 * j) * cross;
}

}  // namespace hybesov
