#include "hybesov/data.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hybesov/lp.hpp"

namespace hybesov {

int nearest_mode(const Grid& g, double xi) {
    const int k = static_cast<int>(std::lround(xi / g.min_wavenumber()));
    const int kmax = g.dealias_kmax();
    if (k > kmax) throw Error("requested wavenumber " + std::to_string(xi) + " is not resolved on the grid");
    return std::max(k, 1);
}

GridField single_mode(const Grid& g, int k, double amplitude, bool sine) {
    const double xi = g.wavenumber(k);
    return GridField::from_function(g, [&](double x, double) {
        return amplitude * (sine ? std::sin(xi * x) : std::cos(xi * x));
    });
}

GridField random_band_limited(const Grid& g, double xi_lo, double xi_hi, std::uint64_t seed, double amplitude) {
    if (!(xi_hi >= xi_lo) || xi_lo < 0.0) throw Error("invalid frequency band");
    const double k0 = g.min_wavenumber();
    const int kmax = static_cast<int>(std::floor(xi_hi / k0 + 1e-9));
    if (kmax > g.dealias_kmax()) throw Error("frequency band exceeds the dealiased range");

    struct Mode {
        long r2;
        int k1, k2;
    };
    std::vector<Mode> modes;
    const int k2max = g.d == 2 ? kmax : 0;
    for (int k1 = 0; k1 <= kmax; ++k1) {
        for (int k2 = -k2max; k2 <= k2max; ++k2) {
            if (k1 == 0 && k2 <= 0) continue;
            const long r2 = static_cast<long>(k1) * k1 + static_cast<long>(k2) * k2;
            const double xi = k0 * std::sqrt(static_cast<double>(r2));
            if (xi < xi_lo || xi > xi_hi) continue;
            modes.push_back({r2, k1, k2});
        }
    }
    if (modes.empty()) throw Error("frequency band contains no grid modes");
    std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
        if (a.r2 != b.r2) return a.r2 < b.r2;
        if (a.k1 != b.k1) return a.k1 < b.k1;
        return a.k2 < b.k2;
    });

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const int n = g.n;
    auto index = [&](int k1, int k2) -> std::size_t {
        const std::size_t i1 = static_cast<std::size_t>((k1 % n + n) % n);
        if (g.d == 1) return i1;
        return i1 * n + static_cast<std::size_t>((k2 % n + n) % n);
    };
    std::vector<cplx> spec(g.size(), cplx(0.0));
    for (const Mode& m : modes) {
        const double re = normal(rng);
        const double im = normal(rng);
        spec[index(m.k1, m.k2)] = cplx(re, im);
        spec[index(-m.k1, -m.k2)] = cplx(re, -im);
    }
    GridField f = GridField::from_spectrum(g, std::move(spec));
    const double m = max_abs(f);
    return (amplitude / m) * f;
}

Placement parse_placement(const std::string& s) {
    if (s == "threshold") return Placement::threshold;
    if (s == "fixed") return Placement::fixed;
    throw Error("unknown placement '" + s + "' (expected threshold or fixed)");
}

std::string to_string(Placement p) { return p == Placement::threshold ? "threshold" : "fixed"; }

double data_wavenumber(const Grid& g, const DataSpec& spec, double eps) {
    const double target = spec.placement == Placement::threshold ? spec.theta / eps : spec.xi_fixed;
    return g.wavenumber(nearest_mode(g, target));
}

GridField sweep_c0(const Grid& g, const DataSpec& spec, double eps) {
    const int k = nearest_mode(g, data_wavenumber(g, spec, eps));
    if (spec.placement == Placement::fixed) return single_mode(g, k, spec.amplitude);
    const double s = g.d / spec.p;
    const GridField unit = single_mode(g, k, 1.0);
    const GridField ref = single_mode(g, nearest_mode(g, data_wavenumber(g, spec, spec.eps_ref)), 1.0);
    const double target = spec.amplitude * besov_norm(ref, s, spec.p);
    return (target / besov_norm(unit, s, spec.p)) * unit;
}

EulerState initial_state(const Grid& g, const DataSpec& spec, const EulerParams& params) {
    if (spec.family == "well-prepared" || spec.family == "perturbed") {
        return well_prepared(sweep_c0(g, spec, params.eps), params);
    }
    if (spec.family == "generic") {
        const double xi_hi = std::min(g.max_dealiased_wavenumber(), 16.0 * g.min_wavenumber());
        EulerState s;
        s.c = random_band_limited(g, 0.0, xi_hi, spec.seed, spec.amplitude);
        std::vector<GridField> comps;
        for (int a = 0; a < g.d; ++a) {
            comps.push_back(random_band_limited(g, 0.0, xi_hi, spec.seed + 1000 + a, spec.amplitude));
        }
        s.v = VecField(std::move(comps));
        return s;
    }
    throw Error("unknown data family '" + spec.family + "'");
}

PMEState perturbed_pme_datum(const GridField& rho0, double xi0, double delta, double p, double size) {
    PMEState out{rho0, 0.0};
    if (size <= 0.0) return out;
    const Grid& g = rho0.grid();
    const GridField pert = single_mode(g, nearest_mode(g, xi0), 1.0, true);
    const double norm = besov_norm(pert, g.d / p - delta, p);
    out.N = rho0 + (size / norm) * pert;
    return out;
}

double decay_horizon(const GridField& c0, const EulerParams& params, double tol, double T_max) {
    if (!(tol > 0.0 && tol < 1.0)) throw Error("decay tolerance must lie in (0,1)");
    const auto& geo = geometry(c0.grid());
    const auto spec = c0.spectrum();
    double peak = 0.0;
    for (std::size_t i = 1; i < spec.size(); ++i) peak = std::max(peak, std::abs(spec[i]));
    if (peak == 0.0) return T_max;
    double slowest = infinity;
    for (std::size_t i = 1; i < spec.size(); ++i) {
        if (std::abs(spec[i]) <= 1e-10 * peak || geo.radius[i] == 0.0) continue;
        const EigenPair ev = eigenvalues(params.eps, geo.radius[i], Scaling::diffusive, params.kappa());
        slowest = std::min(slowest, ev.lambda_minus.real());
    }
    return std::min(T_max, std::log(1.0 / tol) / slowest);
}

}  // namespace hybesov
