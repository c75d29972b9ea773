#include "hybesov/spectral.hpp"

#include <cmath>

#include "hybesov/kernels.hpp"

namespace hybesov {

namespace {

struct SymbolEntries {
    double damping;  // H22
    cplx h12;
    cplx h21;
};

SymbolEntries entries(double eps, double xi, Scaling scaling, double kappa) {
    if (!(eps > 0.0)) throw Error("eps must be positive");
    if (xi < 0.0) throw Error("wavenumber magnitude must be nonnegative");
    const cplx ik(0.0, kappa * xi);
    if (scaling == Scaling::relax) return {1.0 / eps, ik, ik};
    const double inv2 = 1.0 / (eps * eps);
    return {inv2, ik, ik * inv2};
}

}  // namespace

LinearSymbol LinearSymbol::make(double eps, double xi, Scaling scaling, double kappa) {
    const auto e = entries(eps, xi, scaling, kappa);
    LinearSymbol s;
    s.eps = eps;
    s.xi = xi;
    s.kappa = kappa;
    s.scaling = scaling;
    s.matrix = {cplx(0.0), e.h12, e.h21, cplx(e.damping)};
    return s;
}

double LinearSymbol::trace() const { return (matrix[0] + matrix[3]).real(); }

double LinearSymbol::det() const { return (matrix[0] * matrix[3] - matrix[1] * matrix[2]).real(); }

EigenPair eigenvalues(double eps, double xi, Scaling scaling, double kappa) {
    const auto e = entries(eps, xi, scaling, kappa);
    const double D = e.damping;
    const double P = -(e.h12 * e.h21).real();
    // Discriminant as D²(1 − 4P/D²) keeps the sign test exact at the boundary.
    const double q = 4.0 * P / (D * D);
    EigenPair out;
    if (q <= 1.0) {
        const double lp = 0.5 * D * (1.0 + std::sqrt(1.0 - q));
        out.lambda_plus = lp;
        out.lambda_minus = P / lp;
    } else {
        const double im = 0.5 * D * std::sqrt(q - 1.0);
        out.lambda_plus = cplx(0.5 * D, im);
        out.lambda_minus = cplx(0.5 * D, -im);
    }
    return out;
}

Mat2 mode_propagator(double eps, double xi, double t, Scaling scaling, double kappa) {
    const auto e = entries(eps, xi, scaling, kappa);
    const EigenPair ev = eigenvalues(eps, xi, scaling, kappa);
    const double m = 0.5 * e.damping;
    const cplx delta = 0.5 * (ev.lambda_plus - ev.lambda_minus);
    const cplx z = t * delta;
    cplx f0, f1;
    if (std::abs(z) < 0.1) {
        const cplx z2 = z * z;
        const cplx ch = 1.0 + z2 * (1.0 / 2 + z2 * (1.0 / 24 + z2 * (1.0 / 720 + z2 / 40320.0)));
        const cplx shc = 1.0 + z2 * (1.0 / 6 + z2 * (1.0 / 120 + z2 * (1.0 / 5040 + z2 / 362880.0)));
        const double em = std::exp(-t * m);
        f1 = t * em * shc;
        f0 = em * (ch + m * t * shc);
    } else {
        const cplx em = std::exp(-t * ev.lambda_minus);
        const cplx ep = std::exp(-t * ev.lambda_plus);
        f1 = (em - ep) / (2.0 * delta);
        f0 = (ev.lambda_plus * em - ev.lambda_minus * ep) / (2.0 * delta);
    }
    return {f0, -f1 * e.h12, -f1 * e.h21, f0 - f1 * e.damping};
}

std::vector<AsymptoticsRow> asymptotics_report(double eps, const std::vector<double>& xi_grid) {
    std::vector<AsymptoticsRow> rows;
    for (double xi : xi_grid) {
        const EigenPair ev = eigenvalues(eps, xi);
        AsymptoticsRow r;
        r.xi = xi;
        r.low_ratio = xi > 0.0 ? ev.lambda_minus.real() / (eps * xi * xi) : std::nan("");
        r.plus_scaled = std::abs(ev.lambda_plus) * eps;
        r.re_plus_scaled = ev.lambda_plus.real() * eps;
        r.re_minus_scaled = ev.lambda_minus.real() * eps;
        rows.push_back(r);
    }
    return rows;
}

namespace {

// Applies a per-mode 2×2 map to (ĉ, ξ̂·v̂); `scalar` acts on the transverse part.
template <class ModeMap>
LinearState map_modes(const GridField& c0, const VecField& v0, ModeMap&& mode_map) {
    const Grid& g = c0.grid();
    require_same_grid(g, v0.grid());
    const int d = g.d;
    const auto& geo = geometry(g);
    const std::size_t N = g.size();
    std::vector<cplx> c(N);
    std::vector<std::vector<cplx>> v(d, std::vector<cplx>(N));
    auto cs = c0.spectrum();
    kernels::for_range(N, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            if (geo.nyquist[i]) continue;
            const double r = geo.radius[i];
            cplx vh[2] = {v0[0].spectrum()[i], d > 1 ? v0[1].spectrum()[i] : cplx(0.0)};
            double e[2] = {0.0, 0.0};
            cplx vl = 0.0;
            if (r > 0.0) {
                for (int a = 0; a < d; ++a) {
                    e[a] = geo.xi[i][a] / r;
                    vl += e[a] * vh[a];
                }
            }
            cplx vt[2] = {vh[0] - e[0] * vl, vh[1] - e[1] * vl};
            const auto [M, scalar] = mode_map(r);
            const cplx cn = M[0] * cs[i] + M[1] * vl;
            const cplx vln = M[2] * cs[i] + M[3] * vl;
            c[i] = cn;
            for (int a = 0; a < d; ++a) v[a][i] = scalar * vt[a] + e[a] * vln;
        }
    });
    LinearState out;
    out.c = GridField::from_spectrum(g, std::move(c));
    std::vector<GridField> comps;
    for (int a = 0; a < d; ++a) comps.push_back(GridField::from_spectrum(g, std::move(v[a])));
    out.v = VecField(std::move(comps));
    return out;
}

}  // namespace

LinearState linear_propagate(const GridField& c0, const VecField& v0, double eps, double t, Scaling scaling,
                             double kappa) {
    if (t < 0.0) throw Error("propagation time must be nonnegative");
    const double damping = entries(eps, 0.0, scaling, kappa).damping;
    const double decay = std::exp(-t * damping);
    return map_modes(c0, v0, [&](double r) {
        return std::make_pair(mode_propagator(eps, r, t, scaling, kappa), decay);
    });
}

LinearState linear_rate(const GridField& c, const VecField& v, double eps, Scaling scaling, double kappa) {
    const double damping = entries(eps, 0.0, scaling, kappa).damping;
    return map_modes(c, v, [&](double r) {
        const auto s = LinearSymbol::make(eps, r, scaling, kappa);
        Mat2 M{-s.matrix[0], -s.matrix[1], -s.matrix[2], -s.matrix[3]};
        return std::make_pair(M, -damping);
    });
}

DampedModeResidual damped_mode_residual(const GridField& c0, const VecField& v0, double eps, double t) {
    const LinearState now = linear_propagate(c0, v0, eps, t, Scaling::diffusive);
    const LinearState rate0 = linear_rate(c0, v0, eps, Scaling::diffusive);
    const LinearState rate = linear_propagate(rate0.c, rate0.v, eps, t, Scaling::diffusive);

    const VecField grad_c = gradient(now.c);
    const VecField w = now.v + grad_c;
    const GridField div_w = divergence(w);
    const GridField lap_c = laplacian(now.c);

    const GridField r1 = rate.c - lap_c + div_w;
    const double s1 = lp_norm(rate.c, 2.0) + lp_norm(lap_c, 2.0) + lp_norm(div_w, 2.0);

    // ∂_t w = ∂_t v + ∇∂_t c
    const VecField dw = rate.v + gradient(rate.c);
    const VecField grad_lap = gradient(lap_c);
    const VecField grad_div = gradient(div_w);
    const VecField lhs = eps * dw + (1.0 / eps) * w;
    const VecField rhs = eps * grad_lap - eps * grad_div;
    const VecField r2 = lhs - rhs;
    const double s2 = lp_norm(eps * dw, 2.0) + lp_norm((1.0 / eps) * w, 2.0) + lp_norm(eps * grad_lap, 2.0) +
                      lp_norm(eps * grad_div, 2.0);

    DampedModeResidual out;
    out.res_c = s1 > 0.0 ? lp_norm(r1, 2.0) / s1 : 0.0;
    out.res_w = s2 > 0.0 ? lp_norm(r2, 2.0) / s2 : 0.0;
    return out;
}

}  // namespace hybesov
