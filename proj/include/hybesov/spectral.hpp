#pragma once

#include <array>
#include <vector>

#include "hybesov/field.hpp"

namespace hybesov {

// relax:     H = [[0, iκ|ξ|], [iκ|ξ|, 1/ε]]          (trace 1/ε,  det κ²|ξ|²)
// diffusive: H = [[0, iκ|ξ|], [iκ|ξ|/ε², 1/ε²]]      (trace 1/ε², det κ²|ξ|²/ε²)
// The diffusive form acts on (c, v) of ∂_t c + κ div v = 0, ε²∂_t v + κ∇c + v = 0.
enum class Scaling { relax, diffusive };

using Mat2 = std::array<cplx, 4>;  // row-major

struct LinearSymbol {
    double eps = 1.0;
    double xi = 0.0;
    double kappa = 1.0;
    Scaling scaling = Scaling::relax;
    Mat2 matrix{};

    static LinearSymbol make(double eps, double xi, Scaling scaling = Scaling::relax, double kappa = 1.0);
    double trace() const;
    double det() const;
};

struct EigenPair {
    cplx lambda_plus;
    cplx lambda_minus;
    bool real() const { return lambda_plus.imag() == 0.0; }
};

EigenPair eigenvalues(double eps, double xi, Scaling scaling = Scaling::relax, double kappa = 1.0);

// exp(−tH(ξ)) from the eigenvalues; a series is used when the two rates nearly coincide.
Mat2 mode_propagator(double eps, double xi, double t, Scaling scaling = Scaling::relax, double kappa = 1.0);

struct AsymptoticsRow {
    double xi = 0.0;
    double low_ratio = 0.0;     // λ₋/(ε|ξ|²)
    double plus_scaled = 0.0;   // |λ₊|·ε
    double re_plus_scaled = 0.0;
    double re_minus_scaled = 0.0;
};

std::vector<AsymptoticsRow> asymptotics_report(double eps, const std::vector<double>& xi_grid);

struct LinearState {
    GridField c;
    VecField v;
};

// Exact per-mode solution of the linear system. The longitudinal part of v
// couples to c; the transverse part decays by e^{−t·trace}. Unpaired Nyquist
// modes are discarded.
LinearState linear_propagate(const GridField& c0, const VecField& v0, double eps, double t,
                             Scaling scaling = Scaling::relax, double kappa = 1.0);

// (∂_t c, ∂_t v) = −H(c, v), evaluated spectrally.
LinearState linear_rate(const GridField& c, const VecField& v, double eps, Scaling scaling = Scaling::relax,
                        double kappa = 1.0);

struct DampedModeResidual {
    double res_c = 0.0;
    double res_w = 0.0;
};

// Propagates (c0, v0) under ∂_t c + div v = 0, ε²∂_t v + ∇c + v = 0 to time t,
// forms w = v + ∇c, and returns the relative residuals of
//   ∂_t c − Δc = −div w,   ε∂_t w + w/ε = ε∇Δc − ε∇div w.
// Time derivatives come from propagating the initial rate −H(c0, v0).
DampedModeResidual damped_mode_residual(const GridField& c0, const VecField& v0, double eps, double t);

}  // namespace hybesov
