#pragma once

#include <vector>

#include "hybesov/euler.hpp"

namespace hybesov {

struct PMEState {
    GridField N;
    double t = 0.0;

    const Grid& grid() const { return N.grid(); }
};

// μ = P′(N̄) = AγN̄^{γ−1}
double pme_mu(const PMEState& s, const PressureLaw& law);

// Strang step: heat half-step e^{μΔdt/2}, RK4 on Δ(P(N) − μN), heat half-step.
// Throws StepSizeError when dt·max|P′(N) − μ|·max|ξ|² > 1/2 and Error on N ≤ 0.
PMEState pme_step(const PMEState& s, const PressureLaw& law, double dt);

// ∂_t N = ΔP(N), dealiased.
GridField pme_rate(const PMEState& s, const PressureLaw& law);

// V = −∇P(N)/N
VecField darcy_velocity(const PMEState& s, const PressureLaw& law);

// Y = ‖N‖_{L^∞_T(Ḃ^{d/p}_{p,1})} + ‖N‖_{L^1_T(Ḃ^{d/p+2}_{p,1})} from recorded states.
double pme_functional_Y(const std::vector<PMEState>& trace, double p);

}  // namespace hybesov
