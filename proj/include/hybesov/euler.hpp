#pragma once

#include "hybesov/field.hpp"
#include "hybesov/lp.hpp"
#include "hybesov/spectral.hpp"

namespace hybesov {

class VacuumError : public Error {
public:
    using Error::Error;
};

class StepSizeError : public Error {
public:
    using Error::Error;
};

// P(ρ) = Aρ^γ
struct PressureLaw {
    double gamma = 2.0;
    double A = 0.5;

    double pressure(double rho) const;
    double dpressure(double rho) const;
};

struct EulerParams {
    double gamma = 2.0;
    double A = 0.5;
    double eps = 0.1;

    double gamma_check() const { return 0.5 * (gamma - 1.0); }
    double c_bar() const;
    // Linear wave speed γ̌c̄ of the sound-speed system.
    double kappa() const { return gamma_check() * c_bar(); }
    PressureLaw law() const { return {gamma, A}; }
    void validate() const;
};

struct EulerState {
    GridField c;
    VecField v;
    double t = 0.0;

    const Grid& grid() const { return c.grid(); }
};

// c = (γA)^{1/2}/γ̌ ρ^{γ̌} − c̄, v = u/ε; both dealiased.
EulerState to_sound_vars(const GridField& rho, const VecField& u, const EulerParams& params);
GridField density(const EulerState& s, const EulerParams& params);
VecField momentum_velocity(const EulerState& s, const EulerParams& params);

struct EulerRates {
    GridField dc;
    VecField dv;
};

// dc = −v·∇c − γ̌(c+c̄) div v,  dv = −v·∇v − γ̌(c+c̄)∇c/ε²  (the −v/ε² damping is not included)
EulerRates rhs(const EulerState& s, const EulerParams& params);
// The part of rhs left after removing the linearization about (0,0):
// N_c = −v·∇c − γ̌c div v,  N_v = −v·∇v − γ̌c∇c/ε²
EulerRates nonlinear_rhs(const EulerState& s, const EulerParams& params);

// Throws StepSizeError unless dt·max|v|·ξmax ≤ 1/2 and dt·(c̄ + max|c|)·ξmax·γ̌ ≤ 1/2.
void check_step_size(const EulerState& s, const EulerParams& params, double dt);
// Throws VacuumError when min(c + c̄) < c̄/10.
void check_vacuum(const EulerState& s, const EulerParams& params);

// Strang step: exact linear half-step, RK4 on the nonlinear part, exact linear half-step.
EulerState step(const EulerState& s, const EulerParams& params, double dt);

// 𝒲 = v + γ̌(c+c̄)∇c, or w = ε𝒲 when scaled.
VecField damped_mode(const EulerState& s, const EulerParams& params, bool scaled = false);

// v0 = −γ̌(c0+c̄)∇c0, so that 𝒲0 = 0.
EulerState well_prepared(const GridField& c0, const EulerParams& params);

struct SmallnessVerdict {
    bool pass = true;
    double X0 = 0.0;
    double eta = 0.0;
};

SmallnessVerdict smallness_gate(const EulerState& s0, const EulerParams& params, const FrequencyPartition& part,
                                const AdmissibleSequence& seq, double eta);

// 𝓛_j = ‖(c_j, εv_j)‖² + η 2^{−2j}⟨∇c_j, v_j⟩ and its reference ‖(c_j, εv_j)‖².
double lyapunov(const EulerState& s, double eps, int j, double eta = 0.25);
double lyapunov_reference(const EulerState& s, double eps, int j);

}  // namespace hybesov
