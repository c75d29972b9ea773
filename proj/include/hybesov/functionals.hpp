#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hybesov/euler.hpp"
#include "hybesov/lp.hpp"
#include "hybesov/pme.hpp"

namespace hybesov {

// Time norms of a sampled series: running max and composite trapezoid
// (‖f‖_{L^q_T} = (∫|f|^q)^{1/q}; q = infinity gives the max).
double time_sup(const std::vector<double>& values);
double time_lq(const std::vector<double>& t, const std::vector<double>& values, double q);

struct SolutionTrace {
    std::vector<EulerState> states;

    void push(const EulerState& s);
    bool empty() const { return states.empty(); }
    std::size_t size() const { return states.size(); }
    std::vector<double> times() const;
};

struct HybridFunctional {
    double X_low = 0.0;
    std::vector<double> X_med;
    double X_high = 0.0;
    double X_total = 0.0;
    std::vector<std::pair<std::string, double>> items;
};

// X^ℓ = ‖c‖^ℓ_{L^∞_T(Ḃ^{d/p})} + ‖c‖^ℓ_{L^1_T(Ḃ^{d/p+2})} + ε‖v‖^ℓ_{L^∞_T(Ḃ^{d/p})}
//       + ‖v‖^ℓ_{L^2_T(Ḃ^{d/p})} + ‖v‖^ℓ_{L^1_T(Ḃ^{d/p+1})} + (1/ε)‖𝒲‖^ℓ_{L^1_T(Ḃ^{d/p})},
// X^{m_i} likewise with p_i, and at s = d/2+1 in L²:
// X^h = ε‖c‖^h_{L^∞_T} + (1/ε)‖c‖^h_{L^1_T} + ε²‖v‖^h_{L^∞_T} + ‖v‖^h_{L^1_T}.
HybridFunctional accumulate_X(const SolutionTrace& trace, const EulerParams& params, const FrequencyPartition& part,
                              const AdmissibleSequence& seq);

// ‖(c0, εv0)‖^ℓ_{Ḃ^{d/p}} + Σ ‖(c0, εv0)‖^{m_i}_{Ḃ^{d/p_i}} + ‖(εc0, ε²v0)‖^h_{Ḃ^{d/2+1}_{2,1}}
double accumulate_X0(const EulerState& s0, const EulerParams& params, const FrequencyPartition& part,
                     const AdmissibleSequence& seq);

struct Distance {
    std::vector<double> times;
    std::vector<double> values;  // instantaneous δX
    double sup = 0.0;
};

// δX = ‖(δc,δv)‖^h_{Ḃ^{d/2}_{2,1}} + Σ ‖(δc,δv)‖^{m_i}_{Ḃ^{d/p_i}} + ‖(δc,δv)‖^ℓ_{Ḃ^{d/p}_{p,1}}
Distance two_solution_distance(const SolutionTrace& a, const SolutionTrace& b, const FrequencyPartition& part,
                               const AdmissibleSequence& seq);

struct RelaxationErrors {
    double sup_err = 0.0;    // sup_t ‖ρ − 𝒩‖_{Ḃ^{d/p−δ}_{p,1}}
    double mixed_err = 0.0;  // ‖ρ − 𝒩‖_{L^{2/(1+δ)}_T(Ḃ^{d/p+1}_{p,1})}
    double W_Lr = 0.0;       // ‖𝒲‖_{L^r_T(Ḃ^{d/p}_{p,1})}
};

RelaxationErrors relaxation_errors(const SolutionTrace& euler, const std::vector<PMEState>& pme,
                                   const EulerParams& params, double delta, double r, double p);

// ‖𝒲‖_{L^r_T(Ḃ^{d/p}_{p,1})}
double damped_mode_norm(const SolutionTrace& euler, const EulerParams& params, double r, double p);

}  // namespace hybesov
