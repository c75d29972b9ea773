#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hybesov/data.hpp"
#include "hybesov/functionals.hpp"
#include "hybesov/regression.hpp"

namespace hybesov {

struct SweepSetup {
    Grid grid{1, 512, two_pi * 4.0};
    double gamma = 2.0;
    double A = 0.5;
    DataSpec data;
    std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
    std::vector<double> deltas{1.0, 0.5};
    std::vector<double> rs{1.0};
    // Per δ: ‖𝒩0 − ρ0‖_{Ḃ^{d/p−δ}_{p,1}} = perturbation·amplitude·ε^δ.
    // A single entry applies to every δ.
    std::vector<double> perturbations{0.0, 1.0};
    double T = 0.0;  // 0 selects the decay horizon
    double T_max = 2.0;
    double decay_tol = 1e-3;
    int steps = 1000;
    int record_every = 2;
    bool with_pme = true;
};

double perturbation_for(const SweepSetup& setup, std::size_t k);

struct SweepPoint {
    double eps = 0.0;
    bool ok = false;
    std::string error;
    double T = 0.0;
    double dt = 0.0;
    double xi0 = 0.0;
    double tail_ratio = 0.0;     // ‖c(T)‖/‖c0‖ in Ḃ^{d/p}_{p,1}
    std::vector<double> W_Lr;    // per r
    std::vector<double> sup_err;  // per δ
    std::vector<double> mixed_err;
};

struct SweepFits {
    std::vector<std::optional<LinearFit>> W;  // per r
    std::vector<std::optional<LinearFit>> sup;  // per δ
    std::vector<std::optional<LinearFit>> mixed;
    std::string note;  // why a fit was refused
};

SweepPoint run_sweep_point(const SweepSetup& setup, double eps);
// Points run in parallel; results are stored by index.
std::vector<SweepPoint> run_sweep(const SweepSetup& setup);
SweepFits fit_sweep(const SweepSetup& setup, const std::vector<SweepPoint>& points);

}  // namespace hybesov
