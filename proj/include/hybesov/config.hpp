#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hybesov/data.hpp"
#include "hybesov/lp.hpp"
#include "hybesov/sweep.hpp"

namespace hybesov {

class ConfigError : public Error {
public:
    using Error::Error;
};

struct ExperimentConfig {
    // [grid]
    Grid grid{1, 512, two_pi * 4.0};
    // [params]
    double gamma = 2.0;
    double A = 0.5;
    double eps = 0.1;
    // [partition]
    int k0 = 1;
    int N0 = 4;
    double a0 = 0.125;
    double eta = 0.25;
    // [sequence]
    double p = 6.0;
    std::vector<double> ps{3.0};
    bool ps_auto = false;
    // [solver]
    double dt = 0.0;  // 0: T/steps
    int steps = 1000;
    double T = 0.0;   // 0: decay horizon
    double T_max = 2.0;
    double decay_tol = 1e-3;
    int record_every = 2;
    int snapshot_every = 0;  // 0: initial and final fields only
    DataSpec data;
    // [sweep]
    std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
    std::vector<double> deltas{1.0, 0.5};
    std::vector<double> rs{1.0, 4.0 / 3.0, 2.0};
    std::vector<double> perturbations{0.0, 1.0};
    // [output]
    std::filesystem::path dir = "out";
    std::vector<std::string> formats{"csv", "json", "svg"};

    AdmissibleSequence sequence() const;
    FrequencyPartition partition(double eps) const;
    FrequencyPartition partition() const { return partition(eps); }
    EulerParams params(double eps) const;
    EulerParams params() const { return params(eps); }
    SweepSetup sweep_setup() const;
    bool wants(const std::string& format) const;

    // Throws ConfigError on any violated invariant.
    void validate() const;
};

ExperimentConfig parse_config(const std::string& toml_text, const std::string& source = "<string>");
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace hybesov
