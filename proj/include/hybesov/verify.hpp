#pragma once

#include <map>
#include <string>
#include <vector>

#include "hybesov/config.hpp"

namespace hybesov {

struct Check {
    std::string name;
    double measured = 0.0;
    double limit = 0.0;
    std::string relation;  // "<", ">", "<=", "in", "info"
    bool pass = true;
};

struct VerifyReport {
    std::string suite;
    std::vector<Check> checks;
    std::map<std::string, double> extras;  // reported values that are not pass/fail

    bool passed() const;
    std::string to_json() const;
};

// Suites: lp, bony, spectral, solvers. Throws Error for an unknown name.
VerifyReport run_verify(const std::string& suite, const ExperimentConfig& config);
const std::vector<std::string>& verify_suites();

}  // namespace hybesov
