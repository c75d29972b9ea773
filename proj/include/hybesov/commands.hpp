#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "hybesov/config.hpp"

namespace hybesov {

// Each command writes its artifacts under config.dir, prints a JSON summary to
// `out` and returns the process exit status.
int cmd_verify(const ExperimentConfig& config, const std::string& suite, std::ostream& out);
int cmd_decompose(const ExperimentConfig& config, const std::optional<std::filesystem::path>& field, std::ostream& out);
int cmd_spectrum(const ExperimentConfig& config, std::ostream& out);
int cmd_simulate(const ExperimentConfig& config, std::ostream& out);
int cmd_simulate_pme(const ExperimentConfig& config, std::ostream& out);
int cmd_relax_limit(const ExperimentConfig& config, std::ostream& out);
int cmd_damped_mode(const ExperimentConfig& config, std::ostream& out);
int cmd_sequence(const ExperimentConfig& config, std::ostream& out);
int cmd_frequency_map(const ExperimentConfig& config, std::ostream& out);

}  // namespace hybesov
