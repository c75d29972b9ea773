#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hybesov/lp.hpp"
#include "hybesov/regression.hpp"

namespace hybesov::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = true;
    std::optional<LinearFit> fit;  // drawn as a dashed line in log-log plots
};

struct Plot {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool logx = false;
    bool logy = false;
    std::vector<Series> series;
};

std::string render(const Plot& plot);
void write(const std::filesystem::path& path, const Plot& plot);

struct Zone {
    std::string name;      // "Low-f", "Medium-f 1", "High-f"
    std::string space;     // "L^6", "L^3", "L^2"
    int j_begin = 0;       // first dyadic index (exclusive lower end for low is -inf)
    int j_end = 0;
};

struct FrequencyMap {
    std::vector<int> boundaries;  // increasing dyadic indices J − N0·R, …, J
    std::vector<Zone> zones;      // low first, high last
};

FrequencyMap frequency_map_layout(const FrequencyPartition& part, const AdmissibleSequence& seq);
std::string render_frequency_map(const FrequencyMap& map, const FrequencyPartition& part);

}  // namespace hybesov::svg
