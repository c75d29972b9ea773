#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hybesov/field.hpp"

namespace hybesov::io {

// Binary layout: uint32 d, uint32 n, float64 L (little-endian), then the
// row-major samples as float64.
void write_field(const std::filesystem::path& path, const GridField& f);
GridField read_field(const std::filesystem::path& path);
void write_field_csv(const std::filesystem::path& path, const GridField& f);

// RFC 4180 writer; numbers are printed with 17 significant digits.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);

    void header(const std::vector<std::string>& cols);
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
};

std::string format_number(double v);
std::string csv_escape(const std::string& s);

}  // namespace hybesov::io
