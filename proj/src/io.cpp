#include "hybesov/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace hybesov::io {

namespace {

static_assert(std::endian::native == std::endian::little, "binary field format assumes a little-endian host");

template <class T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw Error("truncated field file");
    return v;
}

}  // namespace

void write_field(const std::filesystem::path& path, const GridField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string());
    const Grid& g = f.grid();
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.d));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n));
    put<double>(out, g.L);
    out.write(reinterpret_cast<const char*>(f.samples().data()),
              static_cast<std::streamsize>(f.size() * sizeof(double)));
}

GridField read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    const auto d = get<std::uint32_t>(in);
    const auto n = get<std::uint32_t>(in);
    const auto L = get<double>(in);
    Grid g(static_cast<int>(d), static_cast<int>(n), L);
    std::vector<double> s(g.size());
    in.read(reinterpret_cast<char*>(s.data()), static_cast<std::streamsize>(s.size() * sizeof(double)));
    if (!in) throw Error("truncated field file");
    return GridField::from_samples(g, std::move(s));
}

void write_field_csv(const std::filesystem::path& path, const GridField& f) {
    CsvWriter w(path);
    const Grid& g = f.grid();
    if (g.d == 1) {
        w.header({"x", "value"});
        for (int i = 0; i < g.n; ++i) w.row({g.coordinate(i), f.samples()[i]});
    } else {
        w.header({"x", "y", "value"});
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                w.row({g.coordinate(i), g.coordinate(j), f.samples()[static_cast<std::size_t>(i) * g.n + j]});
    }
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot open " + path.string());
}

void CsvWriter::header(const std::vector<std::string>& cols) { row(cols); }

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_number(values[i]);
    }
    out_ << "\r\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_escape(cells[i]);
    }
    out_ << "\r\n";
}

}  // namespace hybesov::io
