#include "hybesov/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <limits>

namespace hybesov::svg {

namespace {

constexpr double width = 640.0;
constexpr double height = 440.0;
constexpr double left = 80.0;
constexpr double right = 170.0;
constexpr double top = 40.0;
constexpr double bottom = 60.0;

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Axis {
    bool log = false;
    double lo = 0.0, hi = 1.0;

    double t(double v) const { return log ? std::log10(v) : v; }
    double frac(double v) const { return (t(v) - lo) / (hi - lo); }
};

Axis make_axis(const std::vector<double>& values, bool log) {
    Axis a;
    a.log = log;
    double lo = infinity, hi = -infinity;
    for (double v : values) {
        if (!std::isfinite(v) || (log && v <= 0.0)) continue;
        lo = std::min(lo, a.t(v));
        hi = std::max(hi, a.t(v));
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    a.lo = lo - pad;
    a.hi = hi + pad;
    return a;
}

std::vector<double> ticks(const Axis& a) {
    std::vector<double> out;
    if (a.log) {
        for (int e = static_cast<int>(std::ceil(a.lo)); e <= static_cast<int>(std::floor(a.hi)); ++e) {
            out.push_back(std::pow(10.0, e));
        }
        if (out.size() >= 2) return out;
        out.clear();
    }
    const double span = a.hi - a.lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double stepv = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            stepv = m * mag;
            break;
        }
    }
    for (double v = std::ceil(a.lo / stepv) * stepv; v <= a.hi + 1e-12; v += stepv) {
        out.push_back(a.log ? std::pow(10.0, v) : v);
    }
    return out;
}

}  // namespace

std::string render(const Plot& plot) {
    std::vector<double> xs, ys;
    for (const auto& s : plot.series) {
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        ys.insert(ys.end(), s.y.begin(), s.y.end());
    }
    const Axis ax = make_axis(xs, plot.logx);
    const Axis ay = make_axis(ys, plot.logy);
    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto X = [&](double v) { return left + ax.frac(v) * pw; };
    auto Y = [&](double v) { return top + (1.0 - ay.frac(v)) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(plot.title) << "</text>\n";
    o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double v : ticks(ax)) {
        const double x = X(v);
        o << "<line x1=\"" << num(x) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(x) << "\" y2=\""
          << num(top + ph + 5) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << num(x) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">"
          << tick_label(v) << "</text>\n";
    }
    for (double v : ticks(ay)) {
        const double y = Y(v);
        o << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left) << "\" y2=\"" << num(y)
          << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << tick_label(v)
          << "</text>\n";
    }
    o << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(height - 15) << "\" text-anchor=\"middle\">"
      << escape(plot.xlabel) << "</text>\n";
    o << "<text x=\"18\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num(top + ph / 2) << ")\">" << escape(plot.ylabel) << "</text>\n";

    int k = 0;
    for (const auto& s : plot.series) {
        const char* color = palette[k % 7];
        std::string pts;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i]) || (plot.logy && s.y[i] <= 0.0) || (plot.logx && s.x[i] <= 0.0)) continue;
            pts += num(X(s.x[i])) + "," + num(Y(s.y[i])) + " ";
        }
        o << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                if (!std::isfinite(s.y[i]) || (plot.logy && s.y[i] <= 0.0) || (plot.logx && s.x[i] <= 0.0)) continue;
                o << "<circle cx=\"" << num(X(s.x[i])) << "\" cy=\"" << num(Y(s.y[i])) << "\" r=\"3\" fill=\"" << color
                  << "\"/>\n";
            }
        }
        if (s.fit && plot.logx && plot.logy && !s.x.empty()) {
            const auto [mn, mx] = std::minmax_element(s.x.begin(), s.x.end());
            auto fy = [&](double x) { return std::exp(s.fit->intercept + s.fit->slope * std::log(x)); };
            o << "<line x1=\"" << num(X(*mn)) << "\" y1=\"" << num(Y(fy(*mn))) << "\" x2=\"" << num(X(*mx))
              << "\" y2=\"" << num(Y(fy(*mx))) << "\" stroke=\"" << color << "\" stroke-dasharray=\"5,4\"/>\n";
        }
        std::string label = s.label;
        if (s.fit) label += " (slope " + tick_label(s.fit->slope) + ")";
        const double ly = top + 16 + 18 * k;
        o << "<line x1=\"" << num(width - right + 10) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
          << num(width - right + 28) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << num(width - right + 32) << "\" y=\"" << num(ly) << "\" font-size=\"11\">" << escape(label)
          << "</text>\n";
        ++k;
    }
    o << "</svg>\n";
    return o.str();
}

void write(const std::filesystem::path& path, const Plot& plot) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string());
    out << render(plot);
}

FrequencyMap frequency_map_layout(const FrequencyPartition& part, const AdmissibleSequence& seq) {
    if (seq.R() != part.R()) throw Error("sequence length does not match the partition's R");
    FrequencyMap map;
    const int R = part.R();
    for (int i = R; i >= 1; --i) map.boundaries.push_back(part.medium_begin(i));
    map.boundaries.push_back(part.J());
    auto space = [](double p) { return "L^" + tick_label(p); };
    map.zones.push_back({"Low-f", space(seq.exponent(0)), std::numeric_limits<int>::min(), part.low_end()});
    for (int i = R; i >= 1; --i) {
        const std::string name = R == 1 ? "Medium-f" : "Medium-f " + std::to_string(i);
        map.zones.push_back({name, space(seq.exponent(i)), part.medium_begin(i), part.medium_end(i)});
    }
    map.zones.push_back({"High-f", space(2.0), part.J(), std::numeric_limits<int>::max()});
    return map;
}

std::string render_frequency_map(const FrequencyMap& map, const FrequencyPartition& part) {
    const double w = 760.0, h = 200.0, x0 = 40.0, x1 = w - 40.0, yaxis = 110.0;
    const std::size_t nz = map.zones.size();
    const double zone_w = (x1 - x0) / static_cast<double>(nz);
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">Frequency regimes, eps = "
      << tick_label(part.eps()) << ", J = " << part.J() << "</text>\n";
    const char* fills[] = {"#dbe9f6", "#fde0c5", "#e2f0d9", "#efe0f3", "#fff2b3"};
    for (std::size_t z = 0; z < nz; ++z) {
        const double xa = x0 + zone_w * z;
        o << "<rect x=\"" << num(xa) << "\" y=\"" << num(yaxis - 40) << "\" width=\"" << num(zone_w)
          << "\" height=\"40\" fill=\"" << fills[z % 5] << "\"/>\n";
        o << "<text x=\"" << num(xa + zone_w / 2) << "\" y=\"" << num(yaxis - 22) << "\" text-anchor=\"middle\">"
          << escape(map.zones[z].name) << "</text>\n";
        o << "<text x=\"" << num(xa + zone_w / 2) << "\" y=\"" << num(yaxis - 6) << "\" text-anchor=\"middle\">"
          << escape(map.zones[z].space) << "</text>\n";
    }
    o << "<line x1=\"" << num(x0) << "\" y1=\"" << num(yaxis) << "\" x2=\"" << num(x1 + 20) << "\" y2=\"" << num(yaxis)
      << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    o << "<polygon points=\"" << num(x1 + 20) << "," << num(yaxis - 5) << " " << num(x1 + 30) << "," << num(yaxis)
      << " " << num(x1 + 20) << "," << num(yaxis + 5) << "\"/>\n";
    o << "<text x=\"" << num(x0) << "\" y=\"" << num(yaxis + 20) << "\" text-anchor=\"middle\">0</text>\n";
    o << "<text x=\"" << num(x1 + 30) << "\" y=\"" << num(yaxis + 20) << "\" text-anchor=\"middle\">&#8734;</text>\n";
    for (std::size_t b = 0; b < map.boundaries.size(); ++b) {
        const double xb = x0 + zone_w * (b + 1);
        const int j = map.boundaries[b];
        o << "<line x1=\"" << num(xb) << "\" y1=\"" << num(yaxis - 45) << "\" x2=\"" << num(xb) << "\" y2=\""
          << num(yaxis + 8) << "\" stroke=\"black\" stroke-dasharray=\"4,3\"/>\n";
        const std::string label = j == part.J() ? "J = " + std::to_string(j) : "J - " + std::to_string(part.J() - j);
        o << "<text x=\"" << num(xb) << "\" y=\"" << num(yaxis + 24) << "\" text-anchor=\"middle\">" << label
          << "</text>\n";
        o << "<text x=\"" << num(xb) << "\" y=\"" << num(yaxis + 42) << "\" text-anchor=\"middle\" font-size=\"11\">|xi| ~ "
          << tick_label(std::ldexp(1.0, j)) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace hybesov::svg
