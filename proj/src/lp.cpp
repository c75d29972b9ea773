#include "hybesov/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "hybesov/kernels.hpp"

namespace hybesov {

double DyadicCutoff::chi(double r) const {
    const double t = (r - inner) / (outer - inner);
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    // ψ(1−t)/(ψ(t)+ψ(1−t)) with ψ(t) = e^{−1/t}
    const double e = 1.0 / (1.0 - t) - 1.0 / t;
    if (e > 700.0) return 0.0;
    return 1.0 / (1.0 + std::exp(e));
}

DyadicCutoff build_cutoff() { return DyadicCutoff{}; }

const DyadicCutoff& default_cutoff() {
    static const DyadicCutoff cut = build_cutoff();
    return cut;
}

ShellRange grid_shells(const Grid& g) {
    const auto& radii = geometry(g).distinct_radii;
    ShellRange out;
    if (radii.empty()) return out;
    const double lo = radii.front(), hi = radii.back();
    const int jstart = static_cast<int>(std::floor(std::log2(3.0 * lo / 8.0))) - 1;
    const int jstop = static_cast<int>(std::ceil(std::log2(hi / DyadicCutoff::inner))) + 1;
    bool found = false;
    for (int j = jstart; j <= jstop; ++j) {
        const double a = DyadicCutoff::inner * std::ldexp(1.0, j);
        const double b = (8.0 / 3.0) * std::ldexp(1.0, j);
        auto it = std::upper_bound(radii.begin(), radii.end(), a);
        if (it != radii.end() && *it < b) {
            if (!found) out.jmin = j;
            out.jmax = j;
            found = true;
        }
    }
    if (!found) return ShellRange{};
    return out;
}

namespace {

using SymbolKey = std::tuple<int, int, double, int, int>;

const std::vector<double>& cached_symbol(const Grid& g, int j, int kind) {
    static std::mutex mtx;
    static std::map<SymbolKey, std::unique_ptr<std::vector<double>>> cache;
    const SymbolKey key{g.d, g.n, g.L, j, kind};
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    const auto& geo = geometry(g);
    auto sym = std::make_unique<std::vector<double>>(g.size());
    const double scale = std::ldexp(1.0, -j);
    const DyadicCutoff& cut = default_cutoff();
    if (kind == 0) {
        kernels::evaluate(geo.radius, [&](double r) { return cut.phi(r * scale); }, *sym);
    } else {
        kernels::evaluate(geo.radius, [&](double r) { return cut.chi(r * scale); }, *sym);
    }
    std::lock_guard<std::mutex> lock(mtx);
    auto [it, inserted] = cache.emplace(key, std::move(sym));
    return *it->second;
}

double aggregate(const std::vector<double>& terms, double r) {
    if (std::isinf(r)) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    double s = 0.0;
    if (r == 1.0) {
        for (double t : terms) s += t;
        return s;
    }
    for (double t : terms) s += std::pow(t, r);
    return std::pow(s, 1.0 / r);
}

bool is_bracket(RegimeKind k) {
    return k == RegimeKind::low_medium || k == RegimeKind::medium_medium || k == RegimeKind::medium_high;
}

// Pieces (0 = low, i = medium i, R+1 = high) that make up a regime, in
// summation order.
std::vector<int> pieces_of(const FrequencyPartition& part, const Regime& reg) {
    const int R = part.R();
    std::vector<int> out;
    switch (reg.kind) {
        case RegimeKind::full:
            for (int i = 0; i <= R + 1; ++i) out.push_back(i);
            break;
        case RegimeKind::low: out.push_back(0); break;
        case RegimeKind::medium: out.push_back(reg.a); break;
        case RegimeKind::high: out.push_back(R + 1); break;
        case RegimeKind::low_medium:
            out.push_back(0);
            for (int i = reg.a; i <= R; ++i) out.push_back(i);
            break;
        case RegimeKind::medium_medium:
            for (int i = reg.b; i <= reg.a; ++i) out.push_back(i);
            break;
        case RegimeKind::medium_high:
            for (int i = 1; i <= reg.b; ++i) out.push_back(i);
            out.push_back(R + 1);
            break;
    }
    return out;
}

// Index window [lo, hi] of a piece.
std::pair<int, int> piece_window(const FrequencyPartition& part, int piece) {
    constexpr int big = 1 << 20;
    if (piece == 0) return {-big, part.low_end() - 1};
    if (piece == part.R() + 1) return {part.J(), big};
    return {part.medium_begin(piece), part.medium_end(piece) - 1};
}

}  // namespace

const std::vector<double>& shell_symbol(const Grid& g, int j) { return cached_symbol(g, j, 0); }
const std::vector<double>& low_symbol(const Grid& g, int j) { return cached_symbol(g, j, 1); }

GridField dyadic_block(const GridField& f, int j, const DyadicCutoff& cut) {
    (void)cut;
    return apply_symbol(f, std::span<const double>(shell_symbol(f.grid(), j)));
}

GridField low_cutoff(const GridField& f, int j, const DyadicCutoff& cut) {
    (void)cut;
    return apply_symbol(f, std::span<const double>(low_symbol(f.grid(), j)));
}

std::string Regime::name() const {
    switch (kind) {
        case RegimeKind::full: return "full";
        case RegimeKind::low: return "low";
        case RegimeKind::medium: return "m" + std::to_string(a);
        case RegimeKind::high: return "high";
        case RegimeKind::low_medium: return "[l,m" + std::to_string(a) + "]";
        case RegimeKind::medium_medium: return "[m" + std::to_string(a) + ",m" + std::to_string(b) + "]";
        case RegimeKind::medium_high: return "[m" + std::to_string(b) + ",h]";
    }
    return "?";
}

FrequencyPartition::FrequencyPartition(double eps, int k0, int N0, int R)
    : eps_(eps), k0_(k0), J_(threshold(eps, k0)), N0_(N0), R_(R) {
    if (N0 < 1) throw Error("N0 must be positive");
    if (R < 0) throw Error("R must be nonnegative");
}

int FrequencyPartition::threshold(double eps, int k0) {
    if (!(eps > 0.0)) throw Error("eps must be positive");
    // Guard against log2(1/eps) landing a hair below an integer.
    return static_cast<int>(std::floor(std::log2(1.0 / eps) + 1e-12)) + k0;
}

int FrequencyPartition::piece(int j) const {
    if (j >= J_) return R_ + 1;
    if (j < low_end()) return 0;
    return (J_ - 1 - j) / N0_ + 1;
}

void FrequencyPartition::check(const Regime& r) const {
    auto ok = [&](int i) { return i >= 1 && i <= R_; };
    switch (r.kind) {
        case RegimeKind::medium:
        case RegimeKind::low_medium:
            if (!ok(r.a)) throw Error("medium regime index out of range");
            break;
        case RegimeKind::medium_medium:
            if (!ok(r.a) || !ok(r.b) || r.a < r.b) throw Error("medium regime index out of range");
            break;
        case RegimeKind::medium_high:
            if (!ok(r.b)) throw Error("medium regime index out of range");
            break;
        default: break;
    }
}

bool FrequencyPartition::contains(const Regime& r, int j) const {
    check(r);
    const int pc = piece(j);
    for (int q : pieces_of(*this, r))
        if (q == pc) return true;
    return false;
}

double AdmissibleSequence::exponent(int piece) const {
    if (piece <= 0) return p;
    if (piece > R()) return 2.0;
    return ps[piece - 1];
}

DyadicDecomposition::DyadicDecomposition(const GridField& f) : DyadicDecomposition(VecField(std::vector<GridField>{f})) {}

DyadicDecomposition::DyadicDecomposition(const VecField& v) : grid_(v.grid()), range_(grid_shells(v.grid())), dim_(v.dim()) {
    blocks_.resize(range_.count());
    cache_.resize(range_.count());
    for (int j = range_.jmin; j <= range_.jmax; ++j) {
        const auto& sym = shell_symbol(grid_, j);
        auto& blk = blocks_[j - range_.jmin];
        for (const auto& c : v.comp) {
            std::vector<cplx> spec(c.size());
            kernels::multiply(c.spectrum(), sym, spec);
            blk.push_back(inverse_transform(grid_, spec));
        }
    }
}

double DyadicDecomposition::shell_norm(int j, double p) const {
    if (range_.empty() || j < range_.jmin || j > range_.jmax) return 0.0;
    auto& memo = cache_[j - range_.jmin];
    for (const auto& [q, val] : memo)
        if (q == p) return val;
    const auto& blk = blocks_[j - range_.jmin];
    double val;
    if (dim_ == 1) {
        val = lp_norm_samples(grid_, blk[0], p);
    } else {
        std::vector<double> mag(blk[0].size(), 0.0);
        for (const auto& c : blk)
            for (std::size_t i = 0; i < mag.size(); ++i) mag[i] += c[i] * c[i];
        for (auto& m : mag) m = std::sqrt(m);
        val = lp_norm_samples(grid_, mag, p);
    }
    memo.emplace_back(p, val);
    return val;
}

double DyadicDecomposition::weighted_sum(int lo, int hi, double s, double p) const {
    if (range_.empty()) return 0.0;
    double sum = 0.0;
    for (int j = std::max(lo, range_.jmin); j <= std::min(hi, range_.jmax); ++j) {
        sum += std::exp2(j * s) * shell_norm(j, p);
    }
    return sum;
}

double DyadicDecomposition::semi_norm(const FrequencyPartition& part, const Regime& regime, double s, double p,
                                      const AdmissibleSequence* seq, double r) const {
    part.check(regime);
    const bool per_piece = seq != nullptr && is_bracket(regime.kind);
    if (r == 1.0) {
        double total = 0.0;
        for (int pc : pieces_of(part, regime)) {
            const auto [lo, hi] = piece_window(part, pc);
            total += weighted_sum(lo, hi, s, per_piece ? seq->exponent(pc) : p);
        }
        return total;
    }
    std::vector<double> terms;
    for (int pc : pieces_of(part, regime)) {
        const auto [lo, hi] = piece_window(part, pc);
        const double q = per_piece ? seq->exponent(pc) : p;
        for (int j = std::max(lo, range_.jmin); j <= std::min(hi, range_.jmax); ++j)
            terms.push_back(std::exp2(j * s) * shell_norm(j, q));
    }
    return aggregate(terms, r);
}

double besov_norm(const GridField& f, const BesovSpec& spec, const FrequencyPartition& part, const DyadicCutoff& cut,
                  const AdmissibleSequence* seq) {
    (void)cut;
    part.check(spec.regime);
    return DyadicDecomposition(f).semi_norm(part, spec.regime, spec.s, spec.p, seq, spec.r);
}

double besov_norm(const VecField& v, const BesovSpec& spec, const FrequencyPartition& part, const DyadicCutoff& cut,
                  const AdmissibleSequence* seq) {
    (void)cut;
    part.check(spec.regime);
    return DyadicDecomposition(v).semi_norm(part, spec.regime, spec.s, spec.p, seq, spec.r);
}

double besov_norm(const GridField& f, double s, double p, double r) {
    return DyadicDecomposition(f).semi_norm(FrequencyPartition(1.0), Regime::full(), s, p, nullptr, r);
}

double besov_norm(const VecField& v, double s, double p, double r) {
    return DyadicDecomposition(v).semi_norm(FrequencyPartition(1.0), Regime::full(), s, p, nullptr, r);
}

GridField project_regime(const GridField& f, const FrequencyPartition& part, const Regime& regime,
                         const DyadicCutoff& cut) {
    (void)cut;
    part.check(regime);
    const Grid& g = f.grid();
    const ShellRange range = grid_shells(g);
    std::vector<double> sym(g.size(), 0.0);
    for (int j = range.jmin; j <= range.jmax; ++j) {
        if (!part.contains(regime, j)) continue;
        kernels::axpy(1.0, shell_symbol(g, j), sym);
    }
    return apply_symbol(f, std::span<const double>(sym));
}

GridField subgrid_remainder(const GridField& f) { return GridField::constant(f.grid(), f.mean()); }

}  // namespace hybesov
