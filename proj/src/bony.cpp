#include "hybesov/bony.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hybesov/kernels.hpp"

namespace hybesov {

namespace {

std::vector<double> filtered_samples(const GridField& f, const std::vector<double>& sym) {
    std::vector<cplx> spec(f.size());
    kernels::multiply(f.spectrum(), sym, spec);
    return inverse_transform(f.grid(), spec);
}

void accumulate_product(std::span<const double> a, std::span<const double> b, std::vector<double>& acc) {
    kernels::for_range(acc.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) acc[i] += a[i] * b[i];
    });
}

GridField prepared(const GridField& f) { return is_dealiased(f) ? f : dealias(f); }

// Σ_{|k−j|≤1} φ_k restricted to the grid range.
std::vector<double> widened_symbol(const Grid& g, int j, const ShellRange& range) {
    std::vector<double> sym(g.size(), 0.0);
    for (int k = std::max(j - 1, range.jmin); k <= std::min(j + 1, range.jmax); ++k)
        kernels::axpy(1.0, shell_symbol(g, k), sym);
    return sym;
}

GridField truncated_product(const Grid& g, std::span<const double> a, std::span<const double> b) {
    std::vector<double> s(g.size());
    kernels::product(a, b, s);
    return dealiased_from_samples(g, std::move(s));
}

}  // namespace

GridField BonyParts::sum() const {
    GridField s = para_fg + para_gf + remainder;
    return s + GridField::constant(s.grid(), mean_product);
}

GridField paraproduct(const GridField& f0, const GridField& g0, const DyadicCutoff& cut) {
    (void)cut;
    require_same_grid(f0.grid(), g0.grid());
    const GridField f = prepared(f0), g = prepared(g0);
    const Grid& grid = f.grid();
    const ShellRange range = grid_shells(grid);
    std::vector<double> acc(grid.size(), 0.0);
    for (int jp = range.jmin; jp <= range.jmax; ++jp) {
        const auto a = filtered_samples(f, low_symbol(grid, jp - 1));
        const auto b = filtered_samples(g, shell_symbol(grid, jp));
        accumulate_product(a, b, acc);
    }
    return dealiased_from_samples(grid, std::move(acc));
}

GridField remainder(const GridField& f0, const GridField& g0, const DyadicCutoff& cut) {
    (void)cut;
    require_same_grid(f0.grid(), g0.grid());
    const GridField f = prepared(f0), g = prepared(g0);
    const Grid& grid = f.grid();
    const ShellRange range = grid_shells(grid);
    std::vector<double> acc(grid.size(), 0.0);
    for (int jp = range.jmin; jp <= range.jmax; ++jp) {
        const auto a = filtered_samples(f, widened_symbol(grid, jp, range));
        const auto b = filtered_samples(g, shell_symbol(grid, jp));
        accumulate_product(a, b, acc);
    }
    return dealiased_from_samples(grid, std::move(acc));
}

BonyParts bony_decompose(const GridField& f, const GridField& g, const DyadicCutoff& cut) {
    BonyParts parts;
    parts.para_fg = paraproduct(f, g, cut);
    parts.para_gf = paraproduct(g, f, cut);
    parts.remainder = remainder(f, g, cut);
    parts.mean_product = f.mean() * g.mean();
    return parts;
}

GridField commutator(const GridField& f0, const GridField& g0, int j, const DyadicCutoff& cut) {
    (void)cut;
    require_same_grid(f0.grid(), g0.grid());
    const GridField f = prepared(f0), g = prepared(g0);
    const Grid& grid = f.grid();
    const auto a = filtered_samples(f, low_symbol(grid, j - 1));
    const auto b = filtered_samples(g, shell_symbol(grid, j));
    GridField first = truncated_product(grid, a, b);
    GridField second = dyadic_block(product(f, g), j);
    return first - second;
}

GridField commutator_split(const GridField& f0, const GridField& g0, int j, int N2, const DyadicCutoff& cut) {
    require_same_grid(f0.grid(), g0.grid());
    const GridField f = prepared(f0), g = prepared(g0);
    const Grid& grid = f.grid();
    const ShellRange range = grid_shells(grid);

    GridField total = dyadic_block(remainder(f, g, cut), j) + dyadic_block(paraproduct(g, f, cut), j);

    const GridField dj_g = dyadic_block(g, j);
    const auto s_j = filtered_samples(f, low_symbol(grid, j - 1));
    for (int jp = std::max(range.jmin, j - N2); jp <= std::min(range.jmax, j + N2); ++jp) {
        const auto s_jp = filtered_samples(f, low_symbol(grid, jp - 1));
        const auto djp_g = filtered_samples(g, shell_symbol(grid, jp));
        // [Δ̇_j, Ṡ_{j'−1}f] Δ̇_{j'}g
        total += dyadic_block(truncated_product(grid, s_jp, djp_g), j);
        const auto djdjp_g = filtered_samples(dj_g, shell_symbol(grid, jp));
        total -= truncated_product(grid, s_jp, djdjp_g);
        if (std::abs(jp - j) <= 1) {
            std::vector<double> diff(grid.size());
            for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = s_jp[i] - s_j[i];
            total += truncated_product(grid, diff, djdjp_g);
        }
    }
    return -total;
}

GridField band_limit(const GridField& f, double xi_cut) {
    const auto& geo = geometry(f.grid());
    std::vector<double> sym(f.size());
    for (std::size_t i = 0; i < sym.size(); ++i) sym[i] = geo.radius[i] < xi_cut ? 1.0 : 0.0;
    return apply_symbol(f, std::span<const double>(sym));
}

double support_vanish_residual(const GridField& f, const GridField& g, const FrequencyPartition& part, double a0,
                               const DyadicCutoff& cut) {
    if (!(a0 > 0.0) || a0 >= support_a0_limit)
        throw Error("a0 must lie in (0, 9/64): larger margins no longer force the high part to vanish");
    require_same_grid(f.grid(), g.grid());
    const GridField fg = product(f, g);
    const GridField high = project_regime(fg, part, Regime::high(), cut);
    return lp_norm(high, 2.0) / (lp_norm(f, 2.0) * lp_norm(g, 2.0) + 1e-300);
}

namespace {

GridField random_broadband(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    const auto& geo = geometry(g);
    std::vector<cplx> spec(g.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double re = nd(rng), im = nd(rng);
        spec[i] = geo.keep[i] * cplx(re, im);
    }
    spec[0] = 0.0;
    return GridField::from_spectrum(g, std::move(spec));
}

int raw_spread(const GridField& h, int jp, double tol, bool signed_up) {
    const ShellRange range = grid_shells(h.grid());
    const double ref = lp_norm(h, 2.0);
    int spread = 0;
    if (ref == 0.0) return 0;
    for (int j = range.jmin; j <= range.jmax; ++j) {
        if (lp_norm(dyadic_block(h, j), 2.0) > tol * ref) {
            spread = std::max(spread, signed_up ? j - jp : std::abs(j - jp));
        }
    }
    return spread;
}

}  // namespace

Margins measure_margins(const DyadicCutoff& cut, double tol) {
    (void)cut;
    const Grid grid(1, 2048, two_pi);
    const GridField f = random_broadband(grid, 0x5eed01);
    const GridField g = random_broadband(grid, 0x5eed02);
    const ShellRange range = grid_shells(grid);
    Margins m;
    m.tol = tol;
    for (int jp = 4; jp <= 6; ++jp) {
        const auto dg = filtered_samples(g, shell_symbol(grid, jp));
        const auto wide = filtered_samples(f, widened_symbol(grid, jp, range));
        const auto same = filtered_samples(f, shell_symbol(grid, jp));
        const auto low = filtered_samples(f, low_symbol(grid, jp - 1));
        m.N1 = std::max(m.N1, raw_spread(truncated_product(grid, wide, dg), jp, tol, true));
        m.N1_same_shell = std::max(m.N1_same_shell, raw_spread(truncated_product(grid, same, dg), jp, tol, true));
        m.N2 = std::max(m.N2, raw_spread(truncated_product(grid, low, dg), jp, tol, false));
    }
    return m;
}

int paraproduct_excess_spread(const GridField& f0, const GridField& g0, int jp, double tol) {
    require_same_grid(f0.grid(), g0.grid());
    const GridField f = prepared(f0), g = prepared(g0);
    const Grid& grid = f.grid();
    const auto a = filtered_samples(f, low_symbol(grid, jp - 1));
    const GridField dg = dyadic_block(g, jp);
    const GridField summand = truncated_product(grid, a, dg.samples());
    return std::max(0, raw_spread(summand, jp, tol, false) - raw_spread(dg, jp, tol, false));
}

namespace {

void require_lemma_setup(const FrequencyPartition& part, const AdmissibleSequence& seq) {
    if (part.R() < 1) throw Error("lemma ratios need at least one medium regime");
    if (seq.R() != part.R()) throw Error("sequence length must match the number of medium regimes");
}

}  // namespace

LemmaRatio product_law_ratio(const GridField& f, const GridField& g, const FrequencyPartition& part,
                             const AdmissibleSequence& seq, double s) {
    require_lemma_setup(part, seq);
    const int d = f.grid().d;
    const double p = seq.p, p1 = seq.ps[0];
    const double s_low = d / p - d * (0.5 - 1.0 / p1);
    const double s12 = 0.5 * (s - 0.5 * d + 2.0 * d / p1);
    const DyadicDecomposition Df(f), Dg(g), Dfg(product(f, g));

    LemmaRatio out;
    out.lhs = Dfg.semi_norm(part, Regime::high(), s, 2.0);
    const Regime lm = Regime::low_medium(1), m1 = Regime::medium(1), mh = Regime::medium_high(1);
    out.rhs = Df.semi_norm(part, lm, s_low, p, &seq) * Dg.semi_norm(part, m1, s, p1) +
              max_abs(f) * Dg.semi_norm(part, Regime::high(), s, 2.0) +
              Dg.semi_norm(part, lm, s_low, p, &seq) * Df.semi_norm(part, m1, s, p1) +
              max_abs(g) * Df.semi_norm(part, Regime::high(), s, 2.0) +
              Df.semi_norm(part, mh, s12, p1, &seq) * Dg.semi_norm(part, mh, s12, p1, &seq);
    out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
    return out;
}

LemmaRatio commutator_law_ratio(const GridField& f, const GridField& g, const FrequencyPartition& part,
                                const AdmissibleSequence& seq, double s) {
    require_lemma_setup(part, seq);
    const int d = f.grid().d;
    const double p = seq.p, p1 = seq.ps[0];
    const double s_low = d / p - d * (0.5 - 1.0 / p1);
    const double s12 = 0.5 * (s - 0.5 * d + 2.0 * d / p1);
    const VecField grad_f = gradient(prepared(f));
    const DyadicDecomposition Df(f), Dg(g), Dgrad(grad_f);

    LemmaRatio out;
    const ShellRange range = grid_shells(f.grid());
    for (int j = std::max(part.J(), range.jmin); j <= range.jmax; ++j)
        out.lhs += std::exp2(j * s) * lp_norm(commutator(f, g, j), 2.0);

    const Regime lm = Regime::low_medium(1), m1 = Regime::medium(1), mh = Regime::medium_high(1);
    out.rhs = Dgrad.semi_norm(part, lm, s_low, p, &seq) * Dg.semi_norm(part, m1, s - 1.0, p1) +
              max_abs(grad_f) * Dg.semi_norm(part, Regime::high(), s - 1.0, 2.0) +
              Dg.semi_norm(part, lm, s_low, p, &seq) * Df.semi_norm(part, m1, s, p1) +
              max_abs(g) * Df.semi_norm(part, Regime::high(), s, 2.0) +
              Dg.semi_norm(part, mh, s12, p1, &seq) * Df.semi_norm(part, mh, s12, p1, &seq);
    out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
    return out;
}

}  // namespace hybesov
