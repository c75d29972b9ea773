#pragma once

#include "hybesov/lp.hpp"

namespace hybesov {

// fg = T_f g + T_g f + R(f,g) + mean(f)·mean(g) on the torus; all products
// are taken on 2/3-truncated factors and truncated again.
struct BonyParts {
    GridField para_fg;
    GridField para_gf;
    GridField remainder;
    double mean_product = 0.0;

    GridField sum() const;
};

GridField paraproduct(const GridField& f, const GridField& g, const DyadicCutoff& cut = default_cutoff());
GridField remainder(const GridField& f, const GridField& g, const DyadicCutoff& cut = default_cutoff());
BonyParts bony_decompose(const GridField& f, const GridField& g, const DyadicCutoff& cut = default_cutoff());

// 𝔯_j = Ṡ_{j−1}f Δ̇_j g − Δ̇_j(fg)
GridField commutator(const GridField& f, const GridField& g, int j, const DyadicCutoff& cut = default_cutoff());
// Same quantity assembled from the Bony split: −(Δ̇_j R + Δ̇_j T_g f + R3),
// where R3 keeps the commutator terms with |j − j'| ≤ N2.
GridField commutator_split(const GridField& f, const GridField& g, int j, int N2,
                           const DyadicCutoff& cut = default_cutoff());

// Truncates the spectrum to |ξ| < xi_cut.
GridField band_limit(const GridField& f, double xi_cut);

inline constexpr double support_a0_limit = 9.0 / 64.0;

// ‖(fg)^h‖₂ / (‖f‖₂‖g‖₂); zero up to rounding when both factors live below a0·2^J.
double support_vanish_residual(const GridField& f, const GridField& g, const FrequencyPartition& part, double a0,
                               const DyadicCutoff& cut = default_cutoff());

struct Margins {
    int N1 = 0;            // remainder reach: Δ̇_j(Δ̃_{j'}f Δ̇_{j'}g) ≠ 0 ⇒ j − j' ≤ N1
    int N1_same_shell = 0; // same, for a single shell pair j1 = j2 = j'
    int N2 = 0;            // paraproduct spread: Δ̇_j(Ṡ_{j'−1}f Δ̇_{j'}g) ≠ 0 ⇒ |j − j'| ≤ N2
    double tol = 0.0;      // relative threshold below which a block counts as empty
};

Margins measure_margins(const DyadicCutoff& cut = default_cutoff(), double tol = 1e-12);

// Largest |j − j'| at which Δ̇_j(Ṡ_{j'−1}f Δ̇_{j'}g) exceeds tol relative to the
// summand, minus the same count for Δ̇_{j'}g alone.
int paraproduct_excess_spread(const GridField& f, const GridField& g, int jp, double tol = 1e-12);

struct LemmaRatio {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

// High-frequency product law with C = 1, p_1 from the sequence, and
// s1 = s2 = (s − d/2 + 2d/p_1)/2.
LemmaRatio product_law_ratio(const GridField& f, const GridField& g, const FrequencyPartition& part,
                             const AdmissibleSequence& seq, double s);
// High-frequency commutator law with C = 1.
LemmaRatio commutator_law_ratio(const GridField& f, const GridField& g, const FrequencyPartition& part,
                                const AdmissibleSequence& seq, double s);

}  // namespace hybesov
