#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hybesov/field.hpp"

namespace hybesov {

// Smooth radial cutoff: χ = 1 on [0, 3/4], χ = 0 on [4/3, ∞), with an
// exp-bump smoothstep in between; φ(r) = χ(r/2) − χ(r) lives on [3/4, 8/3].
class DyadicCutoff {
public:
    static constexpr double inner = 0.75;
    static constexpr double outer = 4.0 / 3.0;

    double chi(double r) const;
    double phi(double r) const { return chi(0.5 * r) - chi(r); }
};

DyadicCutoff build_cutoff();
const DyadicCutoff& default_cutoff();

// Dyadic indices j whose annulus 2^j·(3/4, 8/3) meets a nonzero grid mode.
struct ShellRange {
    int jmin = 0;
    int jmax = -1;
    bool empty() const { return jmin > jmax; }
    int count() const { return empty() ? 0 : jmax - jmin + 1; }
};
ShellRange grid_shells(const Grid& g);

// Per-mode values of φ(|ξ|/2^j) and χ(|ξ|/2^j), cached per grid.
const std::vector<double>& shell_symbol(const Grid& g, int j);
const std::vector<double>& low_symbol(const Grid& g, int j);

GridField dyadic_block(const GridField& f, int j, const DyadicCutoff& cut = default_cutoff());
GridField low_cutoff(const GridField& f, int j, const DyadicCutoff& cut = default_cutoff());

enum class RegimeKind { full, low, medium, high, low_medium, medium_medium, medium_high };

// full | low | medium(i) | high | [ℓ,m_a] | [m_a,m_b] (a ≥ b) | [m_b,h]
struct Regime {
    RegimeKind kind = RegimeKind::full;
    int a = 0;
    int b = 0;

    static Regime full() { return {RegimeKind::full, 0, 0}; }
    static Regime low() { return {RegimeKind::low, 0, 0}; }
    static Regime medium(int i) { return {RegimeKind::medium, i, 0}; }
    static Regime high() { return {RegimeKind::high, 0, 0}; }
    static Regime low_medium(int a) { return {RegimeKind::low_medium, a, 0}; }
    static Regime medium_medium(int a, int b) { return {RegimeKind::medium_medium, a, b}; }
    static Regime medium_high(int b) { return {RegimeKind::medium_high, 0, b}; }

    std::string name() const;
};

class FrequencyPartition {
public:
    FrequencyPartition(double eps, int k0 = 1, int N0 = 4, int R = 0);

    double eps() const { return eps_; }
    int k0() const { return k0_; }
    int J() const { return J_; }
    int N0() const { return N0_; }
    int R() const { return R_; }

    static int threshold(double eps, int k0);

    // Medium regime i covers [J − N0·i, J − N0·(i−1)).
    int medium_begin(int i) const { return J_ - N0_ * i; }
    int medium_end(int i) const { return J_ - N0_ * (i - 1); }
    // Low regime is j < low_end().
    int low_end() const { return J_ - N0_ * R_; }

    // 0 for low, i for medium i, R+1 for high.
    int piece(int j) const;
    bool contains(const Regime& r, int j) const;
    // Throws if the regime refers to a medium index outside [1, R].
    void check(const Regime& r) const;

private:
    double eps_;
    int k0_;
    int J_;
    int N0_;
    int R_;
};

struct AdmissibleSequence {
    double p = 6.0;
    int d = 1;
    std::vector<double> ps;

    int R() const { return static_cast<int>(ps.size()); }
    // Integrability used on piece 0 (low), i (medium i), R+1 (high).
    double exponent(int piece) const;
};

struct BesovSpec {
    double s = 0.0;
    double p = 2.0;
    double r = 1.0;
    Regime regime = Regime::full();
};

// Σ (or ℓ^r) of 2^{js}‖Δ̇_j f‖_{L^p} over the regime. With a sequence, medium
// shells use p_i and high shells use 2 inside bracket regimes; plain regimes
// always use spec.p.
double besov_norm(const GridField& f, const BesovSpec& spec, const FrequencyPartition& part,
                  const DyadicCutoff& cut = default_cutoff(), const AdmissibleSequence* seq = nullptr);
double besov_norm(const VecField& v, const BesovSpec& spec, const FrequencyPartition& part,
                  const DyadicCutoff& cut = default_cutoff(), const AdmissibleSequence* seq = nullptr);
// Full-range norm, no partition needed.
double besov_norm(const GridField& f, double s, double p, double r = 1.0);
double besov_norm(const VecField& v, double s, double p, double r = 1.0);

GridField project_regime(const GridField& f, const FrequencyPartition& part, const Regime& regime,
                         const DyadicCutoff& cut = default_cutoff());
// Mean plus shells below the grid range (only the mean on a periodic grid).
GridField subgrid_remainder(const GridField& f);

// All dyadic blocks of a field (or of a vector field, blockwise per component),
// computed once so that norms for several exponents reuse them.
class DyadicDecomposition {
public:
    explicit DyadicDecomposition(const GridField& f);
    explicit DyadicDecomposition(const VecField& v);

    const Grid& grid() const { return grid_; }
    ShellRange shells() const { return range_; }
    // ‖Δ̇_j f‖_{L^p}; zero outside the grid range.
    double shell_norm(int j, double p) const;
    // Σ over j in [lo, hi] ∩ grid range of 2^{js}‖Δ̇_j f‖_{L^p}.
    double weighted_sum(int lo, int hi, double s, double p) const;
    double semi_norm(const FrequencyPartition& part, const Regime& regime, double s, double p,
                     const AdmissibleSequence* seq = nullptr, double r = 1.0) const;

private:
    Grid grid_;
    ShellRange range_;
    int dim_ = 1;
    // blocks_[j - jmin][component] holds samples.
    std::vector<std::vector<std::vector<double>>> blocks_;
    mutable std::vector<std::vector<std::pair<double, double>>> cache_;
};

// S_{p,R} membership.
struct SequenceVerdict {
    bool valid = true;
    std::string violated;  // empty when valid
    double lhs = 0.0;
    double bound = 0.0;
    std::vector<std::string> checks;  // every evaluated constraint
};

class SequenceError : public Error {
public:
    using Error::Error;
};

SequenceVerdict validate_sequence(const AdmissibleSequence& seq);
// p_i = 2 + 4i/(p−2), R = ⌊(p−2)(p−4)/8⌋ + 1 for p > 4; for p ≤ 4 evenly
// spaced exponents with the smallest R that validates.
AdmissibleSequence example_sequence(double p, int d);

}  // namespace hybesov
