#include "hybesov/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace hybesov {

double time_sup(const std::vector<double>& values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double time_lq(const std::vector<double>& t, const std::vector<double>& values, double q) {
    if (t.size() != values.size()) throw Error("time and value series differ in length");
    if (q == infinity) return time_sup(values);
    if (!(q > 0.0)) throw Error("time exponent must be positive");
    double acc = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double a = std::pow(std::abs(values[i - 1]), q);
        const double b = std::pow(std::abs(values[i]), q);
        acc += 0.5 * (t[i] - t[i - 1]) * (a + b);
    }
    return q == 1.0 ? acc : std::pow(acc, 1.0 / q);
}

void SolutionTrace::push(const EulerState& s) {
    if (!states.empty()) {
        if (!(s.t > states.back().t)) throw Error("trace times must be strictly increasing");
        require_same_grid(states.back().grid(), s.grid());
    }
    states.push_back(s);
}

std::vector<double> SolutionTrace::times() const {
    std::vector<double> t;
    t.reserve(states.size());
    for (const auto& s : states) t.push_back(s.t);
    return t;
}

namespace {

void require_matching(const FrequencyPartition& part, const AdmissibleSequence& seq, int d) {
    if (seq.R() != part.R()) throw Error("sequence length does not match the partition's R");
    if (seq.d != d) throw Error("sequence dimension does not match the grid");
}

// Semi-norm series of one record.
struct RecordNorms {
    // [piece] for pieces 0..R (low and medium), all at exponent p_piece
    std::vector<double> c_s;   // s = d/p_i
    std::vector<double> c_s2;  // s = d/p_i + 2
    std::vector<double> v_s;   // s = d/p_i
    std::vector<double> v_s1;  // s = d/p_i + 1
    std::vector<double> w_s;   // s = d/p_i
    double c_high = 0.0;       // s = d/2 + 1, L²
    double v_high = 0.0;
};

Regime piece_regime(int i) { return i == 0 ? Regime::low() : Regime::medium(i); }

RecordNorms record_norms(const EulerState& s, const EulerParams& params, const FrequencyPartition& part,
                         const AdmissibleSequence& seq, bool with_time_terms) {
    const int d = s.grid().d;
    const DyadicDecomposition dc(s.c);
    const DyadicDecomposition dv(s.v);
    std::optional<DyadicDecomposition> dw;
    if (with_time_terms) dw.emplace(damped_mode(s, params));
    RecordNorms out;
    for (int i = 0; i <= part.R(); ++i) {
        const Regime reg = piece_regime(i);
        const double p = seq.exponent(i);
        const double s0 = d / p;
        out.c_s.push_back(dc.semi_norm(part, reg, s0, p));
        out.v_s.push_back(dv.semi_norm(part, reg, s0, p));
        if (with_time_terms) {
            out.c_s2.push_back(dc.semi_norm(part, reg, s0 + 2.0, p));
            out.v_s1.push_back(dv.semi_norm(part, reg, s0 + 1.0, p));
            out.w_s.push_back(dw->semi_norm(part, reg, s0, p));
        }
    }
    const double sh = 0.5 * d + 1.0;
    out.c_high = dc.semi_norm(part, Regime::high(), sh, 2.0);
    out.v_high = dv.semi_norm(part, Regime::high(), sh, 2.0);
    return out;
}

std::string piece_name(int i) { return i == 0 ? std::string("low") : "m" + std::to_string(i); }

}  // namespace

HybridFunctional accumulate_X(const SolutionTrace& trace, const EulerParams& params, const FrequencyPartition& part,
                              const AdmissibleSequence& seq) {
    if (trace.empty()) throw Error("empty trace");
    const int d = trace.states.front().grid().d;
    require_matching(part, seq, d);
    const double eps = params.eps;
    const std::vector<double> t = trace.times();
    std::vector<RecordNorms> recs;
    recs.reserve(trace.size());
    for (const auto& s : trace.states) recs.push_back(record_norms(s, params, part, seq, true));

    auto series = [&](auto getter) {
        std::vector<double> out;
        out.reserve(recs.size());
        for (const auto& r : recs) out.push_back(getter(r));
        return out;
    };

    HybridFunctional X;
    auto add = [&](const std::string& name, double value) {
        X.items.emplace_back(name, value);
        return value;
    };
    for (int i = 0; i <= part.R(); ++i) {
        const std::string nm = piece_name(i);
        double sum = 0.0;
        sum += add(nm + ".c.Linf", time_sup(series([&](const RecordNorms& r) { return r.c_s[i]; })));
        sum += add(nm + ".c.L1", time_lq(t, series([&](const RecordNorms& r) { return r.c_s2[i]; }), 1.0));
        sum += add(nm + ".eps_v.Linf", eps * time_sup(series([&](const RecordNorms& r) { return r.v_s[i]; })));
        sum += add(nm + ".v.L2", time_lq(t, series([&](const RecordNorms& r) { return r.v_s[i]; }), 2.0));
        sum += add(nm + ".v.L1", time_lq(t, series([&](const RecordNorms& r) { return r.v_s1[i]; }), 1.0));
        sum += add(nm + ".W.L1/eps", time_lq(t, series([&](const RecordNorms& r) { return r.w_s[i]; }), 1.0) / eps);
        if (i == 0) {
            X.X_low = sum;
        } else {
            X.X_med.push_back(sum);
        }
    }
    double high = 0.0;
    high += add("high.eps_c.Linf", eps * time_sup(series([](const RecordNorms& r) { return r.c_high; })));
    high += add("high.c.L1/eps", time_lq(t, series([](const RecordNorms& r) { return r.c_high; }), 1.0) / eps);
    high += add("high.eps2_v.Linf", eps * eps * time_sup(series([](const RecordNorms& r) { return r.v_high; })));
    high += add("high.v.L1", time_lq(t, series([](const RecordNorms& r) { return r.v_high; }), 1.0));
    X.X_high = high;
    X.X_total = X.X_low;
    for (double m : X.X_med) X.X_total += m;
    X.X_total += X.X_high;
    return X;
}

double accumulate_X0(const EulerState& s0, const EulerParams& params, const FrequencyPartition& part,
                     const AdmissibleSequence& seq) {
    require_matching(part, seq, s0.grid().d);
    const double eps = params.eps;
    const RecordNorms r = record_norms(s0, params, part, seq, false);
    double total = 0.0;
    for (int i = 0; i <= part.R(); ++i) total += r.c_s[i] + eps * r.v_s[i];
    return total + eps * r.c_high + eps * eps * r.v_high;
}

Distance two_solution_distance(const SolutionTrace& a, const SolutionTrace& b, const FrequencyPartition& part,
                               const AdmissibleSequence& seq) {
    if (a.size() != b.size() || a.empty()) throw Error("traces are empty or differ in length");
    const int d = a.states.front().grid().d;
    require_matching(part, seq, d);
    Distance out;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const EulerState& x = a.states[k];
        const EulerState& y = b.states[k];
        if (std::abs(x.t - y.t) > 1e-12 * std::max(1.0, std::abs(x.t))) throw Error("traces are not time-aligned");
        require_same_grid(x.grid(), y.grid());
        const DyadicDecomposition dc(x.c - y.c);
        const DyadicDecomposition dv(x.v - y.v);
        double v = 0.0;
        for (int i = 0; i <= part.R(); ++i) {
            const double p = seq.exponent(i);
            v += dc.semi_norm(part, piece_regime(i), d / p, p) + dv.semi_norm(part, piece_regime(i), d / p, p);
        }
        v += dc.semi_norm(part, Regime::high(), 0.5 * d, 2.0) + dv.semi_norm(part, Regime::high(), 0.5 * d, 2.0);
        out.times.push_back(x.t);
        out.values.push_back(v);
    }
    out.sup = time_sup(out.values);
    return out;
}

double damped_mode_norm(const SolutionTrace& euler, const EulerParams& params, double r, double p) {
    if (euler.empty()) throw Error("empty trace");
    const int d = euler.states.front().grid().d;
    std::vector<double> w;
    for (const auto& s : euler.states) w.push_back(besov_norm(damped_mode(s, params), d / p, p));
    return time_lq(euler.times(), w, r);
}

RelaxationErrors relaxation_errors(const SolutionTrace& euler, const std::vector<PMEState>& pme,
                                   const EulerParams& params, double delta, double r, double p) {
    if (!(delta > 0.0 && delta <= 1.0)) throw Error("delta must lie in (0, 1]");
    if (!(r >= 1.0 && r < 2.0)) throw Error("r must lie in [1, 2)");
    if (euler.size() != pme.size() || euler.empty()) throw Error("traces are empty or differ in length");
    const int d = euler.states.front().grid().d;
    std::vector<double> t, sup, mixed;
    for (std::size_t k = 0; k < euler.size(); ++k) {
        const EulerState& s = euler.states[k];
        if (std::abs(s.t - pme[k].t) > 1e-12 * std::max(1.0, std::abs(s.t))) throw Error("traces are not time-aligned");
        const GridField diff = density(s, params) - pme[k].N;
        const DyadicDecomposition dec(diff);
        const ShellRange range = dec.shells();
        t.push_back(s.t);
        sup.push_back(dec.weighted_sum(range.jmin, range.jmax, d / p - delta, p));
        mixed.push_back(dec.weighted_sum(range.jmin, range.jmax, d / p + 1.0, p));
    }
    RelaxationErrors out;
    out.sup_err = time_sup(sup);
    out.mixed_err = time_lq(t, mixed, 2.0 / (1.0 + delta));
    out.W_Lr = damped_mode_norm(euler, params, r, p);
    return out;
}

}  // namespace hybesov
