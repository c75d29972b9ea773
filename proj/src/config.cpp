#include "hybesov/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

namespace hybesov {

AdmissibleSequence ExperimentConfig::sequence() const {
    if (ps_auto) return example_sequence(p, grid.d);
    return {p, grid.d, ps};
}

FrequencyPartition ExperimentConfig::partition(double e) const { return FrequencyPartition(e, k0, N0, sequence().R()); }

EulerParams ExperimentConfig::params(double e) const { return {gamma, A, e}; }

SweepSetup ExperimentConfig::sweep_setup() const {
    SweepSetup s;
    s.grid = grid;
    s.gamma = gamma;
    s.A = A;
    s.data = data;
    s.data.p = p;
    s.eps = eps_list;
    s.deltas = deltas;
    s.rs = rs;
    s.perturbations = perturbations;
    s.T = T;
    s.T_max = T_max;
    s.decay_tol = decay_tol;
    s.steps = steps;
    s.record_every = record_every;
    return s;
}

bool ExperimentConfig::wants(const std::string& format) const {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
}

void ExperimentConfig::validate() const {
    try {
        params().validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (k0 < 0) throw ConfigError("partition.k0 must be nonnegative");
    if (N0 < 1) throw ConfigError("partition.N0 must be at least 1");
    if (!(a0 > 0.0 && a0 < 9.0 / 64.0)) throw ConfigError("partition.a0 must lie in (0, 9/64)");
    if (!(eta > 0.0)) throw ConfigError("partition.eta must be positive");
    AdmissibleSequence seq;
    try {
        seq = sequence();
    } catch (const Error& e) {
        throw ConfigError(std::string("sequence: ") + e.what());
    }
    const SequenceVerdict v = validate_sequence(seq);
    if (!v.valid) throw ConfigError("sequence does not validate: " + v.violated);
    if (steps < 1) throw ConfigError("solver.steps must be at least 1");
    if (dt < 0.0 || T < 0.0) throw ConfigError("solver.dt and solver.T must be nonnegative");
    if (!(T_max > 0.0)) throw ConfigError("solver.T_max must be positive");
    if (!(decay_tol > 0.0 && decay_tol < 1.0)) throw ConfigError("solver.decay_tol must lie in (0,1)");
    if (record_every < 1) throw ConfigError("solver.record_every must be at least 1");
    if (snapshot_every < 0) throw ConfigError("solver.snapshot_every must be nonnegative");
    if (!(data.amplitude >= 0.0)) throw ConfigError("solver.amplitude must be nonnegative");
    if (data.family != "well-prepared" && data.family != "generic" && data.family != "perturbed") {
        throw ConfigError("solver.family must be well-prepared, generic or perturbed");
    }
    if (eps_list.empty()) throw ConfigError("sweep.eps must not be empty");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw ConfigError("sweep.eps entries must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw ConfigError("sweep.eps must be sorted descending");
    }
    for (double d : deltas) {
        if (!(d > 0.0 && d <= 1.0)) throw ConfigError("sweep.delta entries must lie in (0, 1]");
    }
    for (double r : rs) {
        if (!(r >= 1.0 && r <= 2.0)) throw ConfigError("sweep.r entries must lie in [1, 2]");
    }
    if (perturbations.size() > 1 && perturbations.size() != deltas.size()) {
        throw ConfigError("sweep.perturbation needs one entry or one per delta");
    }
    for (const auto& f : formats) {
        if (f != "csv" && f != "json" && f != "svg" && f != "bin") {
            throw ConfigError("unknown output format '" + f + "'");
        }
    }
}

namespace {

void check_keys(const toml::table& t, const std::string& section, const std::set<std::string>& allowed) {
    for (const auto& [k, v] : t) {
        if (!allowed.count(std::string(k.str()))) {
            throw ConfigError("unknown key '" + std::string(k.str()) + "' in " + section);
        }
    }
}

double number(const toml::node& n, const std::string& key) {
    if (auto v = n.value<double>()) return *v;
    throw ConfigError(key + " must be a number");
}

int integer(const toml::node& n, const std::string& key) {
    if (auto v = n.as_integer()) return static_cast<int>(v->get());
    throw ConfigError(key + " must be an integer");
}

std::vector<double> number_list(const toml::node& n, const std::string& key) {
    std::vector<double> out;
    if (auto arr = n.as_array()) {
        for (const auto& e : *arr) out.push_back(number(e, key));
        return out;
    }
    out.push_back(number(n, key));
    return out;
}

template <class Fn>
void with(const toml::table& t, const char* key, Fn&& fn) {
    if (const toml::node* n = t.get(key)) fn(*n);
}

const toml::table* section(const toml::table& root, const char* name) {
    const toml::node* n = root.get(name);
    if (!n) return nullptr;
    const toml::table* t = n->as_table();
    if (!t) throw ConfigError(std::string("[") + name + "] must be a table");
    return t;
}

}  // namespace

ExperimentConfig parse_config(const std::string& toml_text, const std::string& source) {
    toml::table root;
    try {
        root = toml::parse(toml_text, source);
    } catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << source << ": " << e.description() << " (line " << e.source().begin.line << ")";
        throw ConfigError(msg.str());
    }
    check_keys(root, "config", {"grid", "params", "partition", "sequence", "solver", "sweep", "output"});
    ExperimentConfig c;

    if (const auto* t = section(root, "grid")) {
        check_keys(*t, "[grid]", {"d", "n", "L"});
        int d = c.grid.d, n = c.grid.n;
        double L = c.grid.L;
        with(*t, "d", [&](const toml::node& v) { d = integer(v, "grid.d"); });
        with(*t, "n", [&](const toml::node& v) { n = integer(v, "grid.n"); });
        with(*t, "L", [&](const toml::node& v) { L = number(v, "grid.L"); });
        try {
            c.grid = Grid(d, n, L);
        } catch (const Error& e) {
            throw ConfigError(std::string("grid: ") + e.what());
        }
    }
    if (const auto* t = section(root, "params")) {
        check_keys(*t, "[params]", {"gamma", "A", "eps"});
        with(*t, "gamma", [&](const toml::node& v) { c.gamma = number(v, "params.gamma"); });
        with(*t, "A", [&](const toml::node& v) { c.A = number(v, "params.A"); });
        with(*t, "eps", [&](const toml::node& v) { c.eps = number(v, "params.eps"); });
    }
    if (const auto* t = section(root, "partition")) {
        check_keys(*t, "[partition]", {"k0", "N0", "a0", "eta"});
        with(*t, "k0", [&](const toml::node& v) { c.k0 = integer(v, "partition.k0"); });
        with(*t, "N0", [&](const toml::node& v) { c.N0 = integer(v, "partition.N0"); });
        with(*t, "a0", [&](const toml::node& v) { c.a0 = number(v, "partition.a0"); });
        with(*t, "eta", [&](const toml::node& v) { c.eta = number(v, "partition.eta"); });
    }
    if (const auto* t = section(root, "sequence")) {
        check_keys(*t, "[sequence]", {"p", "ps"});
        with(*t, "p", [&](const toml::node& v) { c.p = number(v, "sequence.p"); });
        with(*t, "ps", [&](const toml::node& v) {
            if (auto s = v.value<std::string>()) {
                if (*s != "auto") throw ConfigError("sequence.ps must be a list of numbers or \"auto\"");
                c.ps_auto = true;
                c.ps.clear();
            } else if (v.as_array()) {
                c.ps = number_list(v, "sequence.ps");
                c.ps_auto = false;
            } else {
                throw ConfigError("sequence.ps must be a list of numbers or \"auto\"");
            }
        });
    }
    if (const auto* t = section(root, "solver")) {
        check_keys(*t, "[solver]", {"dt", "steps", "T", "T_max", "decay_tol", "record_every", "snapshot_every",
                                    "family", "amplitude", "seed", "placement", "theta", "xi_fixed", "eps_ref"});
        with(*t, "dt", [&](const toml::node& v) { c.dt = number(v, "solver.dt"); });
        with(*t, "steps", [&](const toml::node& v) { c.steps = integer(v, "solver.steps"); });
        with(*t, "T", [&](const toml::node& v) {
            if (auto s = v.value<std::string>()) {
                if (*s != "auto") throw ConfigError("solver.T must be a number or \"auto\"");
                c.T = 0.0;
            } else {
                c.T = number(v, "solver.T");
            }
        });
        with(*t, "T_max", [&](const toml::node& v) { c.T_max = number(v, "solver.T_max"); });
        with(*t, "decay_tol", [&](const toml::node& v) { c.decay_tol = number(v, "solver.decay_tol"); });
        with(*t, "record_every", [&](const toml::node& v) { c.record_every = integer(v, "solver.record_every"); });
        with(*t, "snapshot_every", [&](const toml::node& v) { c.snapshot_every = integer(v, "solver.snapshot_every"); });
        with(*t, "family", [&](const toml::node& v) {
            auto s = v.value<std::string>();
            if (!s) throw ConfigError("solver.family must be a string");
            c.data.family = *s;
        });
        with(*t, "amplitude", [&](const toml::node& v) { c.data.amplitude = number(v, "solver.amplitude"); });
        with(*t, "seed", [&](const toml::node& v) {
            auto s = v.as_integer();
            if (!s || s->get() < 0) throw ConfigError("solver.seed must be a nonnegative integer");
            c.data.seed = static_cast<std::uint64_t>(s->get());
        });
        with(*t, "placement", [&](const toml::node& v) {
            auto s = v.value<std::string>();
            if (!s) throw ConfigError("solver.placement must be a string");
            try {
                c.data.placement = parse_placement(*s);
            } catch (const Error& e) {
                throw ConfigError(e.what());
            }
        });
        with(*t, "theta", [&](const toml::node& v) { c.data.theta = number(v, "solver.theta"); });
        with(*t, "xi_fixed", [&](const toml::node& v) { c.data.xi_fixed = number(v, "solver.xi_fixed"); });
        with(*t, "eps_ref", [&](const toml::node& v) { c.data.eps_ref = number(v, "solver.eps_ref"); });
    }
    if (const auto* t = section(root, "sweep")) {
        check_keys(*t, "[sweep]", {"eps", "delta", "r", "perturbation"});
        with(*t, "eps", [&](const toml::node& v) { c.eps_list = number_list(v, "sweep.eps"); });
        with(*t, "delta", [&](const toml::node& v) { c.deltas = number_list(v, "sweep.delta"); });
        with(*t, "r", [&](const toml::node& v) { c.rs = number_list(v, "sweep.r"); });
        with(*t, "perturbation", [&](const toml::node& v) { c.perturbations = number_list(v, "sweep.perturbation"); });
    }
    if (const auto* t = section(root, "output")) {
        check_keys(*t, "[output]", {"dir", "formats"});
        with(*t, "dir", [&](const toml::node& v) {
            auto s = v.value<std::string>();
            if (!s) throw ConfigError("output.dir must be a string");
            c.dir = *s;
        });
        with(*t, "formats", [&](const toml::node& v) {
            const auto* arr = v.as_array();
            if (!arr) throw ConfigError("output.formats must be a list of strings");
            c.formats.clear();
            for (const auto& e : *arr) {
                auto s = e.value<std::string>();
                if (!s) throw ConfigError("output.formats must be a list of strings");
                c.formats.push_back(*s);
            }
        });
    }
    c.data.p = c.p;
    if (!c.eps_list.empty()) c.data.eps_ref = root["solver"]["eps_ref"] ? c.data.eps_ref : c.eps_list.front();
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

}  // namespace hybesov
