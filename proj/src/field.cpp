#include "hybesov/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "hybesov/fft.hpp"
#include "hybesov/kernels.hpp"

namespace hybesov {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<cplx> forward_real(const Grid& g, std::span<const double> samples) {
    std::vector<cplx> buf(samples.begin(), samples.end());
    std::vector<cplx> out(g.size());
    fft::forward(g, buf.data(), out.data());
    const double inv = 1.0 / static_cast<double>(g.size());
    for (auto& z : out) z *= inv;
    return out;
}

void hermitian_project(const Grid& g, std::vector<cplx>& s) {
    const auto& geo = geometry(g);
    std::vector<cplx> src = s;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = 0.5 * (src[i] + std::conj(src[geo.mirror[i]]));
}

}  // namespace

Grid::Grid(int d_, int n_, double L_) : d(d_), n(n_), L(L_) {
    if (d < 1 || d > 2) throw Error("grid dimension must be 1 or 2");
    if (!is_power_of_two(n) || n < 16) throw Error("grid size must be a power of two and at least 16");
    if (!(L > 0.0) || !std::isfinite(L)) throw Error("box length must be positive");
}

std::size_t Grid::size() const {
    std::size_t s = 1;
    for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(n);
    return s;
}

double Grid::cell_volume() const { return std::pow(dx(), d); }

double Grid::max_wavenumber() const { return std::sqrt(static_cast<double>(d)) * wavenumber(n / 2); }

double Grid::max_dealiased_wavenumber() const {
    return std::sqrt(static_cast<double>(d)) * wavenumber(dealias_kmax());
}

const GridGeometry& geometry(const Grid& g) {
    static std::mutex mtx;
    static std::map<std::tuple<int, int, double>, std::unique_ptr<GridGeometry>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(g.d, g.n, g.L);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto geo = std::make_unique<GridGeometry>();
    const std::size_t N = g.size();
    geo->xi.resize(N);
    geo->radius.resize(N);
    geo->keep.resize(N);
    geo->mirror.resize(N);
    geo->nyquist.resize(N);
    const int kmax = g.dealias_kmax();
    for (std::size_t idx = 0; idx < N; ++idx) {
        int ii[2] = {0, 0};
        if (g.d == 1) {
            ii[0] = static_cast<int>(idx);
        } else {
            ii[0] = static_cast<int>(idx / g.n);
            ii[1] = static_cast<int>(idx % g.n);
        }
        std::array<double, 2> xi{0.0, 0.0};
        bool keep = true, nyq = false;
        std::size_t mirror = 0;
        for (int a = 0; a < g.d; ++a) {
            const int k = g.wave_index(ii[a]);
            xi[a] = g.wavenumber(k);
            keep = keep && std::abs(k) <= kmax;
            nyq = nyq || ii[a] == g.n / 2;
            mirror = mirror * g.n + static_cast<std::size_t>((g.n - ii[a]) % g.n);
        }
        geo->xi[idx] = xi;
        geo->radius[idx] = std::hypot(xi[0], xi[1]);
        geo->keep[idx] = keep ? 1.0 : 0.0;
        geo->mirror[idx] = mirror;
        geo->nyquist[idx] = nyq ? 1 : 0;
    }
    geo->distinct_radii = geo->radius;
    std::sort(geo->distinct_radii.begin(), geo->distinct_radii.end());
    geo->distinct_radii.erase(std::unique(geo->distinct_radii.begin(), geo->distinct_radii.end()),
                              geo->distinct_radii.end());
    if (!geo->distinct_radii.empty() && geo->distinct_radii.front() == 0.0)
        geo->distinct_radii.erase(geo->distinct_radii.begin());
    auto& ref = *geo;
    cache.emplace(key, std::move(geo));
    return ref;
}

GridField::GridField(const Grid& g) : grid_(g), samples_(g.size(), 0.0), spectrum_(g.size(), cplx(0.0)) {}

GridField GridField::from_samples(const Grid& g, std::vector<double> samples) {
    if (samples.size() != g.size()) throw Error("sample count does not match grid");
    GridField f;
    f.grid_ = g;
    f.spectrum_ = forward_real(g, samples);
    f.samples_ = std::move(samples);
    return f;
}

GridField GridField::from_spectrum(const Grid& g, std::vector<cplx> spectrum) {
    if (spectrum.size() != g.size()) throw Error("spectrum size does not match grid");
    hermitian_project(g, spectrum);
    GridField f;
    f.grid_ = g;
    f.samples_ = inverse_transform(g, spectrum);
    f.spectrum_ = std::move(spectrum);
    return f;
}

GridField GridField::constant(const Grid& g, double value) {
    GridField f(g);
    std::fill(f.samples_.begin(), f.samples_.end(), value);
    f.spectrum_[0] = value;
    return f;
}

GridField GridField::from_function(const Grid& g, const std::function<double(double, double)>& fn) {
    std::vector<double> s(g.size());
    for (std::size_t idx = 0; idx < s.size(); ++idx) {
        if (g.d == 1) {
            s[idx] = fn(g.coordinate(static_cast<int>(idx)), 0.0);
        } else {
            s[idx] = fn(g.coordinate(static_cast<int>(idx / g.n)), g.coordinate(static_cast<int>(idx % g.n)));
        }
    }
    return from_samples(g, std::move(s));
}

GridField& GridField::operator+=(const GridField& o) {
    require_same_grid(grid_, o.grid_);
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        samples_[i] += o.samples_[i];
        spectrum_[i] += o.spectrum_[i];
    }
    return *this;
}

GridField& GridField::operator-=(const GridField& o) {
    require_same_grid(grid_, o.grid_);
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        samples_[i] -= o.samples_[i];
        spectrum_[i] -= o.spectrum_[i];
    }
    return *this;
}

GridField& GridField::operator*=(double a) {
    for (auto& v : samples_) v *= a;
    for (auto& z : spectrum_) z *= a;
    return *this;
}

VecField::VecField(const Grid& g) : comp(g.d, GridField(g)) {}

VecField::VecField(std::vector<GridField> c) : comp(std::move(c)) {
    if (comp.empty()) throw Error("vector field needs at least one component");
    for (const auto& f : comp) require_same_grid(comp.front().grid(), f.grid());
}

VecField& VecField::operator+=(const VecField& o) {
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] += o.comp[i];
    return *this;
}

VecField& VecField::operator-=(const VecField& o) {
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] -= o.comp[i];
    return *this;
}

VecField& VecField::operator*=(double a) {
    for (auto& f : comp) f *= a;
    return *this;
}

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw Error("fields live on different grids");
}

GridField transform(const Grid& g, std::vector<double> samples) {
    return GridField::from_samples(g, std::move(samples));
}

std::vector<double> inverse_transform(const Grid& g, std::span<const cplx> spectrum) {
    std::vector<cplx> out(g.size());
    fft::backward(g, spectrum.data(), out.data());
    std::vector<double> s(g.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = out[i].real();
    return s;
}

double lp_norm_samples(const Grid& g, std::span<const double> samples, double p) {
    if (!(p >= 1.0)) throw Error("lp_norm requires p >= 1");
    if (std::isinf(p)) return kernels::max_abs(samples);
    const double s = kernels::sum_abs_pow(samples, p);
    return std::pow(g.cell_volume() * s, 1.0 / p);
}

double lp_norm(const GridField& f, double p) { return lp_norm_samples(f.grid(), f.samples(), p); }

double lp_norm(const VecField& v, double p) {
    if (v.dim() == 1) return lp_norm(v[0], p);
    std::vector<double> mag(v.grid().size(), 0.0);
    for (const auto& c : v.comp) {
        auto s = c.samples();
        for (std::size_t i = 0; i < mag.size(); ++i) mag[i] += s[i] * s[i];
    }
    for (auto& m : mag) m = std::sqrt(m);
    return lp_norm_samples(v.grid(), mag, p);
}

GridField fourier_multiplier(const GridField& f, const Symbol& m) {
    const auto& geo = geometry(f.grid());
    std::vector<cplx> sym(f.size());
    for (std::size_t i = 0; i < sym.size(); ++i) sym[i] = m(geo.xi[i]);
    return apply_symbol(f, std::span<const cplx>(sym));
}

GridField radial_multiplier(const GridField& f, const RadialSymbol& m) {
    const auto& geo = geometry(f.grid());
    std::vector<double> sym(f.size());
    kernels::evaluate(geo.radius, m, sym);
    return apply_symbol(f, std::span<const double>(sym));
}

GridField apply_symbol(const GridField& f, std::span<const double> m) {
    std::vector<cplx> out(f.size());
    kernels::multiply(f.spectrum(), m, out);
    return GridField::from_spectrum(f.grid(), std::move(out));
}

GridField apply_symbol(const GridField& f, std::span<const cplx> m) {
    std::vector<cplx> out(f.size());
    kernels::multiply(f.spectrum(), m, out);
    return GridField::from_spectrum(f.grid(), std::move(out));
}

GridField partial(const GridField& f, int axis) {
    const auto& g = f.grid();
    if (axis < 0 || axis >= g.d) throw Error("derivative axis out of range");
    const auto& geo = geometry(g);
    std::vector<cplx> sym(f.size());
    for (std::size_t i = 0; i < sym.size(); ++i) {
        // The unpaired Nyquist mode has no real derivative; drop it.
        sym[i] = geo.nyquist[i] ? cplx(0.0) : cplx(0.0, geo.xi[i][axis]);
    }
    return apply_symbol(f, std::span<const cplx>(sym));
}

VecField gradient(const GridField& f) {
    std::vector<GridField> c;
    for (int a = 0; a < f.grid().d; ++a) c.push_back(partial(f, a));
    return VecField(std::move(c));
}

GridField divergence(const VecField& v) {
    GridField out = partial(v[0], 0);
    for (int a = 1; a < v.dim(); ++a) out += partial(v[a], a);
    return out;
}

GridField laplacian(const GridField& f) {
    return radial_multiplier(f, [](double r) { return -r * r; });
}

GridField heat(const GridField& f, double mu_t) {
    return radial_multiplier(f, [mu_t](double r) { return std::exp(-mu_t * r * r); });
}

GridField dealias(const GridField& f) {
    return apply_symbol(f, std::span<const double>(geometry(f.grid()).keep));
}

VecField dealias(const VecField& v) {
    std::vector<GridField> c;
    for (const auto& f : v.comp) c.push_back(dealias(f));
    return VecField(std::move(c));
}

bool is_dealiased(const GridField& f, double tol) {
    const auto& geo = geometry(f.grid());
    auto s = f.spectrum();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (geo.keep[i] == 0.0 && std::abs(s[i]) > tol) return false;
    }
    return true;
}

GridField dealiased_from_samples(const Grid& g, std::vector<double> samples) {
    if (samples.size() != g.size()) throw Error("sample count does not match grid");
    auto spec = forward_real(g, samples);
    const auto& geo = geometry(g);
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= geo.keep[i];
    return GridField::from_spectrum(g, std::move(spec));
}

GridField raw_product(const GridField& f, const GridField& g) {
    require_same_grid(f.grid(), g.grid());
    std::vector<double> s(f.size());
    kernels::product(f.samples(), g.samples(), s);
    return GridField::from_samples(f.grid(), std::move(s));
}

GridField product(const GridField& f, const GridField& g) {
    require_same_grid(f.grid(), g.grid());
    const GridField ft = is_dealiased(f) ? f : dealias(f);
    const GridField gt = is_dealiased(g) ? g : dealias(g);
    std::vector<double> s(f.size());
    kernels::product(ft.samples(), gt.samples(), s);
    return dealiased_from_samples(f.grid(), std::move(s));
}

double max_abs(const GridField& f) { return kernels::max_abs(f.samples()); }

double min_value(const GridField& f) { return *std::min_element(f.samples().begin(), f.samples().end()); }

double max_value(const GridField& f) { return *std::max_element(f.samples().begin(), f.samples().end()); }

double max_abs(const VecField& v) {
    if (v.dim() == 1) return max_abs(v[0]);
    double m = 0.0;
    const std::size_t N = v.grid().size();
    for (std::size_t i = 0; i < N; ++i) {
        double s = 0.0;
        for (const auto& c : v.comp) s += c.samples()[i] * c.samples()[i];
        m = std::max(m, std::sqrt(s));
    }
    return m;
}

double parseval_energy(const GridField& f) {
    double s = 0.0;
    for (const auto& z : f.spectrum()) s += std::norm(z);
    return std::pow(f.grid().L, f.grid().d) * s;
}

}  // namespace hybesov
