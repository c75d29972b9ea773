#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace hybesov {

using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double infinity = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Periodic box [0,L)^d with n points per axis. Data are row-major with axis 0
// slowest; spectral arrays use FFTW ordering (k = i for i < n/2, else i - n).
struct Grid {
    int d = 1;
    int n = 64;
    double L = two_pi * 64.0;

    Grid() = default;
    Grid(int d, int n, double L = two_pi * 64.0);

    std::size_t size() const;
    double dx() const { return L / n; }
    double cell_volume() const;
    int wave_index(int i) const { return i < n / 2 ? i : i - n; }
    double wavenumber(int k) const { return two_pi * k / L; }
    double min_wavenumber() const { return two_pi / L; }
    // Largest |ξ| over all stored modes.
    double max_wavenumber() const;
    // 2/3 rule: modes with |k| <= kmax on every axis survive.
    int dealias_kmax() const { return (n - 1) / 3; }
    // Largest |ξ| among retained (dealiased) modes.
    double max_dealiased_wavenumber() const;
    double coordinate(int i) const { return i * dx(); }

    bool operator==(const Grid& o) const { return d == o.d && n == o.n && L == o.L; }
};

// Per-mode wavevector data, computed once per grid and shared.
struct GridGeometry {
    std::vector<std::array<double, 2>> xi;  // components beyond d are zero
    std::vector<double> radius;             // |ξ|
    std::vector<double> keep;               // 1 on retained modes, 0 elsewhere
    std::vector<std::size_t> mirror;        // index of -k
    std::vector<unsigned char> nyquist;     // 1 if any axis index equals n/2
    std::vector<double> distinct_radii;     // sorted positive |ξ| values present
};

const GridGeometry& geometry(const Grid& g);

// Real field held as samples plus its spectrum under f(x) = Σ f̂(k) e^{iξ_k·x}.
class GridField {
public:
    GridField() = default;
    explicit GridField(const Grid& g);

    static GridField from_samples(const Grid& g, std::vector<double> samples);
    // The spectrum is projected onto its Hermitian part so that the pair
    // (samples, spectrum) describes the same real field.
    static GridField from_spectrum(const Grid& g, std::vector<cplx> spectrum);
    static GridField constant(const Grid& g, double value);
    static GridField from_function(const Grid& g, const std::function<double(double, double)>& f);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }
    std::span<const double> samples() const { return samples_; }
    std::span<const cplx> spectrum() const { return spectrum_; }
    double mean() const { return spectrum_.empty() ? 0.0 : spectrum_[0].real(); }

    GridField& operator+=(const GridField& o);
    GridField& operator-=(const GridField& o);
    GridField& operator*=(double a);

    friend GridField operator+(GridField a, const GridField& b) { return a += b; }
    friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
    friend GridField operator*(GridField a, double s) { return a *= s; }
    friend GridField operator*(double s, GridField a) { return a *= s; }
    friend GridField operator-(GridField a) { return a *= -1.0; }

private:
    Grid grid_;
    std::vector<double> samples_;
    std::vector<cplx> spectrum_;
};

struct VecField {
    std::vector<GridField> comp;

    VecField() = default;
    explicit VecField(const Grid& g);
    explicit VecField(std::vector<GridField> c);

    const Grid& grid() const { return comp.front().grid(); }
    int dim() const { return static_cast<int>(comp.size()); }
    GridField& operator[](int i) { return comp[i]; }
    const GridField& operator[](int i) const { return comp[i]; }

    VecField& operator+=(const VecField& o);
    VecField& operator-=(const VecField& o);
    VecField& operator*=(double a);
    friend VecField operator+(VecField a, const VecField& b) { return a += b; }
    friend VecField operator-(VecField a, const VecField& b) { return a -= b; }
    friend VecField operator*(VecField a, double s) { return a *= s; }
    friend VecField operator*(double s, VecField a) { return a *= s; }
};

void require_same_grid(const Grid& a, const Grid& b);

GridField transform(const Grid& g, std::vector<double> samples);
std::vector<double> inverse_transform(const Grid& g, std::span<const cplx> spectrum);

// Rectangle-rule ((L/n)^d Σ|f|^p)^{1/p}; p = infinity gives max|f|.
double lp_norm(const GridField& f, double p);
// Same with the pointwise Euclidean magnitude of a vector field.
double lp_norm(const VecField& v, double p);
double lp_norm_samples(const Grid& g, std::span<const double> samples, double p);

using Symbol = std::function<cplx(const std::array<double, 2>& xi)>;
using RadialSymbol = std::function<double(double r)>;

GridField fourier_multiplier(const GridField& f, const Symbol& m);
GridField radial_multiplier(const GridField& f, const RadialSymbol& m);
// Multiplies by precomputed per-mode values.
GridField apply_symbol(const GridField& f, std::span<const double> m);
GridField apply_symbol(const GridField& f, std::span<const cplx> m);

GridField partial(const GridField& f, int axis);
VecField gradient(const GridField& f);
GridField divergence(const VecField& v);
GridField laplacian(const GridField& f);
// e^{μtΔ} f
GridField heat(const GridField& f, double mu_t);

GridField dealias(const GridField& f);
VecField dealias(const VecField& v);
bool is_dealiased(const GridField& f, double tol = 0.0);
// Samples of a pointwise expression, transformed and truncated to the 2/3 band.
GridField dealiased_from_samples(const Grid& g, std::vector<double> samples);
// Truncates both factors, multiplies pointwise, truncates the result.
GridField product(const GridField& f, const GridField& g);
// Pointwise product with no truncation (aliasing allowed).
GridField raw_product(const GridField& f, const GridField& g);

double max_abs(const GridField& f);
double min_value(const GridField& f);
double max_value(const GridField& f);
double max_abs(const VecField& v);
// L^d Σ_k |f̂(k)|^2
double parseval_energy(const GridField& f);

}  // namespace hybesov
