#include "hybesov/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

namespace hybesov::kernels {

namespace {

std::atomic<Backend> g_backend{Backend::omp};

// Below this size the fork/join overhead dominates.
constexpr std::size_t kParallelMin = 2048;

double block_sum_abs_pow(const double* x, std::size_t n, double p) {
    double s = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    } else if (p == 1.0) {
        for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i]);
    } else {
        for (std::size_t i = 0; i < n; ++i) s += std::pow(std::abs(x[i]), p);
    }
    return s;
}

}  // namespace

namespace omp {

void for_range(std::size_t n, const RangeBody& body) {
    if (n == 0) return;
    const std::size_t chunk = 256;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    if (n < kParallelMin || omp_get_max_threads() == 1 || omp_in_parallel()) {
        body(0, n);
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::size_t c = 0; c < nchunks; ++c) {
        body(c * chunk, std::min(n, (c + 1) * chunk));
    }
}

void multiply(std::span<const cplx> a, std::span<const double> m, std::span<cplx> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) if (a.size() >= kParallelMin)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * m[i];
}

void multiply(std::span<const cplx> a, std::span<const cplx> m, std::span<cplx> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) if (a.size() >= kParallelMin)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * m[i];
}

void product(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) if (a.size() >= kParallelMin)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= kParallelMin)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void evaluate(std::span<const double> x, const std::function<double(double)>& f, std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= kParallelMin)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(x[i]);
}

double sum_abs_pow(std::span<const double> x, double p) {
    const std::size_t nblocks = (x.size() + reduction_block - 1) / reduction_block;
    std::vector<double> partial(nblocks, 0.0);
    const std::ptrdiff_t nb = static_cast<std::ptrdiff_t>(nblocks);
#pragma omp parallel for schedule(static) if (nblocks > 1)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * reduction_block;
        const std::size_t hi = std::min(x.size(), lo + reduction_block);
        partial[b] = block_sum_abs_pow(x.data() + lo, hi - lo, p);
    }
    double s = 0.0;
    for (double v : partial) s += v;
    return s;
}

double max_abs(std::span<const double> x) {
    double m = 0.0;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for reduction(max : m) schedule(static) if (x.size() >= kParallelMin)
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

}  // namespace omp

void set_backend(Backend b) { g_backend.store(b); }
Backend backend() { return g_backend.load(); }

int configure_threads_from_env() {
    if (const char* s = std::getenv("HYBESOV_THREADS")) {
        try {
            int cap = std::stoi(s);
            if (cap >= 1) omp_set_num_threads(cap);
        } catch (...) {
        }
    }
    return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

#define HYBESOV_DISPATCH(call) \
    (backend() == Backend::serial ? serial::call : omp::call)

void for_range(std::size_t n, const RangeBody& body) { HYBESOV_DISPATCH(for_range(n, body)); }
void multiply(std::span<const cplx> a, std::span<const double> m, std::span<cplx> out) {
    HYBESOV_DISPATCH(multiply(a, m, out));
}
void multiply(std::span<const cplx> a, std::span<const cplx> m, std::span<cplx> out) {
    HYBESOV_DISPATCH(multiply(a, m, out));
}
void product(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    HYBESOV_DISPATCH(product(a, b, out));
}
void axpy(double alpha, std::span<const double> x, std::span<double> y) { HYBESOV_DISPATCH(axpy(alpha, x, y)); }
void evaluate(std::span<const double> x, const std::function<double(double)>& f, std::span<double> out) {
    HYBESOV_DISPATCH(evaluate(x, f, out));
}
double sum_abs_pow(std::span<const double> x, double p) { return HYBESOV_DISPATCH(sum_abs_pow(x, p)); }
double max_abs(std::span<const double> x) { return HYBESOV_DISPATCH(max_abs(x)); }

#undef HYBESOV_DISPATCH

}  // namespace hybesov::kernels
