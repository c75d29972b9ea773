#include "hybesov/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace hybesov::kernels::serial {

void for_range(std::size_t n, const RangeBody& body) {
    if (n > 0) body(0, n);
}

void multiply(std::span<const cplx> a, std::span<const double> m, std::span<cplx> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * m[i];
}

void multiply(std::span<const cplx> a, std::span<const cplx> m, std::span<cplx> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * m[i];
}

void product(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void evaluate(std::span<const double> x, const std::function<double(double)>& f, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
}

double sum_abs_pow(std::span<const double> x, double p) {
    double s = 0.0;
    if (p == 2.0) {
        for (double v : x) s += v * v;
    } else if (p == 1.0) {
        for (double v : x) s += std::abs(v);
    } else {
        for (double v : x) s += std::pow(std::abs(v), p);
    }
    return s;
}

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace hybesov::kernels::serial
