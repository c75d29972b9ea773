#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

// Data-parallel inner loops. Every kernel exists twice: a plain serial
// reference and an OpenMP version. Reductions in the OpenMP path use fixed
// blocks summed in index order, so results do not depend on the thread count.

namespace hybesov::kernels {

using cplx = std::complex<double>;
using RangeBody = std::function<void(std::size_t begin, std::size_t end)>;

inline constexpr std::size_t reduction_block = 4096;

namespace serial {
void for_range(std::size_t n, const RangeBody& body);
void multiply(std::span<const cplx> a, std::span<const double> m, std::span<cplx> out);
void multiply(std::span<const cplx> a, std::span<const cplx> m, std::span<cplx> out);
void product(std::span<const double> a, std::span<const double> b, std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void evaluate(std::span<const double> x, const std::function<double(double)>& f, std::span<double> out);
double sum_abs_pow(std::span<const double> x, double p);
double max_abs(std::span<const double> x);
}  // namespace serial

namespace omp {
void for_range(std::size_t n, const RangeBody& body);
void multiply(std::span<const cplx> a, std::span<const double> m, std::span<cplx> out);
void multiply(std::span<const cplx> a, std::span<const cplx> m, std::span<cplx> out);
void product(std::span<const double> a, std::span<const double> b, std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void evaluate(std::span<const double> x, const std::function<double(double)>& f, std::span<double> out);
double sum_abs_pow(std::span<const double> x, double p);
double max_abs(std::span<const double> x);
}  // namespace omp

enum class Backend { serial, omp };

// Process-wide switch used by the dispatchers below (tests flip it to compare
// whole pipelines).
void set_backend(Backend b);
Backend backend();

// Reads HYBESOV_THREADS and caps the OpenMP team size. Returns the cap in effect.
int configure_threads_from_env();
int max_threads();

void for_range(std::size_t n, const RangeBody& body);
void multiply(std::span<const cplx> a, std::span<const double> m, std::span<cplx> out);
void multiply(std::span<const cplx> a, std::span<const cplx> m, std::span<cplx> out);
void product(std::span<const double> a, std::span<const double> b, std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void evaluate(std::span<const double> x, const std::function<double(double)>& f, std::span<double> out);
double sum_abs_pow(std::span<const double> x, double p);
double max_abs(std::span<const double> x);

}  // namespace hybesov::kernels
