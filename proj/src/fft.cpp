#include "hybesov/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace hybesov::fft {

namespace {

std::mutex g_plan_mutex;
std::map<std::tuple<int, int, int>, fftw_plan> g_plans;

fftw_plan plan_for(const Grid& g, int sign) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto key = std::make_tuple(g.d, g.n, sign);
    auto it = g_plans.find(key);
    if (it != g_plans.end()) return it->second;
    std::vector<int> dims(g.d, g.n);
    std::vector<cplx> a(g.size()), b(g.size());
    fftw_plan p = fftw_plan_dft(g.d, dims.data(), reinterpret_cast<fftw_complex*>(a.data()),
                                reinterpret_cast<fftw_complex*>(b.data()), sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw Error("fftw plan creation failed");
    g_plans.emplace(key, p);
    return p;
}

void run(const Grid& g, int sign, const cplx* in, cplx* out) {
    fftw_plan p = plan_for(g, sign);
    if (in == out) {
        std::vector<cplx> tmp(in, in + g.size());
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()), reinterpret_cast<fftw_complex*>(out));
        return;
    }
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)), reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void forward(const Grid& g, const cplx* in, cplx* out) { run(g, FFTW_FORWARD, in, out); }
void backward(const Grid& g, const cplx* in, cplx* out) { run(g, FFTW_BACKWARD, in, out); }

}  // namespace hybesov::fft
