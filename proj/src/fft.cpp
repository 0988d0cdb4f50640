#include "shearscat/fft.hpp"

#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace shearscat::fft {

namespace {

std::mutex plan_mutex;

fftw_plan plan_for(int n0, int n1, int sign) {
    // FFTW plan creation is not thread safe; executing a cached plan on new
    // arrays is. FFTW_UNALIGNED removes the alignment constraint on the
    // new-array execute path.
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard lock(plan_mutex);
    auto key = std::make_tuple(n0, n1, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<fftw_complex> tmp_in(static_cast<std::size_t>(n0) * n1);
    std::vector<fftw_complex> tmp_out(static_cast<std::size_t>(n0) * n1);
    fftw_plan p = fftw_plan_dft_2d(n0, n1, tmp_in.data(), tmp_out.data(), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::bad_alloc();
    cache.emplace(key, p);
    return p;
}

void execute(int n0, int n1, int sign, const std::complex<double>* in, std::complex<double>* out) {
    fftw_plan p = plan_for(n0, n1, sign);
    // The transform is out-of-place; when in == out FFTW still handles it
    // only for plans created in-place, so stage through a copy.
    if (in == out) {
        std::vector<std::complex<double>> tmp(in, in + static_cast<std::size_t>(n0) * n1);
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                         reinterpret_cast<fftw_complex*>(out));
    } else {
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }
}

} // namespace

void forward_2d(int n0, int n1, const std::complex<double>* in, std::complex<double>* out) {
    execute(n0, n1, FFTW_FORWARD, in, out);
}

void inverse_2d(int n0, int n1, const std::complex<double>* in, std::complex<double>* out) {
    execute(n0, n1, FFTW_BACKWARD, in, out);
    const double scale = 1.0 / (static_cast<double>(n0) * n1);
    const std::size_t total = static_cast<std::size_t>(n0) * n1;
    for (std::size_t k = 0; k < total; ++k) out[k] *= scale;
}

} // namespace shearscat::fft
