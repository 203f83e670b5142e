// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#include "fdx/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace fdx {
namespace {

// FFTW planning is not thread safe; execution of a cached plan on caller
// buffers is. Plans are created with FFTW_UNALIGNED so fftw_execute_dft may
// run on arbitrary std::vector storage.
class PlanCache {
public:
    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<fftw_complex> scratch_in(n), scratch_out(n);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), scratch_in.data(), scratch_out.data(),
                                       sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fft: fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

std::vector<std::complex<double>> run(const std::vector<std::complex<double>>& x, int sign) {
    if (x.empty()) throw std::invalid_argument("fft: empty input");
    std::vector<std::complex<double>> out(x.size());
    fftw_plan p = cache().get(x.size(), sign);
    // std::complex<double> is layout compatible with fftw_complex.
    fftw_execute_dft(p,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(x.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

} // namespace

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x) {
    return run(x, FFTW_FORWARD);
}

std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x) {
    std::vector<std::complex<double>> out = run(x, FFTW_BACKWARD);
    const double inv = 1.0 / static_cast<double>(x.size());
    for (auto& v : out) v *= inv;
    return out;
}

} // namespace fdx
