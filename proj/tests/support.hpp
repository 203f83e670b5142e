// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

// Shared test oracles. Everything here is computed independently of the
// library paths under test: spectral lines via direct correlation, FIR
// convolution via the defining sum, and intercept extrapolation via the
// textbook two-tone procedure.

#ifndef FDX_TESTS_SUPPORT_HPP
#define FDX_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "fdx/signal.hpp"

namespace fdx_test {

using fdx::cplx;

/// Complex amplitude of the e^{+j2pi k n / n_total} component over the whole
/// block (exact for integer-bin tones).
inline cplx dft_line(const std::vector<cplx>& x, int k) {
    const double w = 2.0 * M_PI * k / static_cast<double>(x.size());
    cplx acc(0.0, 0.0);
    for (std::size_t n = 0; n < x.size(); ++n)
        acc += x[n] * std::polar(1.0, -w * static_cast<double>(n));
    return acc / static_cast<double>(x.size());
}

/// Power (library convention, dBm) of the real spectral line at bin k of a
/// real signal: a cosine of amplitude a contributes a/2 to the positive bin
/// and carries a^2/2 mean-square power.
inline double real_line_dbm(const std::vector<cplx>& x, int k) {
    const double half_amp = std::abs(dft_line(x, k));
    return fdx::watts_to_dbm(2.0 * half_amp * half_amp);
}

struct TwoToneResult {
    double fundamental_dbm = 0.0;
    double im2_line_dbm = 0.0;
    double im3_line_dbm = 0.0;
    double iip2_est_dbm = 0.0;
    double iip3_est_dbm = 0.0;
};

/// Classic two-tone intercept measurement: feeds two equal real tones of
/// per_tone_dbm each through the device and extrapolates
///   IIP3 = P_in + (P_fund - P_im3)/2,   IIP2 = P_in + (P_fund - P_im2).
/// Tone bins are chosen free of harmonic collisions.
inline TwoToneResult two_tone_probe(
    const std::function<fdx::ComplexSignal(const fdx::ComplexSignal&)>& device,
    double per_tone_dbm) {
    const int n = 8192;
    const int k1 = 701, k2 = 757;
    const double amp = std::sqrt(2.0 * fdx::dbm_to_watts(per_tone_dbm));

    fdx::ComplexSignal x;
    x.sample_rate_hz = 1.0;
    x.samples.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i);
        x.samples[static_cast<std::size_t>(i)] =
            cplx(amp * std::cos(2.0 * M_PI * k1 * t / n) + amp * std::cos(2.0 * M_PI * k2 * t / n), 0.0);
    }

    const fdx::ComplexSignal y = device(x);
    TwoToneResult r;
    r.fundamental_dbm = real_line_dbm(y.samples, k1);
    r.im2_line_dbm = real_line_dbm(y.samples, k2 - k1);
    r.im3_line_dbm = real_line_dbm(y.samples, 2 * k1 - k2);
    r.iip3_est_dbm = per_tone_dbm + 0.5 * (r.fundamental_dbm - r.im3_line_dbm);
    r.iip2_est_dbm = per_tone_dbm + (r.fundamental_dbm - r.im2_line_dbm);
    return r;
}

/// Defining-sum FIR convolution, truncated to the input length.
inline std::vector<cplx> direct_convolution(const std::vector<cplx>& x, const std::vector<cplx>& h) {
    std::vector<cplx> out(x.size(), cplx(0.0, 0.0));
    for (std::size_t n = 0; n < x.size(); ++n)
        for (std::size_t k = 0; k < h.size() && k <= n; ++k) out[n] += h[k] * x[n - k];
    return out;
}

/// Normalised cross-correlation peak of two blocks over lags [-max_lag, max_lag].
inline double cross_correlation_peak(const std::vector<cplx>& a, const std::vector<cplx>& b,
                                     int max_lag) {
    double ea = 0.0, eb = 0.0;
    for (const cplx& v : a) ea += std::norm(v);
    for (const cplx& v : b) eb += std::norm(v);
    const double denom = std::sqrt(ea * eb);
    double peak = 0.0;
    const int n = static_cast<int>(std::min(a.size(), b.size()));
    for (int lag = -max_lag; lag <= max_lag; ++lag) {
        cplx acc(0.0, 0.0);
        for (int i = 0; i < n; ++i) {
            const int j = i + lag;
            if (j < 0 || j >= n) continue;
            acc += a[static_cast<std::size_t>(i)] * std::conj(b[static_cast<std::size_t>(j)]);
        }
        peak = std::max(peak, std::abs(acc) / denom);
    }
    return peak;
}

/// Pearson-style magnitude correlation of two complex blocks.
inline double correlation_magnitude(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx acc(0.0, 0.0);
    double ea = 0.0, eb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * std::conj(b[i]);
        ea += std::norm(a[i]);
        eb += std::norm(b[i]);
    }
    return std::abs(acc) / std::sqrt(ea * eb);
}

} // namespace fdx_test

#endif
