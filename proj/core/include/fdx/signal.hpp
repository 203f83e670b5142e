// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#ifndef FDX_SIGNAL_HPP
#define FDX_SIGNAL_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace fdx {

using cplx = std::complex<double>;

/// A finite block of complex baseband samples at a fixed sample rate.
///
/// Power convention used throughout the library: the mean of |x|^2 over the
/// block is the signal power in watts into the reference impedance, so
/// power_dbm() == 10*log10(mean|x|^2) + 30. All dBm bookkeeping (intercept
/// points, noise floors, ADC full scale) relies on this convention.
struct ComplexSignal {
    std::vector<cplx> samples;
    double sample_rate_hz = 0.0;

    ComplexSignal() = default;
    ComplexSignal(std::vector<cplx> s, double rate)
        : samples(std::move(s)), sample_rate_hz(rate) {}

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    cplx& operator[](std::size_t i) { return samples[i]; }
    const cplx& operator[](std::size_t i) const { return samples[i]; }
};

// dB / linear conversions. "linear" is a power ratio or watts, never amplitude.
double db_to_linear(double db);
double linear_to_db(double lin);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Mean-square power of the block in watts. Throws std::invalid_argument on
/// an empty signal.
double power_watts(const ComplexSignal& x);

/// Mean-square power in dBm. An all-zero signal returns -infinity, which is
/// the documented floor sentinel for "no power".
double power_dbm(const ComplexSignal& x);

/// Multiplies every sample by a real amplitude gain g > 0, so
/// power_dbm(scale(x, g)) == power_dbm(x) + 20*log10(g).
ComplexSignal scale(const ComplexSignal& x, double amplitude_gain);

/// Rescales the block so its measured power is exactly target_dbm.
/// Throws std::invalid_argument if the input has no energy to scale.
ComplexSignal scale_to_dbm(const ComplexSignal& x, double target_dbm);

ComplexSignal add(const ComplexSignal& a, const ComplexSignal& b);
ComplexSignal subtract(const ComplexSignal& a, const ComplexSignal& b);

/// True when every sample is finite (no NaN/Inf in either component).
bool all_finite(const ComplexSignal& x);

/// Peak-to-average power ratio, 10*log10(max|x|^2 / mean|x|^2).
double measure_papr(const ComplexSignal& x);

} // namespace fdx

#endif
