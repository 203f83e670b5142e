// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#include "fdx/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdx {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
    if (watts <= 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(watts) + 30.0;
}

double power_watts(const ComplexSignal& x) {
    if (x.empty()) throw std::invalid_argument("power_watts: empty signal");
    double acc = 0.0;
    for (const cplx& v : x.samples) acc += std::norm(v);
    return acc / static_cast<double>(x.size());
}

double power_dbm(const ComplexSignal& x) { return watts_to_dbm(power_watts(x)); }

ComplexSignal scale(const ComplexSignal& x, double amplitude_gain) {
    if (!(amplitude_gain >= 0.0))
        throw std::invalid_argument("scale: gain must be a nonnegative real");
    ComplexSignal out = x;
    for (cplx& v : out.samples) v *= amplitude_gain;
    return out;
}

ComplexSignal scale_to_dbm(const ComplexSignal& x, double target_dbm) {
    const double p = power_watts(x);
    if (p <= 0.0)
        throw std::invalid_argument("scale_to_dbm: signal has zero power");
    return scale(x, std::sqrt(dbm_to_watts(target_dbm) / p));
}

namespace {
void check_same_shape(const ComplexSignal& a, const ComplexSignal& b, const char* op) {
    if (a.size() != b.size())
        throw std::invalid_argument(std::string(op) + ": length mismatch");
}
} // namespace

ComplexSignal add(const ComplexSignal& a, const ComplexSignal& b) {
    check_same_shape(a, b, "add");
    ComplexSignal out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += b.samples[i];
    return out;
}

ComplexSignal subtract(const ComplexSignal& a, const ComplexSignal& b) {
    check_same_shape(a, b, "subtract");
    ComplexSignal out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] -= b.samples[i];
    return out;
}

bool all_finite(const ComplexSignal& x) {
    return std::all_of(x.samples.begin(), x.samples.end(), [](const cplx& v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

double measure_papr(const ComplexSignal& x) {
    if (x.empty()) throw std::invalid_argument("measure_papr: empty signal");
    double peak = 0.0;
    double acc = 0.0;
    for (const cplx& v : x.samples) {
        const double p = std::norm(v);
        peak = std::max(peak, p);
        acc += p;
    }
    const double mean = acc / static_cast<double>(x.size());
    if (mean <= 0.0) return 0.0;
    return 10.0 * std::log10(peak / mean);
}

} // namespace fdx
