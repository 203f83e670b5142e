// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#include "fdx/estimation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fdx/linalg.hpp"

namespace fdx {

namespace {

Eigen::VectorXcd observation_window(const ComplexSignal& y, int m, int n) {
    if (static_cast<std::size_t>(n) > y.size())
        throw std::invalid_argument("estimation: observation length exceeds capture length");
    Eigen::VectorXcd out(n - m + 1);
    for (int i = m - 1; i < n; ++i) out(i - (m - 1)) = y.samples[static_cast<std::size_t>(i)];
    return out;
}

} // namespace

LinearChannelEstimate estimate_linear_channel(const ComplexSignal& y, const TxFrame& tx,
                                              int channel_len, int observation_len) {
    const Eigen::MatrixXcd x_tot =
        build_stacked_convolution_matrix(tx.antennas, channel_len, observation_len);
    const Eigen::VectorXcd rhs = observation_window(y, channel_len, observation_len);

    LinearChannelEstimate est;
    est.n_tx = static_cast<int>(tx.antennas.size());
    est.channel_len = channel_len;
    est.taps = least_squares(x_tot, rhs);
    return est;
}

ComplexSignal reconstruct_rx_input(const TxFrame& tx, const LinearChannelEstimate& est) {
    if (static_cast<int>(tx.antennas.size()) != est.n_tx)
        throw std::invalid_argument("reconstruct_rx_input: estimate antenna count mismatch");
    ComplexSignal out;
    out.sample_rate_hz = tx.antennas.front().sample_rate_hz;
    out.samples.assign(tx.antennas.front().size(), cplx(0.0, 0.0));
    for (int j = 0; j < est.n_tx; ++j) {
        std::vector<cplx> taps(static_cast<std::size_t>(est.channel_len));
        for (int k = 0; k < est.channel_len; ++k)
            taps[static_cast<std::size_t>(k)] = est.taps(j * est.channel_len + k);
        const ComplexSignal part = convolve_fir(tx.antennas[static_cast<std::size_t>(j)], taps);
        for (std::size_t n = 0; n < out.size(); ++n) out.samples[n] += part.samples[n];
    }
    return out;
}

Eigen::MatrixXcd build_nonlinear_basis(const ComplexSignal& x_in, int channel_len,
                                       int observation_len) {
    const Eigen::VectorXcd x = observation_window(x_in, channel_len, observation_len);
    Eigen::MatrixXcd basis(x.rows(), 4);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const cplx v = x(i);
        const cplx conj_v = std::conj(v);
        basis(i, 0) = v;
        basis(i, 1) = std::norm(v);
        basis(i, 2) = std::norm(v) * v;
        basis(i, 3) = conj_v * conj_v * conj_v;
    }
    return basis;
}

NonlinearCoeffs estimate_nonlinear_coeffs(const ComplexSignal& y, const ComplexSignal& x_in,
                                          int channel_len, int observation_len) {
    const Eigen::MatrixXcd basis = build_nonlinear_basis(x_in, channel_len, observation_len);
    const Eigen::VectorXcd rhs = observation_window(y, channel_len, observation_len);
    const Eigen::VectorXcd a = least_squares(basis, rhs);
    NonlinearCoeffs coeffs;
    for (int i = 0; i < 4; ++i) coeffs.a[static_cast<std::size_t>(i)] = a(i);
    return coeffs;
}

ComplexSignal digital_cancel(const ComplexSignal& y, const ComplexSignal& x_in,
                             const NonlinearCoeffs& coeffs, int channel_len,
                             int observation_len, bool linear_only) {
    const Eigen::MatrixXcd basis = build_nonlinear_basis(x_in, channel_len, observation_len);
    const Eigen::VectorXcd rhs = observation_window(y, channel_len, observation_len);

    Eigen::VectorXcd replica;
    if (linear_only) {
        replica = basis.col(0) * coeffs.a[0];
    } else {
        Eigen::Vector4cd a;
        for (int i = 0; i < 4; ++i) a(i) = coeffs.a[static_cast<std::size_t>(i)];
        replica = basis * a;
    }

    ComplexSignal out;
    out.sample_rate_hz = y.sample_rate_hz;
    out.samples.resize(static_cast<std::size_t>(rhs.rows()));
    for (Eigen::Index i = 0; i < rhs.rows(); ++i)
        out.samples[static_cast<std::size_t>(i)] = rhs(i) - replica(i);
    return out;
}

ComplexSignal subtract_linear_replica(const ComplexSignal& y, const TxFrame& tx,
                                      const LinearChannelEstimate& est, int observation_len) {
    const int m = est.channel_len;
    const int n = observation_len;
    const Eigen::MatrixXcd x_tot = build_stacked_convolution_matrix(tx.antennas, m, n);
    const Eigen::VectorXcd rhs = observation_window(y, m, n);
    const Eigen::VectorXcd replica = x_tot * est.taps;

    ComplexSignal out;
    out.sample_rate_hz = y.sample_rate_hz;
    out.samples.resize(static_cast<std::size_t>(rhs.rows()));
    for (Eigen::Index i = 0; i < rhs.rows(); ++i)
        out.samples[static_cast<std::size_t>(i)] = rhs(i) - replica(i);
    return out;
}

ComplexSignal trim_to_window(const ComplexSignal& x, int channel_len, int observation_len) {
    const Eigen::VectorXcd w = observation_window(x, channel_len, observation_len);
    ComplexSignal out;
    out.sample_rate_hz = x.sample_rate_hz;
    out.samples.assign(w.data(), w.data() + w.rows());
    return out;
}

double measure_sinr(const ComplexSignal& residual, const ComplexSignal& soi_reference) {
    const ComplexSignal interference = subtract(residual, soi_reference);
    return power_dbm(soi_reference) - power_dbm(interference);
}

std::string format_estimate(const LinearChannelEstimate& est) {
    std::ostringstream out;
    out.precision(9);
    out << "linear channel estimate: n_tx=" << est.n_tx << " channel_len=" << est.channel_len << '\n';
    for (int j = 0; j < est.n_tx; ++j)
        for (int k = 0; k < est.channel_len; ++k) {
            const cplx v = est.taps(j * est.channel_len + k);
            out << "  h[tx=" << j << "][" << k << "] = " << v.real() << (v.imag() < 0 ? " - " : " + ")
                << std::abs(v.imag()) << "j\n";
        }
    return out.str();
}

std::string format_coeffs(const NonlinearCoeffs& coeffs) {
    static const char* names[4] = {"a1 (linear)", "a2 (square-law)", "a3 (cubic)",
                                   "a4 (conjugate cubic)"};
    std::ostringstream out;
    out.precision(9);
    out << "nonlinear model coefficients:\n";
    for (int i = 0; i < 4; ++i) {
        const cplx v = coeffs.a[static_cast<std::size_t>(i)];
        out << "  " << names[i] << " = " << v.real() << (v.imag() < 0 ? " - " : " + ")
            << std::abs(v.imag()) << "j\n";
    }
    return out.str();
}

} // namespace fdx
