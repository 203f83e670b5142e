// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#include "fdx/linalg.hpp"

#include <cmath>
#include <sstream>

namespace fdx {

Eigen::MatrixXcd build_convolution_matrix(const ComplexSignal& x, int channel_len, int observation_len) {
    const int m = channel_len;
    const int n = observation_len;
    if (m < 1) throw std::invalid_argument("build_convolution_matrix: channel length must be >= 1");
    if (n < m) throw std::invalid_argument("build_convolution_matrix: observation length shorter than channel");
    if (static_cast<std::size_t>(n) > x.size())
        throw std::invalid_argument("build_convolution_matrix: observation length exceeds signal length");

    Eigen::MatrixXcd out(n - m + 1, m);
    for (int r = 0; r <= n - m; ++r)
        for (int c = 0; c < m; ++c)
            out(r, c) = x.samples[static_cast<std::size_t>(m - 1 + r - c)];
    return out;
}

Eigen::MatrixXcd build_stacked_convolution_matrix(const std::vector<ComplexSignal>& streams,
                                                  int channel_len, int observation_len) {
    if (streams.empty())
        throw std::invalid_argument("build_stacked_convolution_matrix: no streams");
    const int rows = observation_len - channel_len + 1;
    Eigen::MatrixXcd out(rows, channel_len * static_cast<int>(streams.size()));
    for (std::size_t j = 0; j < streams.size(); ++j)
        out.middleCols(static_cast<int>(j) * channel_len, channel_len) =
            build_convolution_matrix(streams[j], channel_len, observation_len);
    return out;
}

Eigen::VectorXcd least_squares(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& y) {
    if (a.rows() < a.cols())
        throw std::invalid_argument("least_squares: system is underdetermined");
    if (a.rows() != y.rows())
        throw std::invalid_argument("least_squares: row count of A and y differ");

    // Unit-norm column equilibration so the condition estimate reflects
    // genuine collinearity rather than column scaling.
    const Eigen::Index cols = a.cols();
    Eigen::VectorXd col_scale(cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        const double nrm = a.col(c).norm();
        col_scale(c) = nrm > 0.0 ? nrm : 1.0;
    }
    Eigen::MatrixXcd an = a * col_scale.cwiseInverse().asDiagonal();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(an);
    const Eigen::VectorXcd rdiag = qr.matrixR().diagonal();
    const double rmax = rdiag.cwiseAbs().maxCoeff();
    const double rmin = rdiag.cwiseAbs().minCoeff();
    const double cond = rmin > 0.0 ? rmax / rmin : std::numeric_limits<double>::infinity();

    constexpr double kLoadingThreshold = 1e12;
    constexpr double kSingularThreshold = 1e15;

    if (cond > kSingularThreshold) {
        std::ostringstream msg;
        msg << "least_squares: rank-deficient system, equilibrated condition estimate "
            << cond << " exceeds " << kSingularThreshold;
        throw SingularMatrixError(msg.str());
    }

    Eigen::VectorXcd hn;
    if (cond > kLoadingThreshold) {
        // Diagonal loading on the normal equations; the loading level follows
        // trace(A^H A)/cols of the equilibrated system (== 1 per column).
        Eigen::MatrixXcd gram = an.adjoint() * an;
        const double eps = 1e-12 * gram.trace().real() / static_cast<double>(cols);
        gram.diagonal().array() += eps;
        hn = Eigen::LDLT<Eigen::MatrixXcd>(gram).solve(an.adjoint() * y);
    } else {
        hn = qr.solve(y);
    }
    return col_scale.cwiseInverse().asDiagonal() * hn;
}

ComplexSignal convolve_fir(const ComplexSignal& x, const std::vector<cplx>& taps) {
    ComplexSignal out;
    out.sample_rate_hz = x.sample_rate_hz;
    out.samples.assign(x.size(), cplx(0.0, 0.0));
    const std::size_t n = x.size();
    for (std::size_t k = 0; k < taps.size(); ++k) {
        const cplx t = taps[k];
        if (t == cplx(0.0, 0.0)) continue;
        for (std::size_t i = k; i < n; ++i) out.samples[i] += t * x.samples[i - k];
    }
    return out;
}

} // namespace fdx
