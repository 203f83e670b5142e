// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "fdx/linalg.hpp"
#include "fdx/rng.hpp"
#include "fdx/signal.hpp"
#include "fdx/waveform.hpp"
#include "support.hpp"

using fdx::ComplexSignal;
using fdx::cplx;

namespace {

ComplexSignal make_signal(std::initializer_list<cplx> vals) {
    return ComplexSignal{std::vector<cplx>(vals), 1.0};
}

ComplexSignal random_signal(std::size_t n, std::uint64_t seed) {
    fdx::Rng rng(seed);
    ComplexSignal x;
    x.sample_rate_hz = 1.0;
    x.samples.resize(n);
    for (cplx& v : x.samples) v = rng.complex_gaussian();
    return x;
}

Eigen::MatrixXcd random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    fdx::Rng rng(seed);
    Eigen::MatrixXcd a(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) a(r, c) = rng.complex_gaussian();
    return a;
}

} // namespace

TEST_CASE("power convention: unit-amplitude block is 30 dBm") {
    ComplexSignal x;
    x.sample_rate_hz = 1.0;
    x.samples.assign(100, cplx(1.0, 0.0));
    CHECK(fdx::power_dbm(x) == doctest::Approx(30.0).epsilon(1e-12));
}

TEST_CASE("power of the all-zero block is the -inf sentinel") {
    ComplexSignal x;
    x.samples.assign(16, cplx(0.0, 0.0));
    const double p = fdx::power_dbm(x);
    CHECK(std::isinf(p));
    CHECK(p < 0.0);
}

TEST_CASE("power_dbm rejects an empty signal") {
    ComplexSignal x;
    CHECK_THROWS_AS(fdx::power_dbm(x), std::invalid_argument);
}

TEST_CASE("OFDM frame scaled to 10 dBm measures 10 dBm") {
    const fdx::TxFrame frame = fdx::generate_frame(fdx::OfdmParams{}, 8, 1, 42);
    const ComplexSignal scaled = fdx::scale_to_dbm(frame.antennas[0], 10.0);
    CHECK(fdx::power_dbm(scaled) == doctest::Approx(10.0).epsilon(1e-3));
}

TEST_CASE("scaling by real g moves power by 20 log10 g") {
    const ComplexSignal x = random_signal(512, 9);
    const double before = fdx::power_dbm(x);
    for (double g : {0.25, 1.0, 3.7, 11.0}) {
        CHECK(fdx::power_dbm(fdx::scale(x, g)) ==
              doctest::Approx(before + 20.0 * std::log10(g)).epsilon(1e-12));
    }
}

TEST_CASE("dBm / linear round trip is exact to 1e-12 relative") {
    for (double dbm : {-120.0, -98.93, -27.0, 0.0, 10.0, 30.0}) {
        CHECK(fdx::watts_to_dbm(fdx::dbm_to_watts(dbm)) == doctest::Approx(dbm).epsilon(1e-12));
    }
    for (double w : {1e-13, 2.5e-7, 1.0, 815.0}) {
        CHECK(fdx::dbm_to_watts(fdx::watts_to_dbm(w)) == doctest::Approx(w).epsilon(1e-12));
    }
}

TEST_CASE("convolution matrix matches the displayed layout") {
    const ComplexSignal x = make_signal({1.0, 2.0, 3.0, 4.0});
    const Eigen::MatrixXcd m = fdx::build_convolution_matrix(x, 2, 4);
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 2);
    CHECK(m(0, 0) == cplx(2.0, 0.0));
    CHECK(m(0, 1) == cplx(1.0, 0.0));
    CHECK(m(1, 0) == cplx(3.0, 0.0));
    CHECK(m(1, 1) == cplx(2.0, 0.0));
    CHECK(m(2, 0) == cplx(4.0, 0.0));
    CHECK(m(2, 1) == cplx(3.0, 0.0));
}

TEST_CASE("channel length one gives the plain column vector") {
    const ComplexSignal x = make_signal({5.0, 6.0, 7.0});
    const Eigen::MatrixXcd m = fdx::build_convolution_matrix(x, 1, 3);
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 1);
    for (int i = 0; i < 3; ++i) CHECK(m(i, 0) == x.samples[static_cast<std::size_t>(i)]);
}

TEST_CASE("convolution matrix index oracle at production size") {
    const int m_len = 5, n_len = 10000;
    const ComplexSignal x = random_signal(10000, 31);
    const Eigen::MatrixXcd m = fdx::build_convolution_matrix(x, m_len, n_len);
    fdx::Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const int r = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(m.rows())));
        const int c = static_cast<int>(rng.uniform_int(m_len));
        CHECK(m(r, c) == x.samples[static_cast<std::size_t>(m_len - 1 + r - c)]);
    }
}

TEST_CASE("convolution matrix dimension errors") {
    const ComplexSignal x = make_signal({1.0, 2.0, 3.0});
    CHECK_THROWS_AS(fdx::build_convolution_matrix(x, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(fdx::build_convolution_matrix(x, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(fdx::build_convolution_matrix(x, 0, 3), std::invalid_argument);
}

TEST_CASE("matrix times taps equals windowed convolution") {
    const ComplexSignal x = random_signal(300, 5);
    std::vector<cplx> h = {cplx(0.5, -0.1), cplx(-0.2, 0.3), cplx(0.05, 0.0), cplx(0.0, -0.07),
                           cplx(0.01, 0.02)};
    const Eigen::MatrixXcd m = fdx::build_convolution_matrix(x, 5, 300);
    Eigen::VectorXcd hv(5);
    for (int i = 0; i < 5; ++i) hv(i) = h[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd y = m * hv;
    const std::vector<cplx> oracle = fdx_test::direct_convolution(x.samples, h);
    for (Eigen::Index i = 0; i < y.rows(); ++i)
        CHECK(std::abs(y(i) - oracle[static_cast<std::size_t>(i + 4)]) < 1e-12);
}

TEST_CASE("least squares: identity system returns the data") {
    const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(5, 5);
    Eigen::VectorXcd y(5);
    y << cplx(1, 2), cplx(-3, 0.5), cplx(0, 0), cplx(4, 4), cplx(-0.1, 7);
    const Eigen::VectorXcd h = fdx::least_squares(a, y);
    CHECK((h - y).norm() < 1e-12);
}

TEST_CASE("least squares: consistent system recovered to 1e-10 relative") {
    const Eigen::MatrixXcd a = random_matrix(50, 8, 11);
    const Eigen::VectorXcd h0 = random_matrix(8, 1, 12).col(0);
    const Eigen::VectorXcd h = fdx::least_squares(a, a * h0);
    CHECK((h - h0).norm() / h0.norm() < 1e-10);
}

TEST_CASE("least squares matches hand-solved normal equations on a 3x2 real system") {
    Eigen::MatrixXcd a(3, 2);
    a << 1.0, 0.0, 1.0, 1.0, 1.0, 2.0;
    Eigen::VectorXcd y(3);
    y << 1.0, 2.0, 4.0;

    // Oracle: explicit 2x2 normal-equation inversion.
    const double g00 = 3.0, g01 = 3.0, g11 = 5.0; // A^T A
    const double b0 = 7.0, b1 = 10.0;             // A^T y
    const double det = g00 * g11 - g01 * g01;
    const double h0 = (g11 * b0 - g01 * b1) / det;
    const double h1 = (-g01 * b0 + g00 * b1) / det;

    const Eigen::VectorXcd h = fdx::least_squares(a, y);
    CHECK(h(0).real() == doctest::Approx(h0).epsilon(1e-12));
    CHECK(h(1).real() == doctest::Approx(h1).epsilon(1e-12));
    CHECK(std::abs(h(0).imag()) < 1e-14);
    CHECK(std::abs(h(1).imag()) < 1e-14);
}

TEST_CASE("least squares residual orthogonality up to 10000x20") {
    struct Size {
        Eigen::Index rows, cols;
    };
    for (const Size s : {Size{100, 7}, Size{2000, 12}, Size{10000, 20}}) {
        const Eigen::MatrixXcd a = random_matrix(s.rows, s.cols, 100 + static_cast<std::uint64_t>(s.rows));
        const Eigen::VectorXcd y = random_matrix(s.rows, 1, 200 + static_cast<std::uint64_t>(s.rows)).col(0);
        const Eigen::VectorXcd h = fdx::least_squares(a, y);
        const double lhs = (a.adjoint() * (y - a * h)).norm();
        const double rhs = (a.adjoint() * y).norm();
        CHECK(lhs <= 1e-8 * rhs);
    }
}

TEST_CASE("least squares refuses underdetermined and rank-deficient systems") {
    CHECK_THROWS_AS(fdx::least_squares(random_matrix(3, 5, 1), random_matrix(3, 1, 2).col(0)),
                    std::invalid_argument);

    Eigen::MatrixXcd dup = random_matrix(40, 3, 17);
    dup.col(2) = dup.col(0); // exactly collinear
    try {
        fdx::least_squares(dup, random_matrix(40, 1, 18).col(0));
        FAIL("expected SingularMatrixError");
    } catch (const fdx::SingularMatrixError& e) {
        CHECK(std::string(e.what()).find("condition") != std::string::npos);
    }
}

TEST_CASE("least squares survives near-collinear columns via diagonal loading") {
    Eigen::MatrixXcd a = random_matrix(64, 2, 23);
    a.col(0).normalize();
    a.col(1) = a.col(0) + 1e-13 * random_matrix(64, 1, 24).col(0).normalized();
    const Eigen::VectorXcd y = random_matrix(64, 1, 25).col(0);
    const Eigen::VectorXcd h = fdx::least_squares(a, y);
    CHECK(std::isfinite(h.norm()));
    CHECK((a * h).norm() <= 10.0 * y.norm());
}
