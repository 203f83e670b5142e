// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#ifndef FDX_RNG_HPP
#define FDX_RNG_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace fdx {

/// splitmix64 mixing step; used to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic substream seed derivation. Every consumer of randomness gets
/// its seed as derive_seed(master, {tokens...}) where the token list encodes
/// its position in the experiment (power index, realization index, purpose
/// tag, antenna index, ...). Two distinct token lists give independent
/// streams; the same list always gives the same stream.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tokens);

/// Seeded random source with pinned sample-generation algorithms, so that a
/// given seed produces bit-identical output on any platform. Uniform doubles
/// are built from the top 53 bits of mt19937_64 output and Gaussians via
/// Box-Muller; std::*_distribution is avoided because its output is
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform();

    /// Uniform integer in [0, n). n must be > 0; uses rejection sampling.
    std::uint64_t uniform_int(std::uint64_t n);

    /// Standard normal (mean 0, variance 1).
    double gaussian();

    /// Circular complex Gaussian with E|z|^2 = 1.
    std::complex<double> complex_gaussian();

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace fdx

#endif
