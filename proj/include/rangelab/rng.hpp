#pragma once

#include <cstdint>

#include "rangelab/complex_matrix.hpp"

namespace rangelab {

/// Counter-based pseudo-random stream (splitmix64 core). Streams derived from
/// a (seed, tag) pair are independent, so per-sample and per-restart work can
/// be farmed out without sharing mutable state.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    /// Independent child stream keyed by tag; self is left untouched.
    RngStream derive(std::uint64_t tag) const;

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    /// Standard real normal via Box-Muller (pairs cached).
    double gaussian();
    /// Entrywise-standard complex normal: re, im ~ N(0,1).
    Complex complex_gaussian();

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Ginibre matrix: independent complex_gaussian entries.
CMatrix ginibre(std::size_t n, RngStream& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal kept
/// real positive. Deterministic given the stream state.
CMatrix haar_unitary(std::size_t n, RngStream& rng);
CMatrix haar_unitary(std::size_t n, std::uint64_t seed);

}  // namespace rangelab
