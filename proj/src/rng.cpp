#include "rangelab/rng.hpp"

#include <cmath>
#include <numbers>

namespace rangelab {

namespace {

std::uint64_t splitmix64_mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

}  // namespace

RngStream RngStream::derive(std::uint64_t tag) const {
    return RngStream(splitmix64_mix(state_ ^ (0x9E3779B97F4A7C15ULL * (tag + 1))));
}

std::uint64_t RngStream::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Complex RngStream::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

CMatrix ginibre(std::size_t n, RngStream& rng) {
    CMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
    return g;
}

CMatrix haar_unitary(std::size_t n, RngStream& rng) {
    require(n >= 1, "haar_unitary: n must be positive");
    CMatrix q = ginibre(n, rng);
    // Modified Gram-Schmidt with a re-orthogonalization pass. Column norms
    // play the role of the (positive real) R diagonal, which is exactly the
    // phase convention that makes QR of Ginibre Haar-distributed.
    std::vector<CVector> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = q.column(j);
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < j; ++k) axpy(cols[j], -dot(cols[k], cols[j]), cols[k]);
        const double r = norm(cols[j]);
        require(r > 0.0, "haar_unitary: degenerate Ginibre column");
        scale(cols[j], 1.0 / r);
    }
    for (std::size_t j = 0; j < n; ++j) q.set_column(j, cols[j]);
    return q;
}

CMatrix haar_unitary(std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    return haar_unitary(n, rng);
}

}  // namespace rangelab
