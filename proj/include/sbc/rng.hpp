#pragma once

#include <cstdint>
#include <random>

namespace sbc {

// Stream derivation: mixes a base seed with a stream id so that estimators
// running on different grid points get independent, reproducible streams.
std::uint64_t splitmix64_next(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream_id);

double normal_pdf(double z);
double normal_cdf(double z);

/// Inverse standard normal CDF (Acklam's rational approximation, refined
/// with one Halley step through erfc). Accurate to ~1e-15 on (0,1).
double inverse_normal_cdf(double p);

/// Deterministic random stream. Sampling goes through explicit inverse-CDF
/// transforms so that draws are identical across standard libraries.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    /// Uniform on [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0,1), never exactly 0.
    double uniform01_open() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return inverse_normal_cdf(uniform01_open()); }

private:
    std::mt19937_64 eng_;
};

} // namespace sbc
