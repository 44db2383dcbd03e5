#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace stable_tails {

// 64-bit mix used to derive engine seeds and sub-stream seeds. Two streams
// with different ids never share a seed state by construction.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t sub_stream_seed(std::uint64_t seed, std::uint64_t stream_id) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream_id * 0xd6e8feb86659fd93ULL + 1));
}

/// Arrival times of a unit-rate Poisson process: tau_1 < tau_2 < ... with
/// i.i.d. Exp(1) increments.  The stream also exposes the raw draws the
/// samplers need; all of them map engine output through fixed arithmetic, so
/// sequences are bit-identical across platforms for a given (seed, stream_id).
///
/// A stream is single-owner mutable state: move it between threads freely,
/// never share one concurrently.
class ArrivalStream {
  public:
    explicit ArrivalStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id), engine_(sub_stream_seed(seed, stream_id)) {}

    /// tau_{index+1} = tau_index + Exp(1); advances the stream.
    double next_arrival() {
        last_arrival_ += exponential();
        ++index_;
        return last_arrival_;
    }

    /// Uniform on [0,1) with 53 random bits.
    double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Exp(1) by inversion; strictly positive.
    double exponential() { return -std::log1p(-u01()); }

    /// Standard normal (Box-Muller, cosine branch; consumes two uniforms).
    double normal() {
        double u = u01();
        // u == 0 would take log(0); nudge to the smallest representable draw.
        double r = std::sqrt(-2.0 * std::log1p(-u));
        double v = u01();
        return r * std::cos(6.283185307179586476925286766559 * v);
    }

    /// +/-1 with equal probability.
    double rademacher() { return (engine_() & 1u) ? 1.0 : -1.0; }

    /// Poisson count by exponential-gap counting (means here are O(1)).
    std::uint64_t poisson(double mean) {
        std::uint64_t k = 0;
        double acc = exponential();
        while (acc < mean) {
            ++k;
            acc += exponential();
        }
        return k;
    }

    std::uint64_t index() const { return index_; }
    double last_arrival() const { return last_arrival_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::uint64_t index_ = 0;
    double last_arrival_ = 0.0;
};

}  // namespace stable_tails
