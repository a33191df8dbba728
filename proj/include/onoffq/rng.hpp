#pragma once

#include <cmath>
#include <cstdint>

namespace onoffq {

/// SplitMix64 (Steele, Lea & Flood 2014).  Used only to expand seeds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// xoshiro256++ 1.0 (Blackman & Vigna 2019), state expanded from the seed via
/// SplitMix64 as its authors recommend.  Replication r of a run seeded with s
/// uses the stream seeded by s + r, which keeps runs reproducible across
/// thread counts.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Exponential variate by inverse transform; strictly positive.
    double exponential(double rate) {
        const double u = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        return -std::log(u) / rate;
    }

    bool bernoulli(double prob) { return uniform01() < prob; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace onoffq
