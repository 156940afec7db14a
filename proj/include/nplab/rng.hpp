#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace nplab {

// splitmix64 output mix (Steele, Lea & Flood / Vigna's public-domain variant).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// splitmix64: used only to expand seeds, never as the main stream.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

// Named sub-streams hanging off one master seed. Every consumer of
// randomness in a run gets its own stream so adding or removing draws in
// one place cannot shift the values seen by another.
enum class Stream : std::uint64_t {
    inputs = 1,
    perturbation = 2,  // xi
    baseline = 3,      // zeta
    teacher_init = 4,
    student_init = 5,
    test_inputs = 6,
};

// Deterministic (master, stream, replication) -> sub-seed map.
inline std::uint64_t substream_seed(std::uint64_t master, Stream stream,
                                    std::uint64_t replication = 0) {
    std::uint64_t z = mix64(master + 0x9E3779B97F4A7C15ULL *
                                         (static_cast<std::uint64_t>(stream) + 1));
    return mix64(z + 0x9E3779B97F4A7C15ULL * (replication + 1));
}

// xoshiro256++ (Blackman & Vigna, public domain). State is expanded from
// the seed with splitmix64 as the authors recommend.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        s_[0] = sm.next();
        s_[1] = sm.next();
        s_[2] = sm.next();
        s_[3] = sm.next();
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

    // Uniform double in [0, 1), 53 bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

// Standard-normal stream: xoshiro256++ driving the Marsaglia polar
// transform. Pairs are consumed in (first, second) order, so the sequence
// is a pure function of the seed.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * rng_.uniform01() - 1.0;
            v = 2.0 * rng_.uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    void fill(std::span<double> out) {
        for (double& x : out) x = next();
    }

    // N(0, sigma^2) batch; sigma = 0 yields exact zeros without consuming
    // any fewer draws than sigma > 0 would.
    void fill_scaled(std::span<double> out, double sigma) {
        for (double& x : out) x = sigma * next();
    }

private:
    Xoshiro256pp rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace nplab
