#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include <Eigen/Dense>

namespace tropreg {

/**
 * Counter-based substream: output k of stream (seed, index) is a SplitMix64
 * finalizer applied to a counter, so any sample can be regenerated without
 * touching the others. Serial and parallel runs draw identical numbers.
 */
class Substream {
public:
    using result_type = std::uint64_t;

    Substream(std::uint64_t seed, std::uint64_t index)
        : key_(mix(mix(seed ^ 0x6a09e667f3bcc909ULL) + index * 0xbb67ae8584caa73bULL))
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

    /// Standard normal vector of the given length.
    Eigen::VectorXd normal_vector(Eigen::Index dim)
    {
        std::normal_distribution<double> gauss;
        Eigen::VectorXd g(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            g(i) = gauss(*this);
        }
        return g;
    }

    static constexpr std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace tropreg
