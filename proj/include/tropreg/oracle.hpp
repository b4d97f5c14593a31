#pragma once

// Exact region counting and its independent cross-checks.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tropreg/geometry.hpp"
#include "tropreg/tropical.hpp"

namespace tropreg {

struct CountedRegion {
    Configuration config;
    /// Input point strictly inside the region.
    Vector witness;
    double margin = 0.0;
};

struct ExactCount {
    std::size_t count = 0;
    std::vector<CountedRegion> regions;
    /// Candidates realized only on a lower-dimensional set (closure nonempty, interior empty).
    std::size_t degenerate = 0;
};

struct CountOptions {
    double tol = kDefaultTol;
    std::size_t cap = kDefaultCap;
    unsigned threads = 1;
};

/**
 * Every configuration (one term per unit) whose cell
 *
 *     { x : b_i + c_i.x > b_u + c_u.x  for every unit and every other term u }
 *
 * has nonempty interior. Regions come back in lexicographic configuration order.
 * Throws CapExceeded if the product of unit ranks exceeds `cap`.
 */
ExactCount count_regions_exact(const LayerSpec& layer, const CountOptions& opts = {});

/// Sign vectors of the ReLU/LReLU hyperplane arrangement with nonempty open cells. Units must all be rank 2.
std::size_t count_arrangement_regions(const LayerSpec& layer, const CountOptions& opts = {});

/// Distinct activation patterns over K inputs x ~ N(0, input_scale^2 I). Lower-bounds the region count.
std::size_t count_by_input_sampling(const LayerSpec& layer, std::size_t K, std::uint64_t seed,
                                    double input_scale = 10.0, double tol = kDefaultTol, unsigned threads = 1);

inline constexpr std::size_t kArrangementMaxUnits = 25;

} // namespace tropreg
