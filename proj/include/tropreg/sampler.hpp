#pragma once

/**
 * Randomized counting of Minkowski-sum vertices / layer regions.
 *
 * Every random direction g ~ N(0, I) picks, in each summand, the point that
 * maximizes <g, .>; the tuple of picks is a vertex of the Minkowski sum (for
 * almost every g). In `full` mode both g and -g are used, so maximizers and
 * minimizers are collected. In `upper` mode g is reflected into the half
 * space g_1 >= 0 first; such directions are (t, x) with t > 0 and therefore
 * only ever hit region-defining configurations.
 *
 * Sample j always uses substream (seed, j), so the set found with K samples
 * is contained in the set found with any K' > K under the same seed.
 */

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "tropreg/geometry.hpp"
#include "tropreg/tropical.hpp"

namespace tropreg {

enum class SampleMode { full, upper };

struct SamplePlan {
    std::size_t K = 1000;
    double delta = 0.01;
    SampleMode mode = SampleMode::upper;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SampleResult {
    std::set<Configuration> configurations;
    /// Samples where some summand's maximum was attained by more than one point (within tol).
    std::size_t degenerate_ties = 0;
    std::size_t samples = 0;
};

/// The direction used by sample `index` (already reflected in upper mode).
Vector sample_direction(std::uint64_t seed, std::uint64_t index, std::size_t dim, SampleMode mode);

SampleResult sample_configurations(std::span<const Polytope> summands, const SamplePlan& plan,
                                   double tol = kDefaultTol, unsigned threads = 1);

/// Summands are the Newton polytopes of the units; indices are term indices.
SampleResult sample_configurations(const LayerSpec& layer, const SamplePlan& plan, double tol = kDefaultTol,
                                   unsigned threads = 1);

/**
 * Monte-Carlo normal-cone angles for selected vertices of P.
 *
 * `full[k]` estimates omega(N_P(v_k)) = P{g in N_P(v_k)}.
 * `upper[k]` estimates P{g' in N_P(v_k)} where g' is g reflected into
 * g_1 >= 0, i.e. the hit probability of the truncated cone N'_P(v_k) per
 * upper-mode sample. It equals 2 omega(N'_P(v_k)), so the upper values over
 * region-defining vertices sum to one.
 */
struct AngleSpectrum {
    std::vector<double> full;
    std::vector<double> upper;
    std::vector<double> full_stderr;
    std::vector<double> upper_stderr;
    std::size_t samples = 0;
    /// Samples landing within tol of more than one listed vertex's cone.
    std::size_t ties = 0;

    double full_sum() const;
    double upper_sum() const;
    /// Standard error of the full-cone sum (treating cone hits as disjoint).
    double full_sum_stderr() const;
};

AngleSpectrum estimate_solid_angles(const Polytope& P, std::span<const Vector> vertices, std::size_t samples,
                                    std::uint64_t seed, double tol = kDefaultTol, unsigned threads = 1);

/// Smallest K with N * max_k (1 - 2 omega_k)^K <= delta.
std::size_t required_samples_full(const AngleSpectrum& angles, std::size_t N, double delta);

/// Smallest K with N * max_k (1 - omega'_k)^K <= delta, omega' the per-sample truncated-cone hit probability.
std::size_t required_samples_upper(const AngleSpectrum& angles, std::size_t N, double delta);

/// K = ceil(log(N / delta) / (2 eta)), at least 1.
std::size_t required_samples_eta(double eta, std::size_t N, double delta);

/// Reduced Minkowski sum of the units' Newton polytopes (enumerates all candidate sums, up to `cap`).
Polytope layer_sum_polytope(const LayerSpec& layer, double tol = kDefaultTol, std::size_t cap = kDefaultCap);

struct UpperSamplePlan {
    std::size_t K = 1;
    /// Number of region-defining (upper-hull) vertices of the sum polytope.
    std::size_t N = 0;
    std::vector<Vector> upper_vertices;
    AngleSpectrum angles; // over upper_vertices
};

/// Sample size for upper-mode sampling at confidence 1 - delta, from Monte-Carlo angles of the sum polytope.
UpperSamplePlan plan_upper_samples(const LayerSpec& layer, std::size_t angle_samples, double delta,
                                   std::uint64_t seed, double tol = kDefaultTol, std::size_t cap = kDefaultCap,
                                   unsigned threads = 1);

/// Shared inversion: smallest K >= 1 with N * q^K <= delta for q in [0, 1).
std::size_t samples_for_failure_rate(double q, std::size_t N, double delta);

} // namespace tropreg
