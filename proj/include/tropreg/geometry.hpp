#pragma once

/**
 * V-represented polytopes and the strict-feasibility tests that every
 * vertex/region decision in this library reduces to.
 *
 * Newton polytopes live in R^{n+1} with the bias coordinate first, so a
 * direction (t, x) with t > 0 evaluates a term (b; c) to t*b + c.x, i.e. to
 * t times the term's value at input x / t. Region-defining vertices are the
 * ones that are strict maximizers for some such direction.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tropreg/errors.hpp"
#include "tropreg/tropical.hpp"

namespace tropreg {

class Polytope {
public:
    Polytope(std::size_t ambient_dim, std::vector<Vector> points, bool reduced = false);

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<Vector>& points() const { return points_; }
    const Vector& point(std::size_t i) const { return points_.at(i); }
    std::size_t size() const { return points_.size(); }
    bool is_reduced() const { return reduced_; }

private:
    std::size_t ambient_dim_;
    std::vector<Vector> points_;
    bool reduced_;
};

struct FeasibilityResult {
    bool feasible = false;
    std::optional<Vector> witness;
    double margin = 0.0;
};

struct FeasibilityOptions {
    /// Restrict to directions with positive first coordinate; the witness is rescaled so it equals 1.
    bool fix_first = false;
    double tol = kDefaultTol;
};

/**
 * Decide whether some direction c strictly prefers `targets[i]` over every
 * point in `competitors[i]`, simultaneously for all i:
 *
 *     c.(targets[i] - u) >= margin > tol   for all u in competitors[i].
 *
 * The margin is maximized over the box |c_j| <= 1. With `fix_first` the first
 * coordinate is constrained to t >= margin (homogeneous form of c = (1, x)),
 * and the returned witness is c / t.
 */
FeasibilityResult strict_feasibility(std::span<const Vector> targets, std::span<const std::vector<Vector>> competitors,
                                     const FeasibilityOptions& opts = {});

/// Single-summand form: is `target` strictly separated from all of `competitors`?
FeasibilityResult strict_feasibility(const Vector& target, std::span<const Vector> competitors,
                                     const FeasibilityOptions& opts = {});

/// Lower-level entry: maximize the margin over rows a with a.c >= margin.
FeasibilityResult max_margin(std::span<const Vector> rows, std::size_t dim, const FeasibilityOptions& opts);

/// {(b_i; c_i)} in R^{n+1}, bias first, one point per term, not reduced.
Polytope newton_polytope(const TropicalPolynomial& p);

/// Exact or within-tol duplicates collapsed (first occurrence kept).
Polytope dedupe_points(const Polytope& P, double tol = kDefaultTol);

/// Indices of the points of P that are vertices (after collapsing near-duplicates onto their first copy).
std::vector<std::size_t> vertex_indices(const Polytope& P, double tol = kDefaultTol);

/// Minimal V-representation: one separation LP per point.
Polytope eliminate_redundant(const Polytope& P, double tol = kDefaultTol);

struct MinkowskiCandidates {
    Polytope sum;
    /// origins[k] lists every configuration whose sum is sum.point(k).
    std::vector<std::vector<Configuration>> origins;
};

MinkowskiCandidates minkowski_candidates(std::span<const Polytope> summands, std::size_t cap = kDefaultCap);

std::vector<Vector> upper_hull_vertices(const Polytope& P, double tol = kDefaultTol);

bool normal_cone_contains(const Polytope& P, const Vector& v, const Vector& c, double tol = kDefaultTol);

struct GeneratorCount {
    std::size_t nonparallel = 0;
    std::size_t zero_length = 0;
};

using Segment = std::pair<Vector, Vector>;

GeneratorCount nonparallel_generator_count(std::span<const Segment> segments, double tol = kDefaultTol);

/// Product of the sizes with overflow guard; returns nullopt past `cap`.
std::optional<std::size_t> checked_product(std::span<const std::size_t> sizes, std::size_t cap);

} // namespace tropreg
