#include "tropreg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "tropreg/simplex.hpp"

namespace tropreg {

namespace {

bool near(const Vector& a, const Vector& b, double tol) { return (a - b).lpNorm<Eigen::Infinity>() <= tol; }

std::vector<double> key_of(const Vector& v) { return {v.data(), v.data() + v.size()}; }

} // namespace

Polytope::Polytope(std::size_t ambient_dim, std::vector<Vector> points, bool reduced)
    : ambient_dim_(ambient_dim), points_(std::move(points)), reduced_(reduced)
{
    if (ambient_dim == 0) {
        throw ValidationError("polytope: ambient dimension must be positive");
    }
    if (points_.empty()) {
        throw ValidationError("polytope: at least one point is required");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (static_cast<std::size_t>(points_[i].size()) != ambient_dim) {
            throw ValidationError("polytope: point " + std::to_string(i) + " has dimension " +
                                  std::to_string(points_[i].size()) + ", expected " + std::to_string(ambient_dim));
        }
        if (!points_[i].allFinite()) {
            throw ValidationError("polytope: point " + std::to_string(i) + " has a non-finite entry");
        }
    }
}

FeasibilityResult max_margin(std::span<const Vector> rows, std::size_t dim, const FeasibilityOptions& opts)
{
    if (dim == 0) {
        throw ValidationError("strict_feasibility: zero-dimensional direction space");
    }
    // Direction c = pos - neg with 0 <= pos, neg <= 1. With fix_first the first
    // coordinate is a single nonnegative variable t and we require t >= margin.
    const bool fix = opts.fix_first;
    const std::size_t first_free = fix ? 1 : 0;
    const std::size_t n_neg = dim - first_free;
    const std::size_t n_vars = dim + n_neg + 1;
    const std::size_t s_idx = n_vars - 1;
    auto neg_idx = [&](std::size_t j) { return dim + (j - first_free); };

    const std::size_t n_rows = rows.size() + (dim + n_neg) + 1 + (fix ? 1 : 0);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_vars));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_rows));
    Eigen::Index r = 0;
    for (const auto& a : rows) {
        if (static_cast<std::size_t>(a.size()) != dim) {
            throw ValidationError("strict_feasibility: inconsistent point dimensions");
        }
        for (std::size_t j = 0; j < dim; ++j) {
            A(r, static_cast<Eigen::Index>(j)) = -a(static_cast<Eigen::Index>(j));
            if (j >= first_free) {
                A(r, static_cast<Eigen::Index>(neg_idx(j))) = a(static_cast<Eigen::Index>(j));
            }
        }
        A(r, static_cast<Eigen::Index>(s_idx)) = 1.0;
        ++r;
    }
    for (std::size_t v = 0; v < dim + n_neg; ++v) {
        A(r, static_cast<Eigen::Index>(v)) = 1.0;
        b(r) = 1.0;
        ++r;
    }
    A(r, static_cast<Eigen::Index>(s_idx)) = 1.0;
    b(r) = 1.0;
    ++r;
    if (fix) {
        A(r, static_cast<Eigen::Index>(s_idx)) = 1.0;
        A(r, 0) = -1.0;
        ++r;
    }

    Eigen::VectorXd obj = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_vars));
    obj(static_cast<Eigen::Index>(s_idx)) = 1.0;
    const auto sol = lp::maximize(A, b, obj);
    if (sol.status != lp::Status::optimal) {
        throw SolverError("strict_feasibility: bounded margin program reported unbounded");
    }

    Vector c(static_cast<Eigen::Index>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        c(static_cast<Eigen::Index>(j)) = sol.x(static_cast<Eigen::Index>(j)) -
                                          (j >= first_free ? sol.x(static_cast<Eigen::Index>(neg_idx(j))) : 0.0);
    }
    // The reported margin is recomputed from the recovered direction so that
    // tableau roundoff can only understate it.
    double margin = std::min(sol.objective, 1.0);
    for (const auto& a : rows) {
        margin = std::min(margin, a.dot(c));
    }
    if (fix) {
        margin = std::min(margin, c(0));
    }

    FeasibilityResult out;
    out.margin = std::max(0.0, margin);
    out.feasible = out.margin > opts.tol;
    if (out.feasible) {
        if (fix) {
            c /= c(0);
        }
        out.witness = std::move(c);
    }
    return out;
}

FeasibilityResult strict_feasibility(std::span<const Vector> targets, std::span<const std::vector<Vector>> competitors,
                                     const FeasibilityOptions& opts)
{
    if (targets.size() != competitors.size()) {
        throw ValidationError("strict_feasibility: one competitor list per target is required");
    }
    if (targets.empty()) {
        throw ValidationError("strict_feasibility: no targets");
    }
    const auto dim = static_cast<std::size_t>(targets.front().size());
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (static_cast<std::size_t>(targets[i].size()) != dim) {
            throw ValidationError("strict_feasibility: inconsistent point dimensions");
        }
        for (const auto& u : competitors[i]) {
            if (static_cast<std::size_t>(u.size()) != dim) {
                throw ValidationError("strict_feasibility: inconsistent point dimensions");
            }
            rows.push_back(targets[i] - u);
        }
    }
    return max_margin(rows, dim, opts);
}

FeasibilityResult strict_feasibility(const Vector& target, std::span<const Vector> competitors,
                                     const FeasibilityOptions& opts)
{
    std::vector<Vector> rows;
    rows.reserve(competitors.size());
    for (const auto& u : competitors) {
        if (u.size() != target.size()) {
            throw ValidationError("strict_feasibility: inconsistent point dimensions");
        }
        rows.push_back(target - u);
    }
    return max_margin(rows, static_cast<std::size_t>(target.size()), opts);
}

Polytope newton_polytope(const TropicalPolynomial& p)
{
    std::vector<Vector> pts;
    pts.reserve(p.rank());
    for (const auto& t : p.terms()) {
        pts.push_back(t.stacked());
    }
    return Polytope(p.input_dim() + 1, std::move(pts));
}

Polytope dedupe_points(const Polytope& P, double tol)
{
    std::vector<Vector> kept;
    for (const auto& p : P.points()) {
        if (std::none_of(kept.begin(), kept.end(), [&](const Vector& q) { return near(p, q, tol); })) {
            kept.push_back(p);
        }
    }
    return Polytope(P.ambient_dim(), std::move(kept), P.is_reduced());
}

std::vector<std::size_t> vertex_indices(const Polytope& P, double tol)
{
    std::vector<std::size_t> unique;
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (std::none_of(unique.begin(), unique.end(), [&](std::size_t j) { return near(P.point(i), P.point(j), tol); })) {
            unique.push_back(i);
        }
    }
    std::vector<std::size_t> out;
    std::vector<Vector> others;
    for (std::size_t i : unique) {
        others.clear();
        for (std::size_t j : unique) {
            if (j != i) {
                others.push_back(P.point(j));
            }
        }
        if (strict_feasibility(P.point(i), others, {.fix_first = false, .tol = tol}).feasible) {
            out.push_back(i);
        }
    }
    return out;
}

Polytope eliminate_redundant(const Polytope& P, double tol)
{
    std::vector<Vector> verts;
    for (std::size_t i : vertex_indices(P, tol)) {
        verts.push_back(P.point(i));
    }
    return Polytope(P.ambient_dim(), std::move(verts), true);
}

std::optional<std::size_t> checked_product(std::span<const std::size_t> sizes, std::size_t cap)
{
    std::size_t total = 1;
    for (std::size_t s : sizes) {
        if (s != 0 && total > cap / s) {
            return std::nullopt;
        }
        total *= s;
    }
    if (total > cap) {
        return std::nullopt;
    }
    return total;
}

MinkowskiCandidates minkowski_candidates(std::span<const Polytope> summands, std::size_t cap)
{
    if (summands.empty()) {
        throw ValidationError("minkowski_candidates: no summands");
    }
    const std::size_t dim = summands.front().ambient_dim();
    std::vector<std::size_t> sizes;
    for (const auto& P : summands) {
        if (P.ambient_dim() != dim) {
            throw ValidationError("minkowski_candidates: summands have different ambient dimensions");
        }
        sizes.push_back(P.size());
    }
    const auto total = checked_product(sizes, cap);
    if (!total) {
        throw CapExceeded("minkowski_candidates: more than " + std::to_string(cap) +
                          " candidate configurations; use the sampler instead");
    }

    std::vector<Vector> points;
    std::vector<std::vector<Configuration>> origins;
    std::map<std::vector<double>, std::size_t> index_of;
    Configuration cfg{std::vector<std::size_t>(summands.size(), 0)};
    for (std::size_t step = 0; step < *total; ++step) {
        Vector s = Vector::Zero(static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < summands.size(); ++i) {
            s += summands[i].point(cfg.indices[i]);
        }
        auto [it, inserted] = index_of.try_emplace(key_of(s), points.size());
        if (inserted) {
            points.push_back(std::move(s));
            origins.emplace_back();
        }
        origins[it->second].push_back(cfg);

        // mixed-radix increment, last summand fastest
        for (std::size_t i = summands.size(); i-- > 0;) {
            if (++cfg.indices[i] < sizes[i]) {
                break;
            }
            cfg.indices[i] = 0;
        }
    }
    return {Polytope(dim, std::move(points)), std::move(origins)};
}

std::vector<Vector> upper_hull_vertices(const Polytope& P, double tol)
{
    if (P.ambient_dim() < 2) {
        throw ValidationError("upper_hull_vertices: ambient dimension must be at least 2");
    }
    const auto Q = dedupe_points(P, tol);
    std::vector<Vector> out;
    std::vector<Vector> others;
    for (std::size_t i = 0; i < Q.size(); ++i) {
        others.clear();
        for (std::size_t j = 0; j < Q.size(); ++j) {
            if (j != i) {
                others.push_back(Q.point(j));
            }
        }
        if (strict_feasibility(Q.point(i), others, {.fix_first = true, .tol = tol}).feasible) {
            out.push_back(Q.point(i));
        }
    }
    return out;
}

bool normal_cone_contains(const Polytope& P, const Vector& v, const Vector& c, double tol)
{
    if (static_cast<std::size_t>(c.size()) != P.ambient_dim() || static_cast<std::size_t>(v.size()) != P.ambient_dim()) {
        throw ValidationError("normal_cone_contains: dimension mismatch");
    }
    const auto& pts = P.points();
    if (std::none_of(pts.begin(), pts.end(), [&](const Vector& z) { return near(z, v, tol); })) {
        throw ValidationError("normal_cone_contains: v is not a listed point of P");
    }
    const double cv = c.dot(v);
    return std::all_of(pts.begin(), pts.end(), [&](const Vector& z) { return c.dot(z) - cv <= tol; });
}

GeneratorCount nonparallel_generator_count(std::span<const Segment> segments, double tol)
{
    GeneratorCount out;
    std::vector<Vector> classes;
    for (const auto& [a, b] : segments) {
        if (a.size() != b.size()) {
            throw ValidationError("nonparallel_generator_count: segment endpoints differ in dimension");
        }
        Vector d = b - a;
        const double len = d.norm();
        if (len <= tol) {
            ++out.zero_length;
            continue;
        }
        d /= len;
        const bool seen = std::any_of(classes.begin(), classes.end(), [&](const Vector& u) {
            return u.size() == d.size() && (near(u, d, tol) || near(u, -d, tol));
        });
        if (!seen) {
            classes.push_back(d);
        }
    }
    out.nonparallel = classes.size();
    return out;
}

} // namespace tropreg
