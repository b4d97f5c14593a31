#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "support/oracles.hpp"
#include "tropreg/bounds.hpp"
#include "tropreg/geometry.hpp"
#include "tropreg/simplex.hpp"

using namespace tropreg;

namespace {

Vector vec(std::initializer_list<double> xs)
{
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

bool contains(const std::vector<Vector>& pts, const Vector& p, double tol = 1e-9)
{
    return std::any_of(pts.begin(), pts.end(), [&](const Vector& q) { return (p - q).lpNorm<Eigen::Infinity>() <= tol; });
}

bool same_set(const std::vector<Vector>& a, const std::vector<Vector>& b, double tol = 1e-9)
{
    if (a.size() != b.size()) return false;
    return std::all_of(a.begin(), a.end(), [&](const Vector& p) { return contains(b, p, tol); });
}

Polytope segment(const Vector& a, const Vector& b) { return Polytope(static_cast<std::size_t>(a.size()), {a, b}); }

std::vector<Polytope> random_segments(std::size_t m, std::size_t d, std::uint64_t seed)
{
    std::vector<Polytope> segs;
    for (std::size_t i = 0; i < m; ++i) {
        Substream rng(seed, i);
        Vector dir = rng.normal_vector(static_cast<Eigen::Index>(d));
        segs.push_back(segment(Vector::Zero(static_cast<Eigen::Index>(d)), dir));
    }
    return segs;
}

TropicalPolynomial three_sector()
{
    Matrix W(3, 2);
    W << 1, 0, 0, 1, 0, 0;
    return make_maxout(W, Vector::Zero(3));
}

} // namespace

TEST_CASE("simplex: small programs")
{
    SUBCASE("textbook maximum")
    {
        // max 3x + 2y  s.t. x + y <= 4, x + 3y <= 6, x <= 3  -> (3, 1), value 11
        Eigen::MatrixXd A(3, 2);
        A << 1, 1, 1, 3, 1, 0;
        auto sol = lp::maximize(A, Eigen::Vector3d(4, 6, 3), Eigen::Vector2d(3, 2));
        REQUIRE(sol.status == lp::Status::optimal);
        CHECK(sol.objective == doctest::Approx(11.0));
        CHECK(sol.x(0) == doctest::Approx(3.0));
        CHECK(sol.x(1) == doctest::Approx(1.0));
    }
    SUBCASE("unbounded direction")
    {
        Eigen::MatrixXd A(1, 2);
        A << 1, -1;
        auto sol = lp::maximize(A, Eigen::VectorXd::Ones(1), Eigen::Vector2d(0, 1));
        CHECK(sol.status == lp::Status::unbounded);
    }
    SUBCASE("degenerate origin does not cycle")
    {
        // Beale's cycling example (classic cycling instance under Dantzig's rule)
        Eigen::MatrixXd A(3, 4);
        A << 0.25, -60, -1.0 / 25, 9, 0.5, -90, -1.0 / 50, 3, 0, 0, 1, 0;
        Eigen::Vector4d c(0.75, -150, 1.0 / 50, -6);
        auto sol = lp::maximize(A, Eigen::Vector3d(0, 0, 1), c);
        REQUIRE(sol.status == lp::Status::optimal);
        CHECK(sol.objective == doctest::Approx(0.05));
    }
    SUBCASE("negative right-hand side rejected")
    {
        CHECK_THROWS_AS(lp::maximize(Eigen::MatrixXd::Ones(1, 1), -Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)),
                        SolverError);
    }
}

TEST_CASE("newton_polytope")
{
    auto P = newton_polytope(three_sector());
    CHECK(P.ambient_dim() == 3);
    CHECK_FALSE(P.is_reduced());
    CHECK(same_set(P.points(), {vec({0, 1, 0}), vec({0, 0, 1}), vec({0, 0, 0})}));

    auto S = newton_polytope(make_relu(vec({1, 0}), 0));
    CHECK(same_set(S.points(), {vec({0, 0, 0}), vec({0, 1, 0})}));

    Matrix Wp(3, 2);
    Wp << 1, 1, 2, 0, 1, 2;
    auto T = newton_polytope(make_maxout(Wp, Vector::Zero(3)));
    std::vector<Vector> projected;
    for (const auto& p : T.points()) projected.push_back(p.tail(2));
    CHECK(same_set(projected, {vec({1, 1}), vec({1, 2}), vec({2, 0})}));
}

TEST_CASE("eliminate_redundant")
{
    Polytope line(1, {vec({0}), vec({1}), vec({0.5})});
    auto R = eliminate_redundant(line);
    CHECK(R.is_reduced());
    CHECK(same_set(R.points(), {vec({0}), vec({1})}));

    Polytope tri(2, {vec({0, 0}), vec({1, 0}), vec({0, 1})});
    CHECK(same_set(eliminate_redundant(tri).points(), tri.points()));

    Polytope with_dups(2, {vec({0, 0}), vec({1, 0}), vec({0, 1}), vec({1, 0}), vec({1e-13, 0})});
    CHECK(eliminate_redundant(with_dups).size() == 3);

    SUBCASE("summed triangles of the product example match a monotone-chain hull")
    {
        std::vector<oracle::Point2> sums;
        std::vector<Vector> pts;
        const double p[3][2] = {{1, 1}, {2, 0}, {1, 2}};
        const double q[3][2] = {{0, 0}, {0, -1}, {2, -2}};
        for (auto& a : p) {
            for (auto& b : q) {
                sums.emplace_back(a[0] + b[0], a[1] + b[1]);
                pts.push_back(vec({a[0] + b[0], a[1] + b[1]}));
            }
        }
        CHECK(pts.size() == 9);
        const auto hull = oracle::convex_hull_2d(sums);
        std::vector<Vector> expect;
        for (const auto& [x, y] : hull) expect.push_back(vec({x, y}));
        const auto reduced = eliminate_redundant(Polytope(2, pts));
        CHECK(same_set(reduced.points(), expect));
        // frozen from the hull oracle
        CHECK(same_set(expect, {vec({1, 0}), vec({2, -1}), vec({4, -2}), vec({3, 0}), vec({1, 2})}));
    }
}

TEST_CASE("minkowski_candidates")
{
    std::vector<Polytope> sq{segment(vec({0, 0}), vec({1, 0})), segment(vec({0, 0}), vec({0, 1}))};
    auto mc = minkowski_candidates(sq);
    CHECK(same_set(mc.sum.points(), {vec({0, 0}), vec({1, 0}), vec({0, 1}), vec({1, 1})}));
    for (std::size_t k = 0; k < mc.sum.size(); ++k) {
        REQUIRE(mc.origins[k].size() == 1);
        const auto& c = mc.origins[k].front();
        CHECK((sq[0].point(c.indices[0]) + sq[1].point(c.indices[1]) - mc.sum.point(k)).norm() == 0.0);
    }

    SUBCASE("three generic planar segments give a hexagon")
    {
        auto segs = random_segments(3, 2, 11);
        auto cand = minkowski_candidates(segs);
        CHECK(cand.sum.size() == 8);
        std::vector<oracle::Point2> pts;
        for (const auto& p : cand.sum.points()) pts.emplace_back(p(0), p(1));
        CHECK(oracle::convex_hull_2d(pts).size() == 6);
        CHECK(eliminate_redundant(cand.sum).size() == 6);
    }
    SUBCASE("repeated sums keep every origin")
    {
        std::vector<Polytope> two{segment(vec({0}), vec({1})), segment(vec({0}), vec({1}))};
        auto c = minkowski_candidates(two);
        CHECK(c.sum.size() == 3);
        std::size_t total = 0;
        for (const auto& o : c.origins) total += o.size();
        CHECK(total == 4);
    }
    SUBCASE("cap")
    {
        auto segs = random_segments(12, 2, 3);
        CHECK_THROWS_AS(minkowski_candidates(segs, 1000), CapExceeded);
        CHECK_NOTHROW(minkowski_candidates(segs, 4096));
    }
    CHECK_THROWS_AS(minkowski_candidates(std::vector<Polytope>{segment(vec({0}), vec({1})), sq[0]}), ValidationError);
}

TEST_CASE("strict_feasibility")
{
    std::vector<Vector> rest{vec({0, 1}), vec({0, 0})};
    auto r = strict_feasibility(vec({1, 0}), rest);
    REQUIRE(r.feasible);
    CHECK(r.margin > 0.0);
    for (const auto& u : rest) CHECK(r.witness->dot(vec({1, 0}) - u) >= r.margin - 1e-12);

    std::vector<Vector> ends{vec({0, 0}), vec({2, 2})};
    auto mid = strict_feasibility(vec({1, 1}), ends);
    CHECK_FALSE(mid.feasible);
    CHECK_FALSE(mid.witness.has_value());

    auto F = newton_polytope(three_sector());
    for (std::size_t i = 0; i < F.size(); ++i) {
        std::vector<Vector> others;
        for (std::size_t j = 0; j < F.size(); ++j)
            if (j != i) others.push_back(F.point(j));
        auto res = strict_feasibility(F.point(i), others, {.fix_first = true});
        REQUIRE(res.feasible);
        CHECK((*res.witness)(0) == doctest::Approx(1.0));
    }

    SUBCASE("targets per summand")
    {
        std::vector<Vector> targets{vec({0, 1, 0}), vec({0, 0, 1})};
        std::vector<std::vector<Vector>> comp{{vec({0, 0, 0})}, {vec({0, 0, 0})}};
        auto both = strict_feasibility(targets, comp, {.fix_first = true});
        REQUIRE(both.feasible);
        CHECK((*both.witness)(1) > 0.0);
        CHECK((*both.witness)(2) > 0.0);
    }
    SUBCASE("regions far from the origin are still found with fix_first")
    {
        // ReLU with b = 100: the inactive cell is x < -100
        std::vector<Vector> comp{vec({100, 1})};
        auto far = strict_feasibility(vec({0, 0}), comp, {.fix_first = true});
        REQUIRE(far.feasible);
        CHECK((*far.witness)(1) < -100.0);
    }
    CHECK_THROWS_AS(strict_feasibility(vec({1, 0}), std::vector<Vector>{vec({1})}), ValidationError);
}

TEST_CASE("strict_feasibility is monotone in the competitor set")
{
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        Substream rng(77, trial);
        std::vector<Vector> pts;
        for (int i = 0; i < 6; ++i) pts.push_back(rng.normal_vector(3));
        for (bool fix : {false, true}) {
            const bool full = strict_feasibility(pts[0], std::span(pts).subspan(1), {.fix_first = fix}).feasible;
            const bool fewer = strict_feasibility(pts[0], std::span(pts).subspan(1, 3), {.fix_first = fix}).feasible;
            if (full) CHECK(fewer);
        }
    }
}

TEST_CASE("upper_hull_vertices")
{
    Polytope tri(2, {vec({0, 0}), vec({1, 0}), vec({0, 1})});
    CHECK(same_set(upper_hull_vertices(tri), {vec({1, 0}), vec({0, 1})}));

    auto F = newton_polytope(three_sector());
    CHECK(same_set(upper_hull_vertices(F), F.points()));

    Polytope square(2, {vec({0, 0}), vec({1, 0}), vec({0, 1}), vec({1, 1})});
    CHECK(same_set(upper_hull_vertices(square), {vec({1, 0}), vec({1, 1})}));

    CHECK_THROWS_AS(upper_hull_vertices(Polytope(1, {vec({0})})), ValidationError);

    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        Substream rng(31, trial);
        std::vector<Vector> pts;
        for (int i = 0; i < 10; ++i) pts.push_back(rng.normal_vector(3));
        Polytope P(3, pts);
        const auto verts = eliminate_redundant(P).points();
        for (const auto& u : upper_hull_vertices(P)) CHECK(contains(verts, u));
    }
}

TEST_CASE("normal_cone_contains")
{
    Polytope sq(2, {vec({-1, -1}), vec({1, -1}), vec({-1, 1}), vec({1, 1})});
    CHECK(normal_cone_contains(sq, vec({1, 1}), vec({1, 1})));
    CHECK_FALSE(normal_cone_contains(sq, vec({1, 1}), vec({-1, 0})));
    for (const auto& v : sq.points()) CHECK(normal_cone_contains(sq, v, vec({0, 0})));
    CHECK_THROWS_AS(normal_cone_contains(sq, vec({0, 0}), vec({1, 1})), ValidationError);

    SUBCASE("every separation witness lies in the vertex's normal cone")
    {
        for (std::uint64_t trial = 0; trial < 20; ++trial) {
            Substream rng(41, trial);
            std::vector<Vector> pts;
            for (int i = 0; i < 8; ++i) pts.push_back(rng.normal_vector(3));
            Polytope P(3, pts);
            for (std::size_t i = 0; i < P.size(); ++i) {
                std::vector<Vector> others;
                for (std::size_t j = 0; j < P.size(); ++j)
                    if (j != i) others.push_back(P.point(j));
                auto r = strict_feasibility(P.point(i), others);
                if (r.feasible) CHECK(normal_cone_contains(P, P.point(i), *r.witness));
            }
        }
    }
}

TEST_CASE("nonparallel_generator_count")
{
    std::vector<Segment> three{{vec({0, 0}), vec({1, 0})}, {vec({0, 0}), vec({0, 1})}, {vec({0, 0}), vec({1, 1})}};
    CHECK(nonparallel_generator_count(three).nonparallel == 3);

    std::vector<Segment> anti{{vec({0, 0}), vec({1, 0})}, {vec({0, 0}), vec({-2, 0})}};
    CHECK(nonparallel_generator_count(anti).nonparallel == 1);

    std::vector<Segment> zero{{vec({1, 1}), vec({1, 1})}, {vec({0, 0}), vec({0, 3})}};
    auto z = nonparallel_generator_count(zero);
    CHECK(z.nonparallel == 1);
    CHECK(z.zero_length == 1);

    // ReLU zonotope generators: segments from the zero term to (b; w)
    Substream rng(8, 0);
    std::vector<Segment> gens;
    for (int i = 0; i < 7; ++i) {
        auto P = newton_polytope(make_relu(rng.normal_vector(3), rng.normal_vector(1)(0)));
        gens.emplace_back(P.point(0), P.point(1));
    }
    CHECK(nonparallel_generator_count(gens).nonparallel == 7);
}

TEST_CASE("Newton polytope of a product equals the Minkowski sum of the factors")
{
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        Substream rng(2024, trial);
        const std::size_t n = 1 + trial % 3;
        auto p = oracle::random_polynomial(n, 1 + trial % 4, rng);
        auto q = oracle::random_polynomial(n, 1 + (trial / 4) % 4, rng);
        const auto lhs = eliminate_redundant(newton_polytope(trop_mul(p, q)));
        std::vector<Polytope> parts{newton_polytope(p), newton_polytope(q)};
        const auto rhs = eliminate_redundant(minkowski_candidates(parts).sum);
        CHECK(same_set(lhs.points(), rhs.points()));
    }
}

TEST_CASE("vertex count of generic zonotopes matches the face bound")
{
    for (std::size_t d = 2; d <= 4; ++d) {
        for (std::size_t m = 1; m <= 8; ++m) {
            auto segs = random_segments(m, d, 500 + 10 * d + m);
            const auto verts = eliminate_redundant(minkowski_candidates(segs).sum);
            const auto expect = zonotope_face_bound(static_cast<std::int64_t>(m), static_cast<std::int64_t>(d), 0);
            CHECK_MESSAGE(BigInt(verts.size()) == expect, "m=" << m << " d=" << d);
        }
    }
}
