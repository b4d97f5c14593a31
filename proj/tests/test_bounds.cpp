#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/oracles.hpp"
#include "tropreg/bounds.hpp"
#include "tropreg/errors.hpp"

using namespace tropreg;

TEST_CASE("binomial agrees with Pascal's triangle")
{
    for (int n = 0; n <= 40; ++n) {
        for (int k = -1; k <= n + 1; ++k) {
            CHECK(binomial(n, k) == oracle::pascal_binomial(n, k));
        }
    }
    CHECK(binomial(-3, 1) == 0);
    CHECK(binomial(100, 50) == BigInt("100891344545564193334812497256"));
    CHECK(binomial_prefix_sum(5, -1) == 0);
    CHECK(binomial_prefix_sum(5, 5) == 32);
    CHECK(binomial_prefix_sum(5, 9) == 32);
}

TEST_CASE("relu_layer_bound")
{
    auto r = relu_layer_bound(2, 3);
    CHECK(r.bound == 7);
    CHECK(r.branch == Branch::binomial_sum);
    CHECK(relu_layer_bound(3, 3).bound == 8);
    CHECK(relu_layer_bound(3, 3).branch == Branch::equal);
    CHECK(relu_layer_bound(5, 3).bound == 8);
    CHECK(relu_layer_bound(5, 3).branch == Branch::equal);
    CHECK(relu_layer_bound(1, 3).branch == Branch::binomial_sum);
    CHECK(maxout_layer_bound(1, 1, 3).branch == Branch::power);
    CHECK(relu_layer_bound(1, 1).bound == 2);
    CHECK(relu_layer_bound(2, 100).bound == oracle::pascal_prefix(100, 2));
    CHECK(relu_layer_bound(80, 80).bound == BigInt(1) << 80);
    CHECK_THROWS_AS(relu_layer_bound(0, 3), ValidationError);
    CHECK_THROWS_AS(relu_layer_bound(2, 0), ValidationError);

    for (int n = 1; n <= 10; ++n) {
        for (int m = 1; m <= 14; ++m) {
            const BigInt power = BigInt(1) << m;
            const BigInt sum = oracle::pascal_prefix(m, n);
            CHECK(relu_layer_bound(n, m).bound == (power < sum ? power : sum));
        }
    }
}

TEST_CASE("maxout_layer_bound")
{
    CHECK(maxout_layer_bound(1, 1, 3).bound == 3);
    CHECK(maxout_layer_bound(2, 2, 3).bound == 9);
    CHECK(maxout_layer_bound(2, 3, 3).bound == 27);
    for (int n = 1; n <= 4; ++n) {
        for (int m = 1; m <= 6; ++m) {
            const BigInt power = BigInt(1) << m;
            const BigInt sum = 2 * oracle::pascal_prefix(m, n);
            CHECK(maxout_layer_bound(n, m, 2).bound == (power < sum ? power : sum));
            CHECK(maxout_layer_bound(n, m, 2).bound >= relu_layer_bound(n, m).bound);
        }
    }
    CHECK(maxout_layer_bound(2, 4, 5).bound == 625);
    CHECK(maxout_layer_bound(2, 9, 5).bound == 2 * oracle::pascal_prefix(90, 2));
    CHECK_THROWS_AS(maxout_layer_bound(2, 2, 1), ValidationError);
}

TEST_CASE("conv_layer_bound")
{
    auto c = conv_layer_bound(4, 3, 0);
    CHECK(c.bound == 16);
    CHECK(c.parameters.at("n") == 16);
    CHECK(c.parameters.at("m") == 4);
    CHECK(conv_layer_bound(5, 5, 0).bound == 2);
    CHECK(conv_layer_bound(2, 3, 1).bound == 16);
    CHECK(conv_layer_bound(8, 3, 1).bound == relu_layer_bound(64, 64).bound);
    CHECK_THROWS_AS(conv_layer_bound(2, 5, 0), ValidationError);
    CHECK_THROWS_AS(conv_layer_bound(0, 1, 0), ValidationError);
}

TEST_CASE("zonotope_face_bound")
{
    CHECK(zonotope_face_bound(3, 2, 0) == 6);
    CHECK(zonotope_face_bound(4, 3, 0) == 14);
    for (int m = 1; m <= 8; ++m) {
        for (int amb = 1; amb <= std::min(m, 5); ++amb) {
            CHECK(zonotope_face_bound(m, amb, amb - 1) == 2 * oracle::pascal_binomial(m, amb - 1));
        }
    }
    // segments in the plane: 2m vertices and 2m edges
    for (int m = 1; m <= 10; ++m) {
        CHECK(zonotope_face_bound(m, 2, 0) == 2 * m);
        if (m >= 2) CHECK(zonotope_face_bound(m, 2, 1) == 2 * m);
    }
    CHECK_THROWS_AS(zonotope_face_bound(3, 2, 2), ValidationError);
    CHECK_THROWS_AS(zonotope_face_bound(3, 2, -1), ValidationError);
    CHECK_THROWS_AS(zonotope_face_bound(0, 2, 0), ValidationError);
}

TEST_CASE("ReLU bound is the mean of the two zonotope vertex bounds")
{
    for (int n = 1; n <= 12; ++n) {
        for (int m = 1; m <= 12; ++m) {
            const BigInt lhs = oracle::pascal_prefix(m, n);
            const BigInt twice = zonotope_face_bound(m, n + 1, 0) + zonotope_face_bound(m, n, 0);
            CHECK(2 * lhs == twice);
            CHECK(binomial_prefix_sum(m, n) == lhs);
        }
    }
}

TEST_CASE("bounds are nondecreasing in every argument")
{
    for (int n = 1; n <= 8; ++n) {
        for (int m = 1; m <= 10; ++m) {
            CHECK(relu_layer_bound(n + 1, m).bound >= relu_layer_bound(n, m).bound);
            CHECK(relu_layer_bound(n, m + 1).bound >= relu_layer_bound(n, m).bound);
            for (int k = 2; k <= 5; ++k) {
                const BigInt here = maxout_layer_bound(n, m, k).bound;
                CHECK(maxout_layer_bound(n + 1, m, k).bound >= here);
                CHECK(maxout_layer_bound(n, m + 1, k).bound >= here);
                CHECK(maxout_layer_bound(n, m, k + 1).bound >= here);
            }
        }
    }
}
