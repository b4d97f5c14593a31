#include "tropreg/bounds.hpp"

#include "tropreg/errors.hpp"

namespace tropreg {

namespace {

BigInt power(const BigInt& base, std::int64_t exp)
{
    BigInt r = 1;
    for (std::int64_t i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

BoundReport min_report(BigInt pow_side, BigInt sum_side)
{
    BoundReport r;
    if (pow_side < sum_side) {
        r.bound = std::move(pow_side);
        r.branch = Branch::power;
    } else if (sum_side < pow_side) {
        r.bound = std::move(sum_side);
        r.branch = Branch::binomial_sum;
    } else {
        r.bound = std::move(pow_side);
        r.branch = Branch::equal;
    }
    return r;
}

} // namespace

std::string to_string(Branch b)
{
    switch (b) {
    case Branch::power:
        return "power";
    case Branch::binomial_sum:
        return "binomial_sum";
    case Branch::equal:
        return "equal";
    case Branch::formula:
        return "formula";
    }
    return "unknown";
}

BigInt binomial(std::int64_t n, std::int64_t k)
{
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::int64_t j = 1; j <= k; ++j) {
        r *= n - k + j;
        r /= j;
    }
    return r;
}

BigInt binomial_prefix_sum(std::int64_t n, std::int64_t upto)
{
    BigInt s = 0;
    for (std::int64_t j = 0; j <= upto && j <= n; ++j) {
        s += binomial(n, j);
    }
    return s;
}

BoundReport relu_layer_bound(std::int64_t n, std::int64_t m)
{
    if (n < 1 || m < 1) {
        throw ValidationError("relu_layer_bound: n and m must be at least 1");
    }
    auto r = min_report(power(2, m), binomial_prefix_sum(m, n));
    r.parameters = {{"n", n}, {"m", m}};
    return r;
}

BoundReport maxout_layer_bound(std::int64_t n, std::int64_t m, std::int64_t k)
{
    if (n < 1 || m < 1) {
        throw ValidationError("maxout_layer_bound: n and m must be at least 1");
    }
    if (k < 2) {
        throw ValidationError("maxout_layer_bound: rank k must be at least 2");
    }
    const std::int64_t edges = m * k * (k - 1) / 2;
    auto r = min_report(power(k, m), 2 * binomial_prefix_sum(edges, n));
    r.parameters = {{"n", n}, {"m", m}, {"k", k}};
    return r;
}

BoundReport conv_layer_bound(std::int64_t d, std::int64_t k, std::int64_t p)
{
    if (d < 1) {
        throw ValidationError("conv_layer_bound: image side d must be at least 1");
    }
    if (k < 1 || p < 0) {
        throw ValidationError("conv_layer_bound: filter size must be >= 1 and padding >= 0");
    }
    const std::int64_t side = d - k + 2 * p + 1;
    if (side < 1) {
        throw ValidationError("conv_layer_bound: output side d - k + 2p + 1 = " + std::to_string(side) +
                              " is not positive");
    }
    auto r = relu_layer_bound(d * d, side * side);
    r.parameters = {{"d", d}, {"k", k}, {"p", p}, {"n", d * d}, {"m", side * side}};
    return r;
}

BigInt zonotope_face_bound(std::int64_t m, std::int64_t ambient, std::int64_t i)
{
    if (m < 1 || ambient < 1) {
        throw ValidationError("zonotope_face_bound: m and ambient dimension must be at least 1");
    }
    if (i < 0 || i > ambient - 1) {
        throw ValidationError("zonotope_face_bound: face index " + std::to_string(i) + " outside [0, " +
                              std::to_string(ambient - 1) + "]");
    }
    return 2 * binomial(m, i) * binomial_prefix_sum(m - 1 - i, ambient - 1 - i);
}

} // namespace tropreg
