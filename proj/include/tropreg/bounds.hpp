#pragma once

// Closed-form upper bounds on the number of linear regions of one layer.
// All arithmetic is exact; binomial sums outgrow 64 bits quickly.

#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tropreg {

using BigInt = boost::multiprecision::cpp_int;

/// Which side of min(power, binomial sum) was the smaller one.
enum class Branch { power, binomial_sum, equal, formula };

std::string to_string(Branch b);

struct BoundReport {
    BigInt bound;
    Branch branch = Branch::formula;
    std::map<std::string, std::int64_t> parameters;
};

/// C(n, k), zero for k < 0, k > n or n < 0.
BigInt binomial(std::int64_t n, std::int64_t k);

/// sum_{j=0}^{upto} C(n, j); zero when upto < 0.
BigInt binomial_prefix_sum(std::int64_t n, std::int64_t upto);

/// min(2^m, sum_{j=0}^{n} C(m, j)).
BoundReport relu_layer_bound(std::int64_t n, std::int64_t m);

/// min(k^m, 2 sum_{j=0}^{n} C(m k (k-1) / 2, j)).
BoundReport maxout_layer_bound(std::int64_t n, std::int64_t m, std::int64_t k);

/// Stride-1, single-channel convolution on d x d images: the ReLU bound with n = d^2, m = (d - k + 2p + 1)^2.
BoundReport conv_layer_bound(std::int64_t d, std::int64_t k, std::int64_t p);

/// 2 C(m, i) sum_{j=0}^{ambient-1-i} C(m-1-i, j): i-faces of a sum of m segments in R^ambient.
BigInt zonotope_face_bound(std::int64_t m, std::int64_t ambient, std::int64_t i);

} // namespace tropreg
