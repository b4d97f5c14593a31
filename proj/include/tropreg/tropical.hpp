#pragma once

/**
 * Max-plus scalars and tropical signomials.
 *
 * A tropical polynomial here is a finite maximum of affine terms
 *
 *     h(x) = max_i ( b_i + c_i . x )
 *
 * with real biases and real coefficient vectors. Neural activations that are
 * piecewise linear (ReLU, leaky ReLU, maxout) are exactly such maxima, which
 * is what the constructors below produce.
 */

#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tropreg/errors.hpp"

namespace tropreg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Max-plus scalar: "addition" is max, "multiplication" is +.
struct MaxPlus {
    double v = -std::numeric_limits<double>::infinity();

    static constexpr MaxPlus zero() { return {}; }
    static constexpr MaxPlus one() { return {0.0}; }

    constexpr MaxPlus operator+(MaxPlus o) const { return {v > o.v ? v : o.v}; }
    constexpr MaxPlus operator*(MaxPlus o) const { return {v + o.v}; }
    constexpr auto operator<=>(const MaxPlus&) const = default;
};

/// One affine piece b + c.x of a tropical polynomial.
struct TropicalTerm {
    double bias = 0.0;
    Vector coeffs;

    double value(const Vector& x) const { return bias + coeffs.dot(x); }

    /// (bias; coeffs) stacked into one vector, bias first.
    Vector stacked() const;
};

bool operator==(const TropicalTerm& a, const TropicalTerm& b);
/// Lexicographic on (bias, coeffs...). Used for canonical term ordering.
bool term_less(const TropicalTerm& a, const TropicalTerm& b);

class TropicalPolynomial {
public:
    /// Validates and drops exact duplicate terms (first occurrence wins, order kept).
    TropicalPolynomial(std::size_t input_dim, std::vector<TropicalTerm> terms);

    std::size_t input_dim() const { return input_dim_; }
    const std::vector<TropicalTerm>& terms() const { return terms_; }
    const TropicalTerm& term(std::size_t i) const { return terms_.at(i); }
    std::size_t rank() const { return terms_.size(); }

    /// True when every term has the same slope, i.e. the function is affine and has one region.
    bool is_degenerate() const;

    /// Terms sorted lexicographically; two polynomials with the same term set compare equal.
    TropicalPolynomial canonical() const;

    friend bool operator==(const TropicalPolynomial& a, const TropicalPolynomial& b);

private:
    std::size_t input_dim_;
    std::vector<TropicalTerm> terms_;
};

TropicalPolynomial make_relu(const Vector& w, double b);
TropicalPolynomial make_leaky_relu(const Vector& w, double b, double alpha);
TropicalPolynomial make_maxout(const Matrix& W, const Vector& b);

double evaluate(const TropicalPolynomial& p, const Vector& x);

/// Indices of terms whose value is within tol of the maximum, ascending.
std::vector<std::size_t> active_terms(const TropicalPolynomial& p, const Vector& x, double tol = kDefaultTol);

TropicalPolynomial trop_add(const TropicalPolynomial& p, const TropicalPolynomial& q);
TropicalPolynomial trop_mul(const TropicalPolynomial& p, const TropicalPolynomial& q);

// ---------------------------------------------------------------------------
// Layers

enum class UnitKind { relu, leaky_relu, maxout, raw };

std::string to_string(UnitKind kind);

struct Unit {
    UnitKind kind = UnitKind::raw;
    double alpha = 0.0; // leaky_relu only
    TropicalPolynomial poly;
};

/// A single piecewise-linear layer: m units over a shared input dimension n.
class LayerSpec {
public:
    LayerSpec(std::size_t input_dim, std::vector<Unit> units);

    std::size_t input_dim() const { return input_dim_; }
    std::size_t size() const { return units_.size(); }
    const std::vector<Unit>& units() const { return units_; }
    const Unit& unit(std::size_t i) const { return units_.at(i); }
    std::vector<std::size_t> ranks() const;

    friend bool operator==(const LayerSpec& a, const LayerSpec& b);

private:
    std::size_t input_dim_;
    std::vector<Unit> units_;
};

Unit relu_unit(const Vector& w, double b);
Unit leaky_relu_unit(const Vector& w, double b, double alpha);
Unit maxout_unit(const Matrix& W, const Vector& b);
Unit raw_unit(TropicalPolynomial p);

/// One term (or Newton-polytope point) index per unit / summand.
struct Configuration {
    std::vector<std::size_t> indices;

    auto operator<=>(const Configuration&) const = default;
    bool operator==(const Configuration&) const = default;
};

std::string to_string(const Configuration& c);

struct Pattern {
    Configuration config;
    bool tie = false;
};

/// Per-unit argmax term; ties (within tol) resolve to the smallest index and set `tie`.
Pattern layer_pattern(const LayerSpec& layer, const Vector& x, double tol = kDefaultTol);

} // namespace tropreg
