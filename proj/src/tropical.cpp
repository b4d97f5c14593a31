#include "tropreg/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tropreg {

namespace {

void require_finite(const Vector& v, const char* what)
{
    if (!v.allFinite()) {
        throw ValidationError(std::string(what) + ": non-finite entry");
    }
}

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) {
        throw ValidationError(std::string(what) + ": non-finite value");
    }
}

void require_dim(const TropicalPolynomial& p, const Vector& x)
{
    if (static_cast<std::size_t>(x.size()) != p.input_dim()) {
        throw ValidationError("dimension mismatch: polynomial has input_dim " + std::to_string(p.input_dim()) +
                              ", point has " + std::to_string(x.size()));
    }
}

void require_same_dim(const TropicalPolynomial& p, const TropicalPolynomial& q)
{
    if (p.input_dim() != q.input_dim()) {
        throw ValidationError("dimension mismatch: " + std::to_string(p.input_dim()) + " vs " +
                              std::to_string(q.input_dim()));
    }
}

} // namespace

Vector TropicalTerm::stacked() const
{
    Vector v(coeffs.size() + 1);
    v(0) = bias;
    v.tail(coeffs.size()) = coeffs;
    return v;
}

bool operator==(const TropicalTerm& a, const TropicalTerm& b)
{
    return a.bias == b.bias && a.coeffs.size() == b.coeffs.size() && a.coeffs == b.coeffs;
}

bool term_less(const TropicalTerm& a, const TropicalTerm& b)
{
    if (a.bias != b.bias) {
        return a.bias < b.bias;
    }
    return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
}

TropicalPolynomial::TropicalPolynomial(std::size_t input_dim, std::vector<TropicalTerm> terms)
    : input_dim_(input_dim)
{
    if (input_dim == 0) {
        throw ValidationError("tropical polynomial: input_dim must be positive");
    }
    if (terms.empty()) {
        throw ValidationError("tropical polynomial: at least one term is required");
    }
    terms_.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        auto& t = terms[i];
        if (static_cast<std::size_t>(t.coeffs.size()) != input_dim) {
            throw ValidationError("tropical polynomial: term " + std::to_string(i) + " has " +
                                  std::to_string(t.coeffs.size()) + " coefficients, expected " +
                                  std::to_string(input_dim));
        }
        require_finite(t.bias, "term bias");
        require_finite(t.coeffs, "term coefficients");
        if (std::find(terms_.begin(), terms_.end(), t) == terms_.end()) {
            terms_.push_back(std::move(t));
        }
    }
}

bool TropicalPolynomial::is_degenerate() const
{
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const TropicalTerm& t) { return t.coeffs == terms_.front().coeffs; });
}

TropicalPolynomial TropicalPolynomial::canonical() const
{
    auto sorted = terms_;
    std::sort(sorted.begin(), sorted.end(), term_less);
    return TropicalPolynomial(input_dim_, std::move(sorted));
}

bool operator==(const TropicalPolynomial& a, const TropicalPolynomial& b)
{
    return a.input_dim_ == b.input_dim_ && a.terms_ == b.terms_;
}

TropicalPolynomial make_relu(const Vector& w, double b)
{
    if (w.size() == 0) {
        throw ValidationError("relu: weight vector must be nonempty");
    }
    require_finite(w, "relu weights");
    require_finite(b, "relu bias");
    const auto n = static_cast<std::size_t>(w.size());
    return TropicalPolynomial(n, {{0.0, Vector::Zero(w.size())}, {b, w}});
}

TropicalPolynomial make_leaky_relu(const Vector& w, double b, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("leaky relu: alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    if (w.size() == 0) {
        throw ValidationError("leaky relu: weight vector must be nonempty");
    }
    require_finite(w, "leaky relu weights");
    require_finite(b, "leaky relu bias");
    const auto n = static_cast<std::size_t>(w.size());
    return TropicalPolynomial(n, {{alpha * b, alpha * w}, {b, w}});
}

TropicalPolynomial make_maxout(const Matrix& W, const Vector& b)
{
    if (W.rows() == 0 || W.cols() == 0) {
        throw ValidationError("maxout: weight matrix must be nonempty");
    }
    if (W.rows() != b.size()) {
        throw ValidationError("maxout: W has " + std::to_string(W.rows()) + " rows but b has " +
                              std::to_string(b.size()) + " entries");
    }
    std::vector<TropicalTerm> terms;
    terms.reserve(W.rows());
    for (Eigen::Index j = 0; j < W.rows(); ++j) {
        terms.push_back({b(j), W.row(j).transpose()});
    }
    return TropicalPolynomial(static_cast<std::size_t>(W.cols()), std::move(terms));
}

double evaluate(const TropicalPolynomial& p, const Vector& x)
{
    require_dim(p, x);
    MaxPlus acc;
    for (const auto& t : p.terms()) {
        acc = acc + MaxPlus{t.value(x)};
    }
    return acc.v;
}

std::vector<std::size_t> active_terms(const TropicalPolynomial& p, const Vector& x, double tol)
{
    if (tol < 0.0) {
        throw ValidationError("active_terms: tol must be nonnegative");
    }
    require_dim(p, x);
    std::vector<double> values;
    values.reserve(p.rank());
    for (const auto& t : p.terms()) {
        values.push_back(t.value(x));
    }
    const double best = *std::max_element(values.begin(), values.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= best - tol) {
            out.push_back(i);
        }
    }
    return out;
}

TropicalPolynomial trop_add(const TropicalPolynomial& p, const TropicalPolynomial& q)
{
    require_same_dim(p, q);
    auto terms = p.terms();
    terms.insert(terms.end(), q.terms().begin(), q.terms().end());
    return TropicalPolynomial(p.input_dim(), std::move(terms));
}

TropicalPolynomial trop_mul(const TropicalPolynomial& p, const TropicalPolynomial& q)
{
    require_same_dim(p, q);
    std::vector<TropicalTerm> terms;
    terms.reserve(p.rank() * q.rank());
    for (const auto& a : p.terms()) {
        for (const auto& b : q.terms()) {
            terms.push_back({a.bias + b.bias, a.coeffs + b.coeffs});
        }
    }
    return TropicalPolynomial(p.input_dim(), std::move(terms));
}

// ---------------------------------------------------------------------------

std::string to_string(UnitKind kind)
{
    switch (kind) {
    case UnitKind::relu:
        return "relu";
    case UnitKind::leaky_relu:
        return "lrelu";
    case UnitKind::maxout:
        return "maxout";
    case UnitKind::raw:
        return "raw";
    }
    return "unknown";
}

LayerSpec::LayerSpec(std::size_t input_dim, std::vector<Unit> units)
    : input_dim_(input_dim), units_(std::move(units))
{
    if (input_dim == 0) {
        throw ValidationError("layer: input dimension must be positive");
    }
    if (units_.empty()) {
        throw ValidationError("layer: at least one unit is required");
    }
    for (std::size_t i = 0; i < units_.size(); ++i) {
        const auto& u = units_[i];
        if (u.poly.input_dim() != input_dim) {
            throw ValidationError("layer: unit " + std::to_string(i) + " has input_dim " +
                                  std::to_string(u.poly.input_dim()) + ", expected " + std::to_string(input_dim));
        }
        if (u.kind == UnitKind::leaky_relu && !(u.alpha > 0.0 && u.alpha < 1.0)) {
            throw ValidationError("layer: unit " + std::to_string(i) + " has alpha outside (0, 1)");
        }
    }
}

std::vector<std::size_t> LayerSpec::ranks() const
{
    std::vector<std::size_t> r;
    r.reserve(units_.size());
    for (const auto& u : units_) {
        r.push_back(u.poly.rank());
    }
    return r;
}

bool operator==(const LayerSpec& a, const LayerSpec& b)
{
    if (a.input_dim_ != b.input_dim_ || a.units_.size() != b.units_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.units_.size(); ++i) {
        const auto& u = a.units_[i];
        const auto& v = b.units_[i];
        if (u.kind != v.kind || u.alpha != v.alpha || !(u.poly == v.poly)) {
            return false;
        }
    }
    return true;
}

Unit relu_unit(const Vector& w, double b) { return {UnitKind::relu, 0.0, make_relu(w, b)}; }

Unit leaky_relu_unit(const Vector& w, double b, double alpha)
{
    return {UnitKind::leaky_relu, alpha, make_leaky_relu(w, b, alpha)};
}

Unit maxout_unit(const Matrix& W, const Vector& b) { return {UnitKind::maxout, 0.0, make_maxout(W, b)}; }

Unit raw_unit(TropicalPolynomial p) { return {UnitKind::raw, 0.0, std::move(p)}; }

std::string to_string(const Configuration& c)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < c.indices.size(); ++i) {
        os << (i ? "," : "") << c.indices[i];
    }
    os << ')';
    return os.str();
}

Pattern layer_pattern(const LayerSpec& layer, const Vector& x, double tol)
{
    if (static_cast<std::size_t>(x.size()) != layer.input_dim()) {
        throw ValidationError("layer_pattern: dimension mismatch");
    }
    Pattern out;
    out.config.indices.reserve(layer.size());
    for (const auto& u : layer.units()) {
        const auto act = active_terms(u.poly, x, tol);
        out.config.indices.push_back(act.front());
        out.tie = out.tie || act.size() > 1;
    }
    return out;
}

} // namespace tropreg
