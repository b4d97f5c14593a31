#include "tropreg/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tropreg/parallel.hpp"
#include "tropreg/random.hpp"

namespace tropreg {

namespace {

Matrix rows_of(const Polytope& P)
{
    Matrix V(static_cast<Eigen::Index>(P.size()), static_cast<Eigen::Index>(P.ambient_dim()));
    for (std::size_t i = 0; i < P.size(); ++i) {
        V.row(static_cast<Eigen::Index>(i)) = P.point(i).transpose();
    }
    return V;
}

/// Argmax of z with lowest-index tie-break; `tie` set when another entry is within tol.
std::size_t argmax_with_ties(const Vector& z, double tol, bool& tie)
{
    Eigen::Index best = 0;
    z.maxCoeff(&best); // first maximal index
    const double top = z(best);
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        if (i != best && z(i) >= top - tol) {
            tie = true;
            if (i < best) {
                best = i;
            }
        }
    }
    return static_cast<std::size_t>(best);
}

struct SampleAcc {
    std::set<Configuration> configs;
    std::size_t ties = 0;
};

} // namespace

void SamplePlan::validate() const
{
    if (K < 1) {
        throw ValidationError("sample plan: K must be at least 1");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ValidationError("sample plan: delta must lie in (0, 1)");
    }
}

Vector sample_direction(std::uint64_t seed, std::uint64_t index, std::size_t dim, SampleMode mode)
{
    Substream rng(seed, index);
    Vector g = rng.normal_vector(static_cast<Eigen::Index>(dim));
    if (mode == SampleMode::upper && g(0) < 0.0) {
        g = -g;
    }
    return g;
}

SampleResult sample_configurations(std::span<const Polytope> summands, const SamplePlan& plan, double tol,
                                   unsigned threads)
{
    plan.validate();
    if (summands.empty()) {
        throw ValidationError("sample_configurations: no summands");
    }
    const std::size_t dim = summands.front().ambient_dim();
    std::vector<Matrix> V;
    V.reserve(summands.size());
    for (const auto& P : summands) {
        if (P.ambient_dim() != dim) {
            throw ValidationError("sample_configurations: summands have different ambient dimensions");
        }
        V.push_back(rows_of(P));
    }

    auto accs = parallel_chunks<SampleAcc>(plan.K, threads, [&](std::size_t begin, std::size_t end, SampleAcc& acc) {
        Configuration cfg{std::vector<std::size_t>(V.size())};
        auto record = [&](const Vector& g) {
            bool tie = false;
            for (std::size_t i = 0; i < V.size(); ++i) {
                cfg.indices[i] = argmax_with_ties(V[i] * g, tol, tie);
            }
            acc.ties += tie ? 1 : 0;
            acc.configs.insert(cfg);
        };
        for (std::size_t j = begin; j < end; ++j) {
            const Vector g = sample_direction(plan.seed, j, dim, plan.mode);
            record(g);
            if (plan.mode == SampleMode::full) {
                // argmin under g == argmax under -g
                record(-g);
            }
        }
    });

    SampleResult out;
    out.samples = plan.K;
    for (auto& acc : accs) {
        out.configurations.merge(acc.configs);
        out.degenerate_ties += acc.ties;
    }
    return out;
}

SampleResult sample_configurations(const LayerSpec& layer, const SamplePlan& plan, double tol, unsigned threads)
{
    std::vector<Polytope> summands;
    summands.reserve(layer.size());
    for (const auto& u : layer.units()) {
        summands.push_back(newton_polytope(u.poly));
    }
    return sample_configurations(summands, plan, tol, threads);
}

// ---------------------------------------------------------------------------

double AngleSpectrum::full_sum() const { return std::accumulate(full.begin(), full.end(), 0.0); }

double AngleSpectrum::upper_sum() const { return std::accumulate(upper.begin(), upper.end(), 0.0); }

double AngleSpectrum::full_sum_stderr() const
{
    if (samples == 0) {
        return 0.0;
    }
    const double s = std::min(1.0, full_sum());
    return std::sqrt(s * (1.0 - s) / static_cast<double>(samples));
}

namespace {

struct AngleAcc {
    std::vector<std::size_t> full;
    std::vector<std::size_t> upper;
    std::size_t ties = 0;
};

} // namespace

AngleSpectrum estimate_solid_angles(const Polytope& P, std::span<const Vector> vertices, std::size_t samples,
                                    std::uint64_t seed, double tol, unsigned threads)
{
    if (samples < 1) {
        throw ValidationError("estimate_solid_angles: samples must be at least 1");
    }
    const auto dim = static_cast<Eigen::Index>(P.ambient_dim());
    Matrix verts(static_cast<Eigen::Index>(vertices.size()), dim);
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        const auto& v = vertices[k];
        if (v.size() != dim) {
            throw ValidationError("estimate_solid_angles: vertex " + std::to_string(k) + " has wrong dimension");
        }
        const auto& pts = P.points();
        if (std::none_of(pts.begin(), pts.end(),
                         [&](const Vector& z) { return (z - v).lpNorm<Eigen::Infinity>() <= tol; })) {
            throw ValidationError("estimate_solid_angles: vertex " + std::to_string(k) + " is not a point of P");
        }
        verts.row(static_cast<Eigen::Index>(k)) = v.transpose();
    }
    const Matrix all = rows_of(P);
    const std::size_t nv = vertices.size();

    // g lies in N_P(v) iff <g, v> >= max_z <g, z> - tol, which is normal_cone_contains(P, v, g, tol).
    auto accs = parallel_chunks<AngleAcc>(samples, threads, [&](std::size_t begin, std::size_t end, AngleAcc& acc) {
        acc.full.assign(nv, 0);
        acc.upper.assign(nv, 0);
        for (std::size_t j = begin; j < end; ++j) {
            Substream rng(seed, j);
            Vector g = rng.normal_vector(dim);
            for (int pass = 0; pass < 2; ++pass) {
                if (pass == 1 && g(0) < 0.0) {
                    g = -g;
                }
                const double top = (all * g).maxCoeff();
                const Vector vals = verts * g;
                auto& hits = pass == 0 ? acc.full : acc.upper;
                std::size_t n_hit = 0;
                for (std::size_t k = 0; k < nv; ++k) {
                    if (vals(static_cast<Eigen::Index>(k)) >= top - tol) {
                        ++hits[k];
                        ++n_hit;
                    }
                }
                if (pass == 0 && n_hit > 1) {
                    ++acc.ties;
                }
            }
        }
    });

    AngleSpectrum out;
    out.samples = samples;
    std::vector<std::size_t> full(nv, 0), upper(nv, 0);
    for (const auto& acc : accs) {
        for (std::size_t k = 0; k < nv && k < acc.full.size(); ++k) {
            full[k] += acc.full[k];
            upper[k] += acc.upper[k];
        }
        out.ties += acc.ties;
    }
    const auto S = static_cast<double>(samples);
    for (std::size_t k = 0; k < nv; ++k) {
        const double f = static_cast<double>(full[k]) / S;
        const double u = static_cast<double>(upper[k]) / S;
        out.full.push_back(f);
        out.upper.push_back(u);
        out.full_stderr.push_back(std::sqrt(f * (1.0 - f) / S));
        out.upper_stderr.push_back(std::sqrt(u * (1.0 - u) / S));
    }
    return out;
}

std::size_t samples_for_failure_rate(double q, std::size_t N, double delta)
{
    if (!(delta > 0.0)) {
        throw ValidationError("sample size: delta must be positive");
    }
    if (N == 0) {
        throw ValidationError("sample size: N must be at least 1");
    }
    const double log_ratio = std::log(static_cast<double>(N) / delta);
    if (q <= 0.0 || log_ratio <= 0.0) {
        return 1;
    }
    if (q >= 1.0) {
        throw UnboundedSampleSize("sample size: per-sample miss probability is 1");
    }
    const double k = log_ratio / -std::log(q);
    // guard against 8.0000000001 -> 9 from rounding in the logs
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(k - 1e-9)));
}

namespace {

void require_positive(const std::vector<double>& w, const char* which)
{
    std::string bad;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (!(w[k] > 0.0)) {
            bad += (bad.empty() ? "" : ", ") + std::to_string(k);
        }
    }
    if (!bad.empty()) {
        throw UnboundedSampleSize(std::string("sample size unbounded: zero ") + which + " angle estimate at vertex " + bad);
    }
    if (w.empty()) {
        throw ValidationError("sample size: empty angle spectrum");
    }
}

} // namespace

std::size_t required_samples_full(const AngleSpectrum& angles, std::size_t N, double delta)
{
    require_positive(angles.full, "full-cone");
    double q = 0.0;
    for (double w : angles.full) {
        q = std::max(q, 1.0 - 2.0 * w);
    }
    return samples_for_failure_rate(q, N, delta);
}

std::size_t required_samples_upper(const AngleSpectrum& angles, std::size_t N, double delta)
{
    require_positive(angles.upper, "truncated-cone");
    double q = 0.0;
    for (double w : angles.upper) {
        q = std::max(q, 1.0 - w);
    }
    return samples_for_failure_rate(q, N, delta);
}

std::size_t required_samples_eta(double eta, std::size_t N, double delta)
{
    if (!(eta > 0.0 && eta < 0.5)) {
        throw ValidationError("required_samples_eta: eta must lie in (0, 1/2)");
    }
    if (!(delta > 0.0)) {
        throw ValidationError("required_samples_eta: delta must be positive");
    }
    const double k = std::log(static_cast<double>(N) / delta) / (2.0 * eta);
    if (k <= 1.0) {
        return 1;
    }
    return static_cast<std::size_t>(std::ceil(k - 1e-9));
}

Polytope layer_sum_polytope(const LayerSpec& layer, double tol, std::size_t cap)
{
    std::vector<Polytope> summands;
    summands.reserve(layer.size());
    for (const auto& u : layer.units()) {
        summands.push_back(eliminate_redundant(newton_polytope(u.poly), tol));
    }
    return eliminate_redundant(minkowski_candidates(summands, cap).sum, tol);
}

UpperSamplePlan plan_upper_samples(const LayerSpec& layer, std::size_t angle_samples, double delta,
                                   std::uint64_t seed, double tol, std::size_t cap, unsigned threads)
{
    const auto P = layer_sum_polytope(layer, tol, cap);
    UpperSamplePlan plan;
    plan.upper_vertices = upper_hull_vertices(P, tol);
    plan.N = plan.upper_vertices.size();
    plan.angles = estimate_solid_angles(P, plan.upper_vertices, angle_samples, seed, tol, threads);
    plan.K = required_samples_upper(plan.angles, plan.N, delta);
    return plan;
}

} // namespace tropreg
