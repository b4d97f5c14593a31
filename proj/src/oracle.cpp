#include "tropreg/oracle.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "tropreg/parallel.hpp"
#include "tropreg/random.hpp"
#include "tropreg/simplex.hpp"

namespace tropreg {

namespace {

/// Rows (term_s - term_u) for every unit and every competitor u of the chosen term s.
std::vector<Vector> config_rows(const std::vector<std::vector<Vector>>& stacked, const Configuration& cfg)
{
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < stacked.size(); ++i) {
        const auto& terms = stacked[i];
        const auto& chosen = terms[cfg.indices[i]];
        for (std::size_t u = 0; u < terms.size(); ++u) {
            if (u != cfg.indices[i]) {
                rows.push_back(chosen - terms[u]);
            }
        }
    }
    return rows;
}

/// Is there (t, y) with t > tol, |t|,|y_j| <= 1 and a.(t, y) >= 0 for all rows? (closure of the cell is nonempty)
bool weakly_realizable(const std::vector<Vector>& rows, std::size_t dim, double tol)
{
    // variables: t, y+ (dim-1), y- (dim-1)
    const auto n_free = static_cast<Eigen::Index>(dim - 1);
    const Eigen::Index n_vars = 1 + 2 * n_free;
    const auto n_rows = static_cast<Eigen::Index>(rows.size()) + n_vars;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_rows, n_vars);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n_rows);
    Eigen::Index r = 0;
    for (const auto& a : rows) {
        A(r, 0) = -a(0);
        for (Eigen::Index j = 0; j < n_free; ++j) {
            A(r, 1 + j) = -a(1 + j);
            A(r, 1 + n_free + j) = a(1 + j);
        }
        ++r;
    }
    for (Eigen::Index v = 0; v < n_vars; ++v, ++r) {
        A(r, v) = 1.0;
        b(r) = 1.0;
    }
    Eigen::VectorXd obj = Eigen::VectorXd::Zero(n_vars);
    obj(0) = 1.0;
    return lp::maximize(A, b, obj).objective > tol;
}

Configuration decode(std::size_t code, const std::vector<std::size_t>& ranks)
{
    Configuration cfg{std::vector<std::size_t>(ranks.size())};
    for (std::size_t i = ranks.size(); i-- > 0;) {
        cfg.indices[i] = code % ranks[i];
        code /= ranks[i];
    }
    return cfg;
}

struct ExactAcc {
    std::vector<CountedRegion> regions;
    std::size_t degenerate = 0;
};

} // namespace

ExactCount count_regions_exact(const LayerSpec& layer, const CountOptions& opts)
{
    const auto ranks = layer.ranks();
    const auto total = checked_product(ranks, opts.cap);
    if (!total) {
        throw CapExceeded("count_regions_exact: more than " + std::to_string(opts.cap) +
                          " candidate configurations; use the sampler instead");
    }
    std::vector<std::vector<Vector>> stacked;
    for (const auto& u : layer.units()) {
        auto& terms = stacked.emplace_back();
        for (const auto& t : u.poly.terms()) {
            terms.push_back(t.stacked());
        }
    }
    const std::size_t dim = layer.input_dim() + 1;

    auto accs = parallel_chunks<ExactAcc>(*total, opts.threads, [&](std::size_t begin, std::size_t end, ExactAcc& acc) {
        for (std::size_t code = begin; code < end; ++code) {
            auto cfg = decode(code, ranks);
            const auto rows = config_rows(stacked, cfg);
            FeasibilityResult res;
            try {
                res = max_margin(rows, dim, {.fix_first = true, .tol = opts.tol});
            } catch (const SolverError& e) {
                throw SolverError(std::string(e.what()) + " at configuration " + to_string(cfg));
            }
            if (res.feasible) {
                acc.regions.push_back({std::move(cfg), res.witness->tail(static_cast<Eigen::Index>(dim - 1)), res.margin});
            } else if (weakly_realizable(rows, dim, opts.tol)) {
                ++acc.degenerate;
            }
        }
    });

    ExactCount out;
    for (auto& acc : accs) {
        std::move(acc.regions.begin(), acc.regions.end(), std::back_inserter(out.regions));
        out.degenerate += acc.degenerate;
    }
    std::sort(out.regions.begin(), out.regions.end(),
              [](const CountedRegion& a, const CountedRegion& b) { return a.config < b.config; });
    out.count = out.regions.size();
    return out;
}

std::size_t count_arrangement_regions(const LayerSpec& layer, const CountOptions& opts)
{
    const std::size_t m = layer.size();
    if (m > kArrangementMaxUnits) {
        throw CapExceeded("count_arrangement_regions: at most " + std::to_string(kArrangementMaxUnits) +
                          " units supported, got " + std::to_string(m));
    }
    std::vector<Vector> normals;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& p = layer.unit(i).poly;
        if (p.rank() != 2) {
            throw ValidationError("count_arrangement_regions: unit " + std::to_string(i) + " has rank " +
                                  std::to_string(p.rank()) + ", expected 2");
        }
        // positive side: the second term (the unit's active branch) wins
        normals.push_back(p.term(1).stacked() - p.term(0).stacked());
    }
    const std::size_t dim = layer.input_dim() + 1;

    // Depth-first over sign prefixes; an empty prefix cell empties every extension.
    std::size_t count = 0;
    std::vector<Vector> rows;
    auto descend = [&](auto&& self, std::size_t depth) -> void {
        if (depth == m) {
            ++count;
            return;
        }
        for (double sign : {-1.0, 1.0}) {
            rows.push_back(sign * normals[depth]);
            if (max_margin(rows, dim, {.fix_first = true, .tol = opts.tol}).feasible) {
                self(self, depth + 1);
            }
            rows.pop_back();
        }
    };
    descend(descend, 0);
    return count;
}

std::size_t count_by_input_sampling(const LayerSpec& layer, std::size_t K, std::uint64_t seed, double input_scale,
                                    double tol, unsigned threads)
{
    if (K < 1) {
        throw ValidationError("count_by_input_sampling: K must be at least 1");
    }
    if (!(input_scale > 0.0)) {
        throw ValidationError("count_by_input_sampling: input_scale must be positive");
    }
    const auto n = static_cast<Eigen::Index>(layer.input_dim());
    auto accs = parallel_chunks<std::set<Configuration>>(
        K, threads, [&](std::size_t begin, std::size_t end, std::set<Configuration>& seen) {
            for (std::size_t j = begin; j < end; ++j) {
                Substream rng(seed, j);
                const Vector x = input_scale * rng.normal_vector(n);
                auto pat = layer_pattern(layer, x, tol);
                // boundary hits are not interior points of any region
                if (!pat.tie) {
                    seen.insert(std::move(pat.config));
                }
            }
        });
    std::set<Configuration> all;
    for (auto& s : accs) {
        all.merge(s);
    }
    return std::max<std::size_t>(all.size(), 1);
}

} // namespace tropreg
