#include "tropreg/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tropreg/errors.hpp"

namespace tropreg::lp {

namespace {
constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-12;
constexpr double kRatioEps = 1e-12;
} // namespace

// Primal simplex in constraint form. The n + m constraints are labelled
// 0..n-1 (x_k >= 0) and n..n+m-1 (row i of A x <= b). A vertex is named by the
// n tight ("nonbasic") labels; its coordinates and every slack are recomputed
// from the original data on each pivot, so roundoff cannot accumulate across
// long degenerate sequences. Bland's rule picks both labels.
Solution maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                  std::size_t max_pivots)
{
    const Eigen::Index m = A.rows();
    const Eigen::Index n = A.cols();
    if (b.size() != m || c.size() != n) {
        throw SolverError("simplex: inconsistent problem dimensions");
    }
    if (m > 0 && b.minCoeff() < 0.0) {
        throw SolverError("simplex: right-hand side must be nonnegative");
    }
    if (!A.allFinite() || !b.allFinite() || !c.allFinite()) {
        throw SolverError("simplex: non-finite problem data");
    }

    auto row_of = [&](Eigen::Index label) -> Eigen::VectorXd {
        if (label < n) {
            Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
            g(label) = -1.0;
            return g;
        }
        return A.row(label - n).transpose();
    };
    const Eigen::VectorXd row_norms = A.rowwise().norm();
    auto rhs_of = [&](Eigen::Index label) { return label < n ? 0.0 : b(label - n); };

    std::vector<Eigen::Index> tight(static_cast<std::size_t>(n));
    std::vector<char> is_tight(static_cast<std::size_t>(n + m), 0);
    for (Eigen::Index k = 0; k < n; ++k) {
        tight[k] = k;
        is_tight[k] = 1;
    }

    Solution sol;
    Eigen::MatrixXd G(n, n);
    Eigen::VectorXd h(n);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    for (;;) {
        if (n == 0) {
            break;
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            G.row(j) = row_of(tight[j]).transpose();
            h(j) = rhs_of(tight[j]);
        }
        lu.compute(G);
        x = lu.solve(h);
        const Eigen::VectorXd y = lu.transpose().solve(c);
        if (!x.allFinite() || !y.allFinite()) {
            throw SolverError("simplex: numerical breakdown (singular vertex basis)");
        }

        // Relaxing tight label j moves x along -G^{-1} e_j and changes the
        // objective at rate -y_j.
        Eigen::Index enter = -1;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (y(j) < -kCostEps && (enter < 0 || tight[j] < tight[enter])) {
                enter = j;
            }
        }
        if (enter < 0) {
            break;
        }
        Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
        unit(enter) = 1.0;
        const Eigen::VectorXd dx = -lu.solve(unit);
        const double dx_norm = dx.norm();

        const Eigen::VectorXd rate_rows = A * dx;
        const Eigen::VectorXd slack_rows = b - A * x;
        Eigen::Index leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index label = 0; label < n + m; ++label) {
            if (is_tight[label]) {
                continue;
            }
            const double rate = label < n ? -dx(label) : rate_rows(label - n);
            const double g_norm = label < n ? 1.0 : row_norms(label - n);
            if (rate <= kPivotEps * std::max(1.0, g_norm * dx_norm)) {
                continue;
            }
            const double slack = std::max(0.0, label < n ? x(label) : slack_rows(label - n));
            const double ratio = slack / rate;
            const double band = kRatioEps * std::max(1.0, std::abs(best));
            if (leave < 0 || ratio < best - band) {
                best = ratio;
                leave = label;
            } else if (ratio <= best + band && label < leave) {
                best = std::min(best, ratio);
                leave = label;
            }
        }
        if (leave < 0) {
            sol.status = Status::unbounded;
            sol.objective = std::numeric_limits<double>::infinity();
            sol.x = x;
            return sol;
        }
        if (++sol.pivots > max_pivots) {
            throw SolverError("simplex: pivot limit " + std::to_string(max_pivots) + " exceeded");
        }
        is_tight[tight[enter]] = 0;
        is_tight[leave] = 1;
        tight[enter] = leave;
    }

    sol.x = x;
    sol.objective = c.dot(x);
    return sol;
}

} // namespace tropreg::lp
