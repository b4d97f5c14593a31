#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace tropreg::lp {

enum class Status { optimal, unbounded };

struct Solution {
    Status status = Status::optimal;
    double objective = 0.0;
    Eigen::VectorXd x;
    std::size_t pivots = 0;
};

/**
 * Primal simplex for
 *
 *     maximize    c.x
 *     subject to  A x <= b,  x >= 0
 *
 * with b >= 0, so the slack basis at the origin is feasible and no phase one
 * is needed. Entering and leaving variables follow Bland's rule, which rules
 * out cycling on degenerate vertices (these programs are highly degenerate:
 * the origin is always optimal for infeasible region tests).
 *
 * Throws SolverError if b has a negative entry, on shape mismatch, or when
 * `max_pivots` is exceeded.
 */
Solution maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                  std::size_t max_pivots = 100000);

} // namespace tropreg::lp
