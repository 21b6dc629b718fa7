#include "nifem/solver.hpp"

#include <cmath>
#include <cstdio>

namespace nifem {

std::pair<Eigen::VectorXd, SolveStats> solve_spd(const SparseMat& A, const Eigen::VectorXd& b,
                                                 double tol, int max_iter,
                                                 const Eigen::VectorXd* x0,
                                                 const IterObserver& observer) {
    const Eigen::Index n = A.rows();
    if (max_iter < 0) max_iter = int(20.0 * std::sqrt(double(n)) + 200.0);

    Eigen::VectorXd dinv(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = A.coeff(i, i);
        if (d <= 0.0) throw NonPositiveDiagonal("solve_spd: nonpositive diagonal at row " +
                                                std::to_string(i));
        dinv(i) = 1.0 / d;
    }

    const double bnorm = b.norm();
    Eigen::VectorXd x = x0 ? *x0 : Eigen::VectorXd::Zero(n);
    if (bnorm == 0.0) return {Eigen::VectorXd::Zero(n), SolveStats{0, 0.0}};

    Eigen::VectorXd r = b - A * x;
    Eigen::VectorXd z = dinv.asDiagonal() * r;
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    SolveStats stats;
    stats.final_residual = r.norm() / bnorm;
    if (stats.final_residual <= tol) return {x, stats};

    for (int it = 1; it <= max_iter; ++it) {
        const Eigen::VectorXd Ap = A * p;
        const double alpha = rz / p.dot(Ap);
        x += alpha * p;
        r -= alpha * Ap;
        stats.iterations = it;
        stats.final_residual = r.norm() / bnorm;
        if (observer) observer(it, x);
        if (stats.final_residual <= tol) return {x, stats};
        z = dinv.asDiagonal() * r;
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    char res[32];
    std::snprintf(res, sizeof(res), "%.3e", stats.final_residual);
    throw NotConverged("solve_spd: no convergence in " + std::to_string(max_iter) +
                           " iterations (relative residual " + res + ")",
                       stats);
}

Eigen::VectorXd solve_dense_spd(const SparseMat& A, const Eigen::VectorXd& b) {
    const Eigen::MatrixXd dense = Eigen::MatrixXd(A);
    return dense.ldlt().solve(b);
}

} // namespace nifem
