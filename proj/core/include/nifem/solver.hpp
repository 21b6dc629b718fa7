#pragma once

#include <Eigen/Dense>
#include <functional>

#include "nifem/assembly.hpp"

namespace nifem {

struct SolveStats {
    int iterations = 0;
    double final_residual = 0.0; // |A x - b| / |b|
};

struct NotConverged : Error {
    SolveStats stats;
    NotConverged(const std::string& msg, SolveStats st) : Error(msg), stats(st) {}
};

// Called after every iteration with the current iterate.
using IterObserver = std::function<void(int iteration, const Eigen::VectorXd& x)>;

// Conjugate gradients with Jacobi (diagonal) preconditioning. Stops when
// |A x - b| <= tol |b|. max_iter < 0 selects the default 20 sqrt(n) + 200.
// Throws NonPositiveDiagonal if any diagonal entry is <= 0 (an assembly bug)
// and NotConverged (carrying the stats) when the iteration cap is reached.
std::pair<Eigen::VectorXd, SolveStats> solve_spd(const SparseMat& A, const Eigen::VectorXd& b,
                                                 double tol = 1e-12, int max_iter = -1,
                                                 const Eigen::VectorXd* x0 = nullptr,
                                                 const IterObserver& observer = {});

// Dense Cholesky-based reference solve, intended for systems up to a couple
// of thousand unknowns (used as the oracle for the iterative path).
Eigen::VectorXd solve_dense_spd(const SparseMat& A, const Eigen::VectorXd& b);

} // namespace nifem
