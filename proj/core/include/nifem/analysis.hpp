#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nifem/problems.hpp"

namespace nifem {

struct ErrorReport {
    double h = 0.0;
    double err_L2 = 0.0;
    double err_H1 = 0.0; // broken H1 seminorm (element-wise gradients)
    std::optional<double> order_L2;
    std::optional<double> order_H1;
};

// Edge-midpoint interpolation: the DOF on an edge gets the average of v at
// the edge endpoints. v must be continuous there and vanish on the boundary
// (boundary DOFs do not exist in the assembled space).
Eigen::VectorXd interpolate_pi_h(const FittedMesh& fm, const DofMap& dm, const ScalarField& v);

// L2 and broken H1 errors of the discrete field against the exact solution,
// integrated with the given quadrature degree per sub-triangle. The exact
// fields are evaluated at the physical quadrature points, so which subdomain
// applies is decided by the true interface, not the discrete one.
std::pair<double, double> error_norms(const FittedMesh& fm, const Eigen::VectorXd& coeffs,
                                      const DofMap& dm, const ScalarField& u_exact,
                                      const VectorField& grad_u_exact, int degree = 4);

// Coefficients seen by one cell, in local DOF order (0 for edges without a
// DOF, i.e. boundary edges).
std::array<double, 3> local_coeffs(const PlainTri& pt, const DofMap& dm,
                                   const Eigen::VectorXd& coeffs);
std::array<double, 5> local_coeffs(const MacroCell& mc, const DofMap& dm,
                                   const Eigen::VectorXd& coeffs);

// Value of the discrete field on one side of an edge at point p.
double trace_value(const FittedMesh& fm, const Eigen::VectorXd& coeffs, const DofMap& dm,
                   const EdgeUse& use, Vec2 p);

// max over interior edges of |integral of the jump| / edge length. The
// integrand is affine per side, so the midpoint value is exact.
double weak_continuity_residual(const FittedMesh& fm, const Eigen::VectorXd& coeffs,
                                const DofMap& dm);

// Same, but the per-side trace is supplied by the caller (lets tests probe a
// deliberately broken local representation).
using EdgeTraceFn = std::function<double(int edge, const EdgeUse& use, Vec2 p)>;
double weak_continuity_residual(const FittedMesh& fm, const EdgeTraceFn& trace);

// Empirical orders: order_k = log(err_{k-1}/err_k) / log(h_{k-1}/h_k).
std::vector<double> eoc(const std::vector<std::pair<double, double>>& h_and_err);

} // namespace nifem
