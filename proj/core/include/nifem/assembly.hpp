#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>

#include "nifem/mesh.hpp"

namespace nifem {

// One DOF per edge midpoint, except: boundary edges carry none (homogeneous
// Dirichlet data is eliminated up front) and the internal chord of a macro
// cell carries none (its five outer DOFs determine both pieces). An
// interface edge shared by two plain triangles keeps a regular shared DOF.
// Numbering follows the mesh edge order, which is sorted by endpoint pair.
struct DofMap {
    std::vector<int> edge_dof; // -1 where the edge has no DOF
    int n_dofs = 0;
    std::vector<int> boundary_edges;

    int dof(int edge) const { return edge_dof[size_t(edge)]; }
};

DofMap build_dofmap(const FittedMesh& fm);

using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct SparseSystem {
    SparseMat A;
    Eigen::VectorXd rhs;
};

using ScalarField = std::function<double(Vec2)>;

// Diffusion coefficient per subdomain tag.
inline double beta_for(SideTag side, double beta_omega1, double beta_omega2) {
    return side == SideTag::Omega1 ? beta_omega1 : beta_omega2;
}

// Element stiffness: sum over sub-cells of beta * area * (grad_i . grad_j)
// with constant gradients, so the integrals are exact. beta_omega1 applies
// to sub-cells tagged Omega1, beta_omega2 to Omega2.
// Throws DegenerateCell when a sub-cell area underflows (<= 1e-16 h^2).
Eigen::Matrix3d local_stiffness(const FittedMesh& fm, const PlainTri& pt,
                                double beta_omega1, double beta_omega2);
Eigen::Matrix<double, 5, 5> local_stiffness(const FittedMesh& fm, const MacroCell& mc,
                                            double beta_omega1, double beta_omega2);

// Element load: midpoint-rule (degree 2) integration of f * basis per
// sub-triangle; the quadrilateral piece of a macro cell is split along the
// A1-A3 diagonal for quadrature only.
Eigen::Vector3d local_load(const FittedMesh& fm, const PlainTri& pt, const ScalarField& f);
Eigen::Matrix<double, 5, 1> local_load(const FittedMesh& fm, const MacroCell& mc,
                                       const ScalarField& f);

// Global assembly. Rows and columns for boundary edges are never created.
// When boundary_values is given (test hook for inhomogeneous data), each
// eliminated boundary DOF contributes -K(i, b) * boundary_values(midpoint_b)
// to the right-hand side.
SparseSystem assemble_system(const FittedMesh& fm, const DofMap& dm, double beta_omega1,
                             double beta_omega2, const ScalarField& f,
                             const ScalarField* boundary_values = nullptr);

} // namespace nifem
