#include "nifem/assembly.hpp"

#include <array>
#include <vector>

namespace nifem {

DofMap build_dofmap(const FittedMesh& fm) {
    DofMap dm;
    dm.edge_dof.assign(fm.edges.size(), -1);
    for (int ei = 0; ei < int(fm.edges.size()); ++ei) {
        const Edge& e = fm.edges[size_t(ei)];
        if (e.cls == EdgeClass::Boundary) {
            dm.boundary_edges.push_back(ei);
            continue;
        }
        const bool macro_internal = e.n_use == 2 && e.use[0].cell == e.use[1].cell;
        if (macro_internal) continue;
        dm.edge_dof[size_t(ei)] = dm.n_dofs++;
    }
    return dm;
}

namespace {

void check_area(double area, double h) {
    if (area <= 1e-16 * h * h) throw DegenerateCell("sub-cell area underflow");
}

} // namespace

Eigen::Matrix3d local_stiffness(const FittedMesh& fm, const PlainTri& pt, double beta_omega1,
                                double beta_omega2) {
    const Vec2 p0 = fm.vertex(pt.v[0]), p1 = fm.vertex(pt.v[1]), p2 = fm.vertex(pt.v[2]);
    const double area = tri_area(p0, p1, p2);
    check_area(area, fm.h);
    const auto g = cr_gradients(p0, p1, p2);
    const double beta = beta_for(pt.side, beta_omega1, beta_omega2);
    Eigen::Matrix3d K;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            K(i, j) = beta * area * dot(g[size_t(i)], g[size_t(j)]);
    return K;
}

Eigen::Matrix<double, 5, 5> local_stiffness(const FittedMesh& fm, const MacroCell& mc,
                                            double beta_omega1, double beta_omega2) {
    const ReferenceMacro rm = reference_macro(mc.s, mc.t);
    const double jac = std::abs(mc.map.detB);
    const double area_Q = jac * rm.area_Q;
    const double area_T = jac * rm.area_T;
    check_area(area_Q, fm.h);
    check_area(area_T, fm.h);
    const double beta_Q = beta_for(mc.quad_side, beta_omega1, beta_omega2);
    const double beta_T = beta_for(mc.tri_side, beta_omega1, beta_omega2);
    std::array<Vec2, 5> gQ, gT;
    for (int i = 0; i < 5; ++i) {
        gQ[size_t(i)] = physical_gradient(mc.map, grad_reference_basis(rm, i, Subcell::Qhat));
        gT[size_t(i)] = physical_gradient(mc.map, grad_reference_basis(rm, i, Subcell::That));
    }
    Eigen::Matrix<double, 5, 5> K;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            K(i, j) = beta_Q * area_Q * dot(gQ[size_t(i)], gQ[size_t(j)]) +
                      beta_T * area_T * dot(gT[size_t(i)], gT[size_t(j)]);
    return K;
}

Eigen::Vector3d local_load(const FittedMesh& fm, const PlainTri& pt, const ScalarField& f) {
    const Vec2 p[3] = {fm.vertex(pt.v[0]), fm.vertex(pt.v[1]), fm.vertex(pt.v[2])};
    const double area = tri_area(p[0], p[1], p[2]);
    const QuadratureRule& qr = quadrature(2);
    Eigen::Vector3d F = Eigen::Vector3d::Zero();
    for (size_t q = 0; q < qr.points.size(); ++q) {
        const auto& l = qr.points[q];
        const Vec2 x = l.l0 * p[0] + l.l1 * p[1] + l.l2 * p[2];
        const double wf = qr.weights[q] * area * f(x);
        for (int i = 0; i < 3; ++i) F(i) += wf * cr_value(i, l.l0, l.l1, l.l2);
    }
    return F;
}

Eigen::Matrix<double, 5, 1> local_load(const FittedMesh& fm, const MacroCell& mc,
                                       const ScalarField& f) {
    const ReferenceMacro rm = reference_macro(mc.s, mc.t);
    const double jac = std::abs(mc.map.detB);
    const QuadratureRule& qr = quadrature(2);
    Eigen::Matrix<double, 5, 1> F = Eigen::Matrix<double, 5, 1>::Zero();
    // reference sub-triangles: That plus the Qhat split along A1-A3
    const struct {
        Vec2 c0, c1, c2;
        Subcell sc;
    } subs[3] = {
        {rm.corner[2], rm.corner[3], rm.corner[4], Subcell::That},
        {rm.corner[0], rm.corner[1], rm.corner[2], Subcell::Qhat},
        {rm.corner[0], rm.corner[2], rm.corner[4], Subcell::Qhat},
    };
    for (const auto& sub : subs) {
        const double area = jac * tri_area(sub.c0, sub.c1, sub.c2);
        for (size_t q = 0; q < qr.points.size(); ++q) {
            const auto& l = qr.points[q];
            const Vec2 xr = l.l0 * sub.c0 + l.l1 * sub.c1 + l.l2 * sub.c2;
            const double wf = qr.weights[q] * area * f(apply(mc.map, xr));
            for (int i = 0; i < 5; ++i) F(i) += wf * rm.piece(i, sub.sc)(xr);
        }
    }
    return F;
}

namespace {

template <int N>
void scatter(const FittedMesh& fm, const DofMap& dm, const std::array<int, size_t(N)>& edges,
             const Eigen::Matrix<double, N, N>& K, const Eigen::Matrix<double, N, 1>& F,
             std::vector<Eigen::Triplet<double>>& trips, Eigen::VectorXd& rhs,
             const ScalarField* boundary_values) {
    std::array<int, size_t(N)> gdof;
    for (int i = 0; i < N; ++i) gdof[size_t(i)] = dm.dof(edges[size_t(i)]);
    for (int i = 0; i < N; ++i) {
        if (gdof[size_t(i)] < 0) continue;
        rhs(gdof[size_t(i)]) += F(i);
        for (int j = 0; j < N; ++j) {
            if (gdof[size_t(j)] >= 0) {
                trips.emplace_back(gdof[size_t(i)], gdof[size_t(j)], K(i, j));
            } else if (boundary_values) {
                const Edge& e = fm.edges[size_t(edges[size_t(j)])];
                if (e.cls != EdgeClass::Boundary) continue;
                const Vec2 mid = 0.5 * (fm.vertex(e.v0) + fm.vertex(e.v1));
                rhs(gdof[size_t(i)]) -= K(i, j) * (*boundary_values)(mid);
            }
        }
    }
}

} // namespace

SparseSystem assemble_system(const FittedMesh& fm, const DofMap& dm, double beta_omega1,
                             double beta_omega2, const ScalarField& f,
                             const ScalarField* boundary_values) {
    SparseSystem sys;
    sys.rhs = Eigen::VectorXd::Zero(dm.n_dofs);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(fm.cells.size() * 12);
    for (const auto& cell : fm.cells) {
        if (const auto* pt = std::get_if<PlainTri>(&cell)) {
            scatter<3>(fm, dm, pt->edge, local_stiffness(fm, *pt, beta_omega1, beta_omega2),
                       local_load(fm, *pt, f), trips, sys.rhs, boundary_values);
        } else {
            const auto& mc = std::get<MacroCell>(cell);
            scatter<5>(fm, dm, mc.edge, local_stiffness(fm, mc, beta_omega1, beta_omega2),
                       local_load(fm, mc, f), trips, sys.rhs, boundary_values);
        }
    }
    sys.A.resize(dm.n_dofs, dm.n_dofs);
    sys.A.setFromTriplets(trips.begin(), trips.end());
    sys.A.makeCompressed();
    return sys;
}

} // namespace nifem
