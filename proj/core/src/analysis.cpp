#include "nifem/analysis.hpp"

#include <cmath>

namespace nifem {

Eigen::VectorXd interpolate_pi_h(const FittedMesh& fm, const DofMap& dm, const ScalarField& v) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(dm.n_dofs);
    for (size_t ei = 0; ei < fm.edges.size(); ++ei) {
        const int d = dm.edge_dof[ei];
        if (d < 0) continue;
        const Edge& e = fm.edges[ei];
        c(d) = 0.5 * (v(fm.vertex(e.v0)) + v(fm.vertex(e.v1)));
    }
    return c;
}

std::array<double, 3> local_coeffs(const PlainTri& pt, const DofMap& dm,
                                   const Eigen::VectorXd& coeffs) {
    std::array<double, 3> c{};
    for (int i = 0; i < 3; ++i) {
        const int d = dm.dof(pt.edge[size_t(i)]);
        c[size_t(i)] = d >= 0 ? coeffs(d) : 0.0;
    }
    return c;
}

std::array<double, 5> local_coeffs(const MacroCell& mc, const DofMap& dm,
                                   const Eigen::VectorXd& coeffs) {
    std::array<double, 5> c{};
    for (int i = 0; i < 5; ++i) {
        const int d = dm.dof(mc.edge[size_t(i)]);
        c[size_t(i)] = d >= 0 ? coeffs(d) : 0.0;
    }
    return c;
}

namespace {

std::array<double, 3> barycentric(Vec2 p0, Vec2 p1, Vec2 p2, Vec2 p) {
    const double a = signed_area(p0, p1, p2);
    return {signed_area(p, p1, p2) / a, signed_area(p0, p, p2) / a, signed_area(p0, p1, p) / a};
}

} // namespace

std::pair<double, double> error_norms(const FittedMesh& fm, const Eigen::VectorXd& coeffs,
                                      const DofMap& dm, const ScalarField& u_exact,
                                      const VectorField& grad_u_exact, int degree) {
    const QuadratureRule& qr = quadrature(degree);
    double e0 = 0.0, e1 = 0.0;
    for (const auto& cell : fm.cells) {
        if (const auto* pt = std::get_if<PlainTri>(&cell)) {
            const Vec2 p[3] = {fm.vertex(pt->v[0]), fm.vertex(pt->v[1]), fm.vertex(pt->v[2])};
            const double area = tri_area(p[0], p[1], p[2]);
            const auto c = local_coeffs(*pt, dm, coeffs);
            const auto g = cr_gradients(p[0], p[1], p[2]);
            const Vec2 guh = c[0] * g[0] + c[1] * g[1] + c[2] * g[2];
            for (size_t q = 0; q < qr.points.size(); ++q) {
                const auto& l = qr.points[q];
                const Vec2 x = l.l0 * p[0] + l.l1 * p[1] + l.l2 * p[2];
                double uh = 0.0;
                for (int i = 0; i < 3; ++i) uh += c[size_t(i)] * cr_value(i, l.l0, l.l1, l.l2);
                const double w = qr.weights[q] * area;
                const double du = uh - u_exact(x);
                const Vec2 dg = guh - grad_u_exact(x);
                e0 += w * du * du;
                e1 += w * dot(dg, dg);
            }
        } else {
            const auto& mc = std::get<MacroCell>(cell);
            const ReferenceMacro rm = reference_macro(mc.s, mc.t);
            const double jac = std::abs(mc.map.detB);
            const auto c = local_coeffs(mc, dm, coeffs);
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
                Vec2 gref{0.0, 0.0};
                for (int i = 0; i < 5; ++i)
                    gref = gref + c[size_t(i)] * grad_reference_basis(rm, i, sub.sc);
                const Vec2 guh = physical_gradient(mc.map, gref);
                for (size_t q = 0; q < qr.points.size(); ++q) {
                    const auto& l = qr.points[q];
                    const Vec2 xr = l.l0 * sub.c0 + l.l1 * sub.c1 + l.l2 * sub.c2;
                    const Vec2 x = apply(mc.map, xr);
                    double uh = 0.0;
                    for (int i = 0; i < 5; ++i) uh += c[size_t(i)] * rm.piece(i, sub.sc)(xr);
                    const double w = qr.weights[q] * area;
                    const double du = uh - u_exact(x);
                    const Vec2 dg = guh - grad_u_exact(x);
                    e0 += w * du * du;
                    e1 += w * dot(dg, dg);
                }
            }
        }
    }
    return {std::sqrt(e0), std::sqrt(e1)};
}

double trace_value(const FittedMesh& fm, const Eigen::VectorXd& coeffs, const DofMap& dm,
                   const EdgeUse& use, Vec2 p) {
    const Cell& cell = fm.cells[size_t(use.cell)];
    if (const auto* pt = std::get_if<PlainTri>(&cell)) {
        const auto c = local_coeffs(*pt, dm, coeffs);
        const auto l = barycentric(fm.vertex(pt->v[0]), fm.vertex(pt->v[1]), fm.vertex(pt->v[2]), p);
        double v = 0.0;
        for (int i = 0; i < 3; ++i) v += c[size_t(i)] * (1.0 - 2.0 * l[size_t(i)]);
        return v;
    }
    const auto& mc = std::get<MacroCell>(cell);
    const ReferenceMacro rm = reference_macro(mc.s, mc.t);
    const auto c = local_coeffs(mc, dm, coeffs);
    const Vec2 xr = to_reference(mc.map, p);
    const Subcell sc = use.tri_piece ? Subcell::That : Subcell::Qhat;
    double v = 0.0;
    for (int i = 0; i < 5; ++i) v += c[size_t(i)] * rm.piece(i, sc)(xr);
    return v;
}

double weak_continuity_residual(const FittedMesh& fm, const EdgeTraceFn& trace) {
    double worst = 0.0;
    for (int ei = 0; ei < int(fm.edges.size()); ++ei) {
        const Edge& e = fm.edges[size_t(ei)];
        if (e.n_use != 2) continue;
        const Vec2 mid = 0.5 * (fm.vertex(e.v0) + fm.vertex(e.v1));
        const double jump = trace(ei, e.use[0], mid) - trace(ei, e.use[1], mid);
        worst = std::max(worst, std::abs(jump));
    }
    return worst;
}

double weak_continuity_residual(const FittedMesh& fm, const Eigen::VectorXd& coeffs,
                                const DofMap& dm) {
    return weak_continuity_residual(fm, [&](int, const EdgeUse& use, Vec2 p) {
        return trace_value(fm, coeffs, dm, use, p);
    });
}

std::vector<double> eoc(const std::vector<std::pair<double, double>>& h_and_err) {
    std::vector<double> orders;
    for (size_t k = 1; k < h_and_err.size(); ++k) {
        const auto& [h0, e0] = h_and_err[k - 1];
        const auto& [h1, e1] = h_and_err[k];
        orders.push_back(std::log(e0 / e1) / std::log(h0 / h1));
    }
    return orders;
}

} // namespace nifem
