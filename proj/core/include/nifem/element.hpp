#pragma once

#include <array>
#include <vector>

#include "nifem/geometry.hpp"

namespace nifem {

// Row-major 2x2 matrix [[m00, m01], [m10, m11]].
struct Mat2 {
    double m00 = 1.0, m01 = 0.0;
    double m10 = 0.0, m11 = 1.0;
};

inline Vec2 apply(const Mat2& m, Vec2 v) {
    return {m.m00 * v.x + m.m01 * v.y, m.m10 * v.x + m.m11 * v.y};
}

// x = B xhat + b
struct AffineMap {
    Mat2 B;
    Vec2 b;
    double detB = 1.0;
    Mat2 Binv;
    Mat2 BinvT;
};

// Map sending (0,0) -> p0, (1,0) -> p1, (0,1) -> p2.
AffineMap make_affine_map(Vec2 p0, Vec2 p1, Vec2 p2);

inline Vec2 apply(const AffineMap& m, Vec2 ref) { return apply(m.B, ref) + m.b; }
inline Vec2 to_reference(const AffineMap& m, Vec2 phys) { return apply(m.Binv, phys - m.b); }

// Gradient pushforward: grad_x v = B^{-T} grad_xhat vhat.
inline Vec2 physical_gradient(const AffineMap& m, Vec2 gref) { return apply(m.BinvT, gref); }

double signed_area(Vec2 p0, Vec2 p1, Vec2 p2);
double tri_area(Vec2 p0, Vec2 p1, Vec2 p2);

// Symmetric triangle quadrature in barycentric coordinates; weights sum to 1
// and are scaled by the triangle area at the use site.
struct QuadratureRule {
    struct Point {
        double l0, l1, l2;
    };
    std::vector<Point> points;
    std::vector<double> weights;
    int degree = 0;
};

// Supported degrees: 2 (edge midpoints), 4 (six-point), 6 (twelve-point).
const QuadratureRule& quadrature(int degree);

// v(x, y) = ax x + ay y + c
struct LinearFn {
    double ax = 0.0, ay = 0.0, c = 0.0;
    double operator()(Vec2 p) const { return ax * p.x + ay * p.y + c; }
    Vec2 grad() const { return {ax, ay}; }
};

enum class Subcell { Qhat, That };

// Reference macro-element for a triangle cut into a quadrilateral Qhat and a
// triangle That. Corners: A1=(0,0), A2=(1,0), A3=(1-s,s), A4=(0,1), A5=(0,t)
// with Qhat = A1 A2 A3 A5 and That = A3 A4 A5. The five basis functions are
// piecewise affine, equal 1 at one of the outer edge midpoints m1..m5 and 0
// at the others, and their two pieces agree at m6 = midpoint(A3, A5).
struct ReferenceMacro {
    double s = 0.0, t = 0.0;
    double area_Q = 0.0, area_T = 0.0;
    std::array<Vec2, 5> corner;    // A1..A5
    std::array<Vec2, 6> midpoint;  // m1..m6
    std::array<LinearFn, 5> basis_Q;
    std::array<LinearFn, 5> basis_T;

    const LinearFn& piece(int i, Subcell sc) const {
        return sc == Subcell::Qhat ? basis_Q[size_t(i)] : basis_T[size_t(i)];
    }
};

// Throws InvalidCutRatio unless 0 < s <= t < 1. The construction
// self-checks that basis i evaluates to delta_ij at midpoint j and that both
// pieces agree at m6; a failure aborts (it would mean a transcription bug).
ReferenceMacro reference_macro(double s, double t);

// Constant gradient of the requested affine piece, i in 0..4.
Vec2 grad_reference_basis(const ReferenceMacro& rm, int i, Subcell sc);

// Crouzeix-Raviart basis on a triangle: psi_i = 1 - 2 lambda_i, where
// lambda_i is the barycentric coordinate of vertex i. DOF i sits on the
// midpoint of the edge opposite vertex i.
inline double cr_value(int i, double l0, double l1, double l2) {
    const double l = i == 0 ? l0 : (i == 1 ? l1 : l2);
    return 1.0 - 2.0 * l;
}

// Gradients of psi_0..psi_2 for the triangle (p0, p1, p2).
std::array<Vec2, 3> cr_gradients(Vec2 p0, Vec2 p1, Vec2 p2);

} // namespace nifem
