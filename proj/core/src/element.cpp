#include "nifem/element.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nifem {

AffineMap make_affine_map(Vec2 p0, Vec2 p1, Vec2 p2) {
    AffineMap m;
    m.B = {p1.x - p0.x, p2.x - p0.x, p1.y - p0.y, p2.y - p0.y};
    m.b = p0;
    m.detB = m.B.m00 * m.B.m11 - m.B.m01 * m.B.m10;
    const double inv = 1.0 / m.detB;
    m.Binv = {m.B.m11 * inv, -m.B.m01 * inv, -m.B.m10 * inv, m.B.m00 * inv};
    m.BinvT = {m.Binv.m00, m.Binv.m10, m.Binv.m01, m.Binv.m11};
    return m;
}

double signed_area(Vec2 p0, Vec2 p1, Vec2 p2) {
    return 0.5 * ((p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y));
}

double tri_area(Vec2 p0, Vec2 p1, Vec2 p2) { return std::abs(signed_area(p0, p1, p2)); }

namespace {

QuadratureRule make_degree2() {
    QuadratureRule r;
    r.degree = 2;
    r.points = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};
    r.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return r;
}

void push_perm3(QuadratureRule& r, double a, double w) {
    const double b = 1.0 - 2.0 * a;
    r.points.push_back({a, a, b});
    r.points.push_back({a, b, a});
    r.points.push_back({b, a, a});
    r.weights.insert(r.weights.end(), 3, w);
}

void push_perm6(QuadratureRule& r, double a, double b, double w) {
    const double c = 1.0 - a - b;
    r.points.push_back({a, b, c});
    r.points.push_back({a, c, b});
    r.points.push_back({b, a, c});
    r.points.push_back({b, c, a});
    r.points.push_back({c, a, b});
    r.points.push_back({c, b, a});
    r.weights.insert(r.weights.end(), 6, w);
}

QuadratureRule make_degree4() {
    QuadratureRule r;
    r.degree = 4;
    push_perm3(r, 0.445948490915965, 0.223381589678011);
    push_perm3(r, 0.091576213509771, 0.109951743655322);
    return r;
}

QuadratureRule make_degree6() {
    QuadratureRule r;
    r.degree = 6;
    push_perm3(r, 0.063089014491502, 0.050844906370207);
    push_perm3(r, 0.249286745170910, 0.116786275726379);
    push_perm6(r, 0.053145049844816, 0.310352451033785, 0.082851075618374);
    return r;
}

} // namespace

const QuadratureRule& quadrature(int degree) {
    static const QuadratureRule d2 = make_degree2();
    static const QuadratureRule d4 = make_degree4();
    static const QuadratureRule d6 = make_degree6();
    switch (degree) {
        case 2: return d2;
        case 4: return d4;
        case 6: return d6;
        default:
            throw UnsupportedDegree("quadrature: degree " + std::to_string(degree) +
                                    " not supported (use 2, 4 or 6)");
    }
}

ReferenceMacro reference_macro(double s, double t) {
    if (!(0.0 < s && s <= t && t < 1.0))
        throw InvalidCutRatio("reference_macro: need 0 < s <= t < 1, got s=" +
                              std::to_string(s) + " t=" + std::to_string(t));

    ReferenceMacro rm;
    rm.s = s;
    rm.t = t;
    rm.area_Q = 0.5 * (t + s - s * t);
    rm.area_T = 0.5 * (1.0 - t) * (1.0 - s);
    rm.corner = {Vec2{0, 0}, Vec2{1, 0}, Vec2{1 - s, s}, Vec2{0, 1}, Vec2{0, t}};
    for (int i = 0; i < 5; ++i)
        rm.midpoint[size_t(i)] = 0.5 * (rm.corner[size_t(i)] + rm.corner[size_t((i + 1) % 5)]);
    rm.midpoint[5] = 0.5 * (rm.corner[2] + rm.corner[4]);

    // Affine numerators over |Qhat| respectively |That|. The pieces of
    // basis 3 and 4 on Qhat vanish identically; basis 5 and 2 share their
    // That piece (both interpolate the same trace on edge A3 A5).
    const double k = 0.5 * (1.0 + t) * (1.0 - s);
    const LinearFn numQ[5] = {
        {s - t, s - 2.0, t - 0.5 * s * t},
        {t, 1.0, -0.5 * t},
        {0.0, 0.0, 0.0},
        {0.0, 0.0, 0.0},
        {-s, 1.0 - s, 0.5 * s},
    };
    const LinearFn numT[5] = {
        {t - s, 1.0 - s, -k},
        {s - t, s - 1.0, k},
        {1.0 - s, 1.0 - s, -k},
        {t - 1.0, 0.0, 0.5 * (1.0 - s) * (1.0 - t)},
        {s - t, s - 1.0, k},
    };
    for (size_t i = 0; i < 5; ++i) {
        rm.basis_Q[i] = {numQ[i].ax / rm.area_Q, numQ[i].ay / rm.area_Q, numQ[i].c / rm.area_Q};
        rm.basis_T[i] = {numT[i].ax / rm.area_T, numT[i].ay / rm.area_T, numT[i].c / rm.area_T};
    }

    // Unisolvence self-check: midpoints m1, m2, m5 see the Qhat piece,
    // m3, m4 the That piece, and both pieces must agree at m6. The
    // coefficients grow like 1/area as a cut ratio approaches 0 or 1 and
    // carry rounding noise proportional to their size, so the tolerance must
    // scale with them; a genuine transcription bug produces errors of the
    // order of the coefficients themselves, far above this threshold.
    for (int i = 0; i < 5; ++i) {
        const LinearFn& bq = rm.basis_Q[size_t(i)];
        const LinearFn& bt = rm.basis_T[size_t(i)];
        const double scale =
            std::max({1.0, std::abs(bq.ax), std::abs(bq.ay), std::abs(bq.c), std::abs(bt.ax),
                      std::abs(bt.ay), std::abs(bt.c)});
        const double tol = std::max(1e-12, 1e-13 * scale);
        for (int j = 0; j < 5; ++j) {
            const bool on_Q = (j == 0 || j == 1 || j == 4);
            const double v = rm.piece(i, on_Q ? Subcell::Qhat : Subcell::That)(rm.midpoint[size_t(j)]);
            if (std::abs(v - (i == j ? 1.0 : 0.0)) > tol)
                throw std::logic_error("reference_macro: midpoint interpolation check failed");
        }
        if (std::abs(bq(rm.midpoint[5]) - bt(rm.midpoint[5])) > tol)
            throw std::logic_error("reference_macro: internal midpoint continuity check failed");
    }
    return rm;
}

Vec2 grad_reference_basis(const ReferenceMacro& rm, int i, Subcell sc) {
    return rm.piece(i, sc).grad();
}

std::array<Vec2, 3> cr_gradients(Vec2 p0, Vec2 p1, Vec2 p2) {
    const double twoA = 2.0 * signed_area(p0, p1, p2);
    const Vec2 p[3] = {p0, p1, p2};
    std::array<Vec2, 3> g;
    for (int i = 0; i < 3; ++i) {
        const Vec2& a = p[(i + 1) % 3];
        const Vec2& b = p[(i + 2) % 3];
        // grad lambda_i = perp(b - a) / (2 area); psi_i = 1 - 2 lambda_i
        g[size_t(i)] = (-2.0 / twoA) * Vec2{a.y - b.y, b.x - a.x};
    }
    return g;
}

} // namespace nifem
