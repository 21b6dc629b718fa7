#include "nifem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace nifem {

namespace {

// Edge-parameter snap: a crossing this close to an endpoint is moved onto it,
// so cut ratios stay strictly inside (0, 1).
constexpr double kLambdaSnap = 1e-8;
constexpr double kRootTol = 1e-15;

struct CrossResult {
    enum Kind { None, AtVertex, Interior } kind = None;
    int vertex = -1;
};

} // namespace

BackgroundMesh build_background(int n) {
    if (n < 2) throw InvalidResolution("build_background: n must be >= 2, got " + std::to_string(n));
    BackgroundMesh bg;
    bg.n = n;
    bg.h = 2.0 / n;
    bg.vertices.reserve(size_t(n + 1) * size_t(n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            bg.vertices.push_back({-1.0 + i * bg.h, -1.0 + j * bg.h});
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    bg.triangles.reserve(size_t(2) * size_t(n) * size_t(n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j);
            const int v11 = vid(i + 1, j + 1), v01 = vid(i, j + 1);
            bg.triangles.push_back({v00, v10, v11});
            bg.triangles.push_back({v00, v11, v01});
        }
    }
    return bg;
}

FittedMesh generate_fitted(const BackgroundMesh& bg, const LevelSet& ls, double snap_tol) {
    FittedMesh fm;
    fm.h = bg.h;
    fm.snap_tol = snap_tol;
    fm.vertices = bg.vertices;
    fm.n_background_vertices = int(bg.vertices.size());
    fm.on_interface.assign(fm.vertices.size(), 0);

    std::vector<int> sgn(bg.vertices.size());
    for (size_t i = 0; i < bg.vertices.size(); ++i) {
        const double v = ls.eval(bg.vertices[i]);
        sgn[i] = std::abs(v) <= snap_tol ? 0 : (v > 0.0 ? 1 : -1);
        if (sgn[i] == 0) fm.on_interface[i] = 1;
    }

    // One crossing per background edge, shared by both incident triangles.
    std::map<std::pair<int, int>, CrossResult> xing;
    auto edge_crossing = [&](int a, int b) -> CrossResult {
        const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
        auto it = xing.find(key);
        if (it != xing.end()) return it->second;
        CrossResult res;
        if (sgn[size_t(key.first)] * sgn[size_t(key.second)] < 0) {
            const Vec2 p0 = fm.vertices[size_t(key.first)];
            const Vec2 p1 = fm.vertices[size_t(key.second)];
            const Crossing c = require_crossing(ls, p0, p1, kRootTol);
            const double f0 = ls.eval(p0);
            // A strict sign flip between an endpoint and the root means the
            // edge is crossed more than once: the mesh is too coarse.
            auto wrong_sign = [&](double lam, double ref) {
                const Vec2 p = (1.0 - lam) * p0 + lam * p1;
                const double v = ls.eval(p);
                return std::abs(v) > snap_tol && (v > 0.0) != (ref > 0.0);
            };
            if (wrong_sign(0.5 * c.lambda, f0) || wrong_sign(0.5 * (1.0 + c.lambda), -f0))
                throw AmbiguousCut("generate_fitted: multiple interface crossings on one edge");
            if (c.lambda < kLambdaSnap) {
                res = {CrossResult::AtVertex, key.first};
            } else if (c.lambda > 1.0 - kLambdaSnap) {
                res = {CrossResult::AtVertex, key.second};
            } else {
                fm.vertices.push_back(c.point);
                fm.on_interface.push_back(1);
                res = {CrossResult::Interior, int(fm.vertices.size()) - 1};
            }
            if (res.kind == CrossResult::AtVertex) fm.on_interface[size_t(res.vertex)] = 1;
        }
        xing.emplace(key, res);
        return res;
    };

    auto side_at = [&](Vec2 p) { return ls.eval(p) > 0.0 ? SideTag::Omega1 : SideTag::Omega2; };
    auto tri_centroid_side = [&](int a, int b, int c) {
        const Vec2 cen = (1.0 / 3.0) * (fm.vertex(a) + fm.vertex(b) + fm.vertex(c));
        return side_at(cen);
    };

    for (int ti = 0; ti < int(bg.triangles.size()); ++ti) {
        const auto& tv = bg.triangles[size_t(ti)];
        const int sa = sgn[size_t(tv[0])], sb = sgn[size_t(tv[1])], sc = sgn[size_t(tv[2])];
        const int pos = (sa > 0) + (sb > 0) + (sc > 0);
        const int neg = (sa < 0) + (sb < 0) + (sc < 0);
        const int zer = 3 - pos - neg;

        if (zer == 3)
            throw DegenerateCut("generate_fitted: all three vertices of triangle " +
                                std::to_string(ti) + " lie on the interface");

        auto push_plain = [&](int a, int b, int c) {
            PlainTri pt;
            pt.v = {a, b, c};
            pt.side = tri_centroid_side(a, b, c);
            pt.parent = ti;
            fm.cells.emplace_back(pt);
        };

        if (pos == 0 || neg == 0) { // not cut (possibly touching at vertices)
            push_plain(tv[0], tv[1], tv[2]);
            continue;
        }

        if (zer == 1) {
            // interface through one vertex and across the opposite edge
            int vz = -1, o0 = -1, o1 = -1;
            for (int k = 0; k < 3; ++k) {
                if (sgn[size_t(tv[size_t(k)])] == 0) {
                    vz = tv[size_t(k)];
                    o0 = tv[size_t((k + 1) % 3)];
                    o1 = tv[size_t((k + 2) % 3)];
                }
            }
            const CrossResult r = edge_crossing(o0, o1);
            if (r.kind != CrossResult::Interior) {
                // crossing collapsed into a vertex: the chord runs along an
                // existing edge, nothing to split
                push_plain(tv[0], tv[1], tv[2]);
                continue;
            }
            push_plain(vz, o0, r.vertex);
            push_plain(vz, r.vertex, o1);
            continue;
        }

        // Both signs present, no vertex on the interface: one vertex L is cut
        // off from the other two, and the edges M0-L and M1-L are crossed.
        const int lone_sign = pos == 1 ? 1 : -1;
        int L = -1, M0 = -1, M1 = -1;
        for (int k = 0; k < 3; ++k) {
            if (sgn[size_t(tv[size_t(k)])] == lone_sign) L = tv[size_t(k)];
            else if (M0 < 0) M0 = tv[size_t(k)];
            else M1 = tv[size_t(k)];
        }
        const CrossResult r0 = edge_crossing(M0, L);
        const CrossResult r1 = edge_crossing(M1, L);
        const bool snap0 = r0.kind == CrossResult::AtVertex;
        const bool snap1 = r1.kind == CrossResult::AtVertex;

        if (snap0 && snap1) { // both crossings collapsed: treat as uncut
            push_plain(tv[0], tv[1], tv[2]);
            continue;
        }
        if (snap0 || snap1) {
            const int W = snap0 ? r0.vertex : r1.vertex;
            const int P = snap0 ? r1.vertex : r0.vertex;
            if (W == L) {
                // the cut region degenerates to a sliver along one edge
                push_plain(tv[0], tv[1], tv[2]);
                continue;
            }
            // chord from the majority vertex W to the interior crossing P
            const int Mo = (W == M0) ? M1 : M0; // P lies on edge Mo-L
            push_plain(W, Mo, P);
            push_plain(W, P, L);
            continue;
        }

        // genuine macro cell: relabel so the larger cut ratio is t
        auto ratio = [&](int Mv, int Pv) {
            const Vec2 d = fm.vertex(L) - fm.vertex(Mv);
            return dot(fm.vertex(Pv) - fm.vertex(Mv), d) / dot(d, d);
        };
        const double t0 = ratio(M0, r0.vertex);
        const double t1 = ratio(M1, r1.vertex);
        MacroCell mc;
        if (t0 >= t1) {
            mc.a = {M0, M1, r1.vertex, L, r0.vertex};
            mc.t = t0;
            mc.s = t1;
        } else {
            mc.a = {M1, M0, r0.vertex, L, r1.vertex};
            mc.t = t1;
            mc.s = t0;
        }
        mc.map = make_affine_map(fm.vertex(mc.a[0]), fm.vertex(mc.a[1]), fm.vertex(mc.a[3]));
        mc.tri_side = lone_sign > 0 ? SideTag::Omega1 : SideTag::Omega2;
        mc.quad_side = lone_sign > 0 ? SideTag::Omega2 : SideTag::Omega1;
        mc.parent = ti;
        fm.cells.emplace_back(mc);
    }

    // Edge table: collect every sub-edge with its (cell, piece, slot), then
    // merge duplicates in sorted key order so numbering is deterministic.
    struct Rec {
        std::pair<int, int> key;
        int cell;
        bool tri_piece;
        int slot; // plain: 0..2 (opposite vertex); macro: 0..4 outer, 5/6 internal
    };
    std::vector<Rec> recs;
    recs.reserve(fm.cells.size() * 4);
    auto mk = [](int a, int b) { return std::pair<int, int>{std::min(a, b), std::max(a, b)}; };
    for (int ci = 0; ci < int(fm.cells.size()); ++ci) {
        if (const auto* pt = std::get_if<PlainTri>(&fm.cells[size_t(ci)])) {
            for (int k = 0; k < 3; ++k)
                recs.push_back({mk(pt->v[size_t((k + 1) % 3)], pt->v[size_t((k + 2) % 3)]), ci, false, k});
        } else {
            const auto& a = std::get<MacroCell>(fm.cells[size_t(ci)]).a;
            const bool tri_piece_of[5] = {false, false, true, true, false};
            for (int k = 0; k < 5; ++k)
                recs.push_back({mk(a[size_t(k)], a[size_t((k + 1) % 5)]), ci, tri_piece_of[k], k});
            recs.push_back({mk(a[2], a[4]), ci, false, 5});
            recs.push_back({mk(a[2], a[4]), ci, true, 6});
        }
    }
    std::stable_sort(recs.begin(), recs.end(),
                     [](const Rec& l, const Rec& r) { return l.key < r.key; });

    for (size_t i = 0; i < recs.size();) {
        size_t j = i;
        while (j < recs.size() && recs[j].key == recs[i].key) ++j;
        if (j - i > 2)
            throw DegenerateCut("generate_fitted: edge shared by more than two sub-cells");
        Edge e;
        e.v0 = recs[i].key.first;
        e.v1 = recs[i].key.second;
        const int ei = int(fm.edges.size());
        for (size_t k = i; k < j; ++k) {
            e.use[size_t(e.n_use++)] = {recs[k].cell, recs[k].tri_piece};
            auto& cell = fm.cells[size_t(recs[k].cell)];
            if (auto* pt = std::get_if<PlainTri>(&cell)) {
                pt->edge[size_t(recs[k].slot)] = ei;
            } else {
                auto& mc = std::get<MacroCell>(cell);
                if (recs[k].slot < 5) mc.edge[size_t(recs[k].slot)] = ei;
                else mc.internal_edge = ei;
            }
        }
        if (e.n_use == 1) e.cls = EdgeClass::Boundary;
        else if (fm.on_interface[size_t(e.v0)] && fm.on_interface[size_t(e.v1)])
            e.cls = EdgeClass::InterfaceGammaH;
        else e.cls = EdgeClass::InteriorRegular;
        fm.edges.push_back(e);
        i = j;
    }
    return fm;
}

namespace {

double max_angle_deg_of(Vec2 a, Vec2 b, Vec2 c) {
    const Vec2 p[3] = {a, b, c};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Vec2 u = p[(i + 1) % 3] - p[i % 3];
        const Vec2 v = p[(i + 2) % 3] - p[i % 3];
        const double cosang = dot(u, v) / (norm(u) * norm(v));
        worst = std::max(worst, std::acos(std::clamp(cosang, -1.0, 1.0)));
    }
    return worst * 180.0 / 3.14159265358979323846;
}

} // namespace

QualityReport quality_report(const FittedMesh& fm) {
    QualityReport q;
    int max_parent = -1;
    for (const auto& cell : fm.cells) {
        if (const auto* pt = std::get_if<PlainTri>(&cell)) {
            ++q.n_plain;
            max_parent = std::max(max_parent, pt->parent);
            q.max_angle_deg = std::max(q.max_angle_deg,
                                       max_angle_deg_of(fm.vertex(pt->v[0]), fm.vertex(pt->v[1]),
                                                        fm.vertex(pt->v[2])));
        } else {
            const auto& mc = std::get<MacroCell>(cell);
            ++q.n_macro;
            max_parent = std::max(max_parent, mc.parent);
            q.min_s = std::min(q.min_s, mc.s);
            q.max_s = std::max(q.max_s, mc.s);
            q.min_t = std::min(q.min_t, mc.t);
            q.max_t = std::max(q.max_t, mc.t);
            const Vec2 A1 = fm.vertex(mc.a[0]), A2 = fm.vertex(mc.a[1]), A3 = fm.vertex(mc.a[2]);
            const Vec2 A4 = fm.vertex(mc.a[3]), A5 = fm.vertex(mc.a[4]);
            q.max_angle_deg = std::max(q.max_angle_deg, max_angle_deg_of(A3, A4, A5));
            // split the quadrilateral A1 A2 A3 A5 along its longer diagonal
            const bool d13 = norm(A3 - A1) >= norm(A5 - A2);
            const Vec2 t1[3] = {A1, A2, d13 ? A3 : A5};
            const Vec2 t2[3] = {d13 ? A1 : A2, A3, A5};
            q.max_angle_deg = std::max(q.max_angle_deg, max_angle_deg_of(t1[0], t1[1], t1[2]));
            q.max_angle_deg = std::max(q.max_angle_deg, max_angle_deg_of(t2[0], t2[1], t2[2]));
        }
    }
    std::vector<int> plain_per_parent(size_t(max_parent + 1), 0);
    for (const auto& cell : fm.cells)
        if (const auto* pt = std::get_if<PlainTri>(&cell)) ++plain_per_parent[size_t(pt->parent)];
    for (int cnt : plain_per_parent)
        if (cnt == 2) ++q.n_split_parents;
    return q;
}

} // namespace nifem
