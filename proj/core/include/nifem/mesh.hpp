#pragma once

#include <array>
#include <variant>
#include <vector>

#include "nifem/element.hpp"
#include "nifem/geometry.hpp"

namespace nifem {

// Uniform triangulation of (-1,1)^2: n x n squares, each split by its
// bottom-left to top-right diagonal. h = 2/n.
struct BackgroundMesh {
    int n = 0;
    double h = 0.0;
    std::vector<Vec2> vertices;                  // (n+1)^2, row-major bottom to top
    std::vector<std::array<int, 3>> triangles;   // 2 n^2, counterclockwise
};

// Throws InvalidResolution if n < 2.
BackgroundMesh build_background(int n);

enum class EdgeClass { InteriorRegular, InterfaceGammaH, Boundary };

// One side of an edge: the cell seeing it and, for macro cells, which
// affine piece (tri_piece selects the triangular sub-cell, otherwise the
// quadrilateral one; ignored for plain triangles).
struct EdgeUse {
    int cell = -1;
    bool tri_piece = false;
};

struct Edge {
    int v0 = -1, v1 = -1; // v0 < v1
    EdgeClass cls = EdgeClass::InteriorRegular;
    int n_use = 0;
    std::array<EdgeUse, 2> use;
};

struct PlainTri {
    std::array<int, 3> v;
    SideTag side = SideTag::Omega1;
    int parent = -1;              // background triangle index
    std::array<int, 3> edge{};    // edge[k] is opposite vertex k (its DOF slot)
};

// A background triangle cut by the interface chord A5-A3 into the
// quadrilateral A1 A2 A3 A5 and the triangle A3 A4 A5. A4 is the vertex cut
// off alone; A5 sits on segment A1 A4 at relative position t, A3 on A2 A4 at
// relative position s, labeled so that s <= t. The affine map sends the
// reference corners (0,0), (1,0), (0,1) to A1, A2, A4.
struct MacroCell {
    std::array<int, 5> a;         // A1..A5
    double s = 0.0, t = 0.0;
    SideTag tri_side = SideTag::Omega2;
    SideTag quad_side = SideTag::Omega1;
    AffineMap map;
    int parent = -1;
    std::array<int, 5> edge{};    // outer edges A1A2, A2A3, A3A4, A4A5, A5A1
    int internal_edge = -1;       // A3 A5 (no DOF)
};

using Cell = std::variant<PlainTri, MacroCell>;

struct FittedMesh {
    std::vector<Vec2> vertices;   // background vertices first, then crossings
    int n_background_vertices = 0;
    std::vector<char> on_interface; // per vertex: lies on the discrete interface
    std::vector<Cell> cells;
    std::vector<Edge> edges;      // sorted by (v0, v1)
    double h = 0.0;
    double snap_tol = 0.0;

    Vec2 vertex(int i) const { return vertices[size_t(i)]; }
};

// Builds the interface-fitted mesh. Each background triangle becomes a plain
// triangle (not cut), two plain triangles sharing an interface edge (the
// interface passes through a vertex), or a macro cell (the interface crosses
// two edge interiors). Edge crossings are computed once per background edge
// and shared by both incident triangles; a crossing with edge parameter
// within 1e-8 of an endpoint is snapped to that vertex.
// Throws AmbiguousCut when an edge carries more than one crossing and
// DegenerateCut when a triangle cannot be classified at all.
FittedMesh generate_fitted(const BackgroundMesh& bg, const LevelSet& ls,
                           double snap_tol = 1e-12);

struct QualityReport {
    double max_angle_deg = 0.0; // over plain triangles and quad diagonal splits
    double min_s = 1.0, max_s = 0.0;
    double min_t = 1.0, max_t = 0.0;
    int n_plain = 0;
    int n_macro = 0;
    int n_split_parents = 0;    // background triangles that became two plain tris
};

QualityReport quality_report(const FittedMesh& fm);

} // namespace nifem
