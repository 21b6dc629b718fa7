#pragma once

#include <cmath>
#include <functional>
#include <optional>

#include "nifem/errors.hpp"

namespace nifem {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

// Signed implicit interface description: phi < 0 inside the interface,
// phi > 0 outside, phi = 0 on it. grad is the analytic gradient of eval.
struct LevelSet {
    std::function<double(Vec2)> eval;
    std::function<Vec2(Vec2)> grad;
};

// Omega1 is the phi > 0 subdomain, Omega2 the phi < 0 one (inside).
enum class SideTag { Omega1, Omega2, OnInterface };

double eval_levelset(const LevelSet& ls, Vec2 p);

// OnInterface iff |phi(p)| <= snap_tol, otherwise the sign decides.
SideTag side_of(const LevelSet& ls, Vec2 p, double snap_tol);

struct Crossing {
    double lambda = 0.0; // position on the segment, p = (1-lambda) a + lambda b
    Vec2 point;
};

// Root of phi on the segment a-b, found by bisection refined with secant
// steps (at most 200 iterations). Returns empty when phi does not change
// sign between the endpoints. The root satisfies
// |phi(point)| <= tol * (|phi(a)| + |phi(b)|) unless the bracket collapses
// to machine precision first. Throws MaxIterExceeded if neither happens.
std::optional<Crossing> segment_crossing(const LevelSet& ls, Vec2 a, Vec2 b, double tol);

// Same, but the caller asserts a crossing exists; throws NonBracketedRoot
// when the endpoint signs agree.
Crossing require_crossing(const LevelSet& ls, Vec2 a, Vec2 b, double tol);

} // namespace nifem
