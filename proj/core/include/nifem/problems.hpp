#pragma once

#include "nifem/assembly.hpp"
#include "nifem/geometry.hpp"

namespace nifem {

using VectorField = std::function<Vec2(Vec2)>;

// A diffusion problem -div(beta grad u) = f on (-1,1)^2 with u = 0 on the
// boundary and a coefficient jump across the level-set interface, together
// with its exact solution. beta1 applies inside the interface (phi < 0,
// Omega2) and beta2 outside (phi > 0, Omega1); this is the convention the
// reference convergence tables are computed in.
struct ManufacturedProblem {
    LevelSet levelset;
    double beta1 = 1.0; // inside
    double beta2 = 1.0; // outside
    ScalarField u;
    VectorField grad_u;
    ScalarField f;

    double beta_on(SideTag side) const;
};

// Circle of radius 0.5 centered at the origin: phi = x^2 + y^2 - 0.25.
LevelSet circle_levelset();

// u = g / beta per subdomain with g = phi (x^2 - 1)(y^2 - 1). Since
// beta grad u = grad g is one smooth field, both u and the normal flux are
// continuous across the interface, and f = -div(grad g) is independent of
// the coefficients. Throws InvalidCoefficient unless both betas are > 0.
ManufacturedProblem example1(double beta1, double beta2);

} // namespace nifem
