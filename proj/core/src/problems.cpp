#include "nifem/problems.hpp"

#include <stdexcept>

namespace nifem {

double ManufacturedProblem::beta_on(SideTag side) const {
    if (side == SideTag::Omega2) return beta1;
    if (side == SideTag::Omega1) return beta2;
    throw std::logic_error("beta_on: no coefficient on the interface itself");
}

LevelSet circle_levelset() {
    LevelSet ls;
    ls.eval = [](Vec2 p) { return p.x * p.x + p.y * p.y - 0.25; };
    ls.grad = [](Vec2 p) { return Vec2{2.0 * p.x, 2.0 * p.y}; };
    return ls;
}

ManufacturedProblem example1(double beta1, double beta2) {
    if (beta1 <= 0.0 || beta2 <= 0.0)
        throw InvalidCoefficient("example1: coefficients must be positive");

    ManufacturedProblem mp;
    mp.levelset = circle_levelset();
    mp.beta1 = beta1;
    mp.beta2 = beta2;

    auto phi = mp.levelset.eval;
    auto beta_at = [beta1, beta2, phi](Vec2 p) { return phi(p) > 0.0 ? beta2 : beta1; };

    mp.u = [phi, beta_at](Vec2 p) {
        return phi(p) * (p.x * p.x - 1.0) * (p.y * p.y - 1.0) / beta_at(p);
    };
    mp.grad_u = [beta_at](Vec2 p) {
        const double x = p.x, y = p.y;
        const double gx = 0.5 * x * (y * y - 1.0) * (8.0 * x * x + 4.0 * y * y - 5.0);
        const double gy = 0.5 * y * (x * x - 1.0) * (4.0 * x * x + 8.0 * y * y - 5.0);
        const double b = beta_at(p);
        return Vec2{gx / b, gy / b};
    };
    mp.f = [](Vec2 p) {
        const double x2 = p.x * p.x, y2 = p.y * p.y;
        return -2.0 * x2 * x2 - 24.0 * x2 * y2 + 16.5 * x2 - 2.0 * y2 * y2 + 16.5 * y2 - 5.0;
    };
    return mp;
}

} // namespace nifem
