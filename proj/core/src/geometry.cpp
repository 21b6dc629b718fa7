#include "nifem/geometry.hpp"

#include <limits>

namespace nifem {

double eval_levelset(const LevelSet& ls, Vec2 p) { return ls.eval(p); }

SideTag side_of(const LevelSet& ls, Vec2 p, double snap_tol) {
    const double v = ls.eval(p);
    if (std::abs(v) <= snap_tol) return SideTag::OnInterface;
    return v > 0.0 ? SideTag::Omega1 : SideTag::Omega2;
}

std::optional<Crossing> segment_crossing(const LevelSet& ls, Vec2 a, Vec2 b, double tol) {
    const double fa = ls.eval(a);
    const double fb = ls.eval(b);
    if (fa == 0.0) return Crossing{0.0, a};
    if (fb == 0.0) return Crossing{1.0, b};
    if ((fa > 0.0) == (fb > 0.0)) return std::nullopt;

    const double target = tol * (std::abs(fa) + std::abs(fb));
    double lo = 0.0, hi = 1.0;
    double flo = fa, fhi = fb;
    for (int it = 0; it < 200; ++it) {
        double lam = 0.5 * (lo + hi);
        if (fhi != flo) {
            // secant candidate through the bracket ends, fall back to the
            // midpoint when it leaves the bracket
            const double cand = lo - flo * (hi - lo) / (fhi - flo);
            if (lo < cand && cand < hi) lam = cand;
        }
        const Vec2 p = (1.0 - lam) * a + lam * b;
        const double fm = ls.eval(p);
        if (std::abs(fm) <= target) return Crossing{lam, p};
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = lam;
            flo = fm;
        } else {
            hi = lam;
            fhi = fm;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon()) {
            // lambda is resolved to machine precision; phi cannot get closer
            lam = 0.5 * (lo + hi);
            return Crossing{lam, (1.0 - lam) * a + lam * b};
        }
    }
    throw MaxIterExceeded("segment_crossing: no convergence in 200 iterations");
}

Crossing require_crossing(const LevelSet& ls, Vec2 a, Vec2 b, double tol) {
    auto c = segment_crossing(ls, a, b, tol);
    if (!c) throw NonBracketedRoot("require_crossing: endpoint signs agree");
    return *c;
}

} // namespace nifem
