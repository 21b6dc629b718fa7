#include <cmath>

#include "doctest.h"
#include "nifem/geometry.hpp"
#include "nifem/problems.hpp"
#include "test_util.hpp"

using namespace nifem;

TEST_SUITE("geometry") {

TEST_CASE("circle level set values") {
    const LevelSet ls = circle_levelset();
    CHECK(eval_levelset(ls, {0.5, 0.0}) == 0.0);
    CHECK(eval_levelset(ls, {0.0, 0.0}) == doctest::Approx(-0.25));
    CHECK(eval_levelset(ls, {1.0, 1.0}) == doctest::Approx(1.75));
}

TEST_CASE("side classification with snapping") {
    const LevelSet ls = circle_levelset();
    CHECK(side_of(ls, {0.0, 0.0}, 1e-12) == SideTag::Omega2);
    CHECK(side_of(ls, {0.5, 0.0}, 1e-12) == SideTag::OnInterface);
    CHECK(side_of(ls, {0.9, 0.9}, 1e-12) == SideTag::Omega1);

    const LevelSet tiny = testutil::constant_levelset(5e-13);
    CHECK(side_of(tiny, {0.0, 0.0}, 1e-12) == SideTag::OnInterface);
    CHECK(side_of(tiny, {0.0, 0.0}, 1e-13) == SideTag::Omega1);
}

TEST_CASE("segment crossing against closed-form roots") {
    const LevelSet ls = circle_levelset();

    // Horizontal chord at y = 0.25: root x = sqrt(3)/4.
    const auto c1 = segment_crossing(ls, {0.0, 0.25}, {0.5, 0.25}, 1e-14);
    REQUIRE(c1.has_value());
    CHECK(c1->lambda == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-10));
    CHECK(c1->lambda == doctest::Approx(0.86603).epsilon(1e-5));
    CHECK(c1->point.x == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-10));
    CHECK(c1->point.x == doctest::Approx(0.43301).epsilon(1e-5));
    CHECK(c1->point.y == doctest::Approx(0.25));

    // Diagonal: root at x = y = 1/(2 sqrt(2)).
    const auto c2 = segment_crossing(ls, {0.25, 0.25}, {0.5, 0.5}, 1e-14);
    REQUIRE(c2.has_value());
    CHECK(c2->point.x == doctest::Approx(0.35355).epsilon(1e-5));
    CHECK(c2->point.y == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-10));

    // No sign change: no crossing.
    CHECK_FALSE(segment_crossing(ls, {0.6, 0.6}, {0.9, 0.9}, 1e-12).has_value());
}

TEST_CASE("reported crossings satisfy the tolerance contract") {
    const LevelSet ls = circle_levelset();
    const double tol = 1e-12;
    for (int k = 0; k < 200; ++k) {
        const double ang_a = testutil::uniform(0.0, 6.283185307);
        const double ang_b = testutil::uniform(0.0, 6.283185307);
        const double ra = testutil::uniform(0.05, 0.45);
        const double rb = testutil::uniform(0.55, 0.95);
        const Vec2 a{ra * std::cos(ang_a), ra * std::sin(ang_a)};
        const Vec2 b{rb * std::cos(ang_b), rb * std::sin(ang_b)};
        const auto c = segment_crossing(ls, a, b, tol);
        REQUIRE(c.has_value());
        CHECK(c->lambda > 0.0);
        CHECK(c->lambda < 1.0);
        const double bound =
            tol * (std::abs(eval_levelset(ls, a)) + std::abs(eval_levelset(ls, b)));
        CHECK(std::abs(eval_levelset(ls, c->point)) <= bound);
        const Vec2 recon = (1.0 - c->lambda) * a + c->lambda * b;
        CHECK(norm(recon - c->point) <= 1e-15);
    }
}

TEST_CASE("side classification is antisymmetric under negation") {
    const LevelSet ls = circle_levelset();
    const LevelSet neg{[&ls](Vec2 p) { return -ls.eval(p); },
                       [&ls](Vec2 p) { return -1.0 * ls.grad(p); }};
    for (int k = 0; k < 100; ++k) {
        const Vec2 p{testutil::uniform(-1.0, 1.0), testutil::uniform(-1.0, 1.0)};
        const SideTag a = side_of(ls, p, 1e-12);
        const SideTag b = side_of(neg, p, 1e-12);
        if (a == SideTag::OnInterface) {
            CHECK(b == SideTag::OnInterface);
        } else {
            CHECK(((a == SideTag::Omega1 && b == SideTag::Omega2) ||
                   (a == SideTag::Omega2 && b == SideTag::Omega1)));
        }
    }
}

TEST_CASE("analytic gradient matches finite differences") {
    const LevelSet ls = circle_levelset();
    const double fd = 1e-6;
    for (int k = 0; k < 100; ++k) {
        const Vec2 p{testutil::uniform(-0.99, 0.99), testutil::uniform(-0.99, 0.99)};
        const Vec2 g = ls.grad(p);
        const double gx =
            (ls.eval({p.x + fd, p.y}) - ls.eval({p.x - fd, p.y})) / (2.0 * fd);
        const double gy =
            (ls.eval({p.x, p.y + fd}) - ls.eval({p.x, p.y - fd})) / (2.0 * fd);
        const double scale = std::max(1.0, norm(g));
        CHECK(std::abs(g.x - gx) <= 1e-6 * scale);
        CHECK(std::abs(g.y - gy) <= 1e-6 * scale);
    }
}

TEST_CASE("asserted crossing on a same-sign segment throws") {
    const LevelSet ls = circle_levelset();
    CHECK_THROWS_AS(require_crossing(ls, {0.6, 0.6}, {0.9, 0.9}, 1e-12), NonBracketedRoot);
    CHECK_THROWS_AS(require_crossing(ls, {0.0, 0.0}, {0.1, 0.1}, 1e-12), NonBracketedRoot);
}

TEST_CASE("crossing of a straight interface is exact") {
    const LevelSet ls = testutil::line_levelset(1.0, 0.0, -0.3);
    const auto c = segment_crossing(ls, {0.0, 0.0}, {1.0, 0.0}, 1e-14);
    REQUIRE(c.has_value());
    CHECK(c->lambda == doctest::Approx(0.3).epsilon(1e-12));
}

} // TEST_SUITE
