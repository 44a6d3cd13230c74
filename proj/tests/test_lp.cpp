#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace sisio;
using namespace sisio::test;

namespace {

LinearProgram program(Vector c, Matrix a, Vector b, LpSense sense = LpSense::Maximize) {
    return LinearProgram{std::move(c), std::move(a), std::move(b), sense};
}

void check_certificate(const LinearProgram& lp, const LpOutcome& out) {
    REQUIRE(out.status == LpStatus::Optimal);
    const Vector slack = lp.rhs - lp.constraints * out.argument;
    CHECK(slack.minCoeff() >= -1e-8);
    CHECK(lp.objective.dot(out.argument) == doctest::Approx(out.optimum).epsilon(1e-8));
}

} // namespace

TEST_CASE("lp_solve small cases") {
    SUBCASE("bounded") {
        const auto lp = program(vec({1}), mat(2, 1, {1, -1}), vec({1, 0}));
        const auto out = lp_solve(lp);
        check_certificate(lp, out);
        CHECK(out.optimum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(out.argument[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("unbounded") {
        CHECK(lp_solve(program(vec({1}), mat(1, 1, {-1}), vec({0}))).status == LpStatus::Unbounded);
    }
    SUBCASE("infeasible") {
        CHECK(lp_solve(program(vec({1}), mat(2, 1, {1, -1}), vec({-1, 0}))).status == LpStatus::Infeasible);
    }
    SUBCASE("minimize over a triangle with negative coordinates") {
        // x >= -2, y >= -1, x + y <= 1
        const auto lp = program(vec({1, 2}), mat(3, 2, {-1, 0, 0, -1, 1, 1}), vec({2, 1, 1}), LpSense::Minimize);
        const auto out = lp_solve(lp);
        check_certificate(lp, out);
        CHECK(out.optimum == doctest::Approx(-4.0).epsilon(1e-12));
    }
    SUBCASE("degenerate program that cycles without an anti-cycling rule") {
        const auto lp = program(vec({0.75, -20, 0.5, -6}),
                                mat(7, 4,
                                    {0.25, -8, -1, 9,  //
                                     0.5, -12, -0.5, 3, //
                                     0, 0, 1, 0,        //
                                     -1, 0, 0, 0,       //
                                     0, -1, 0, 0,       //
                                     0, 0, -1, 0,       //
                                     0, 0, 0, -1}),
                                vec({0, 0, 1, 0, 0, 0, 0}));
        const auto out = lp_solve(lp);
        check_certificate(lp, out);
        CHECK(out.optimum == doctest::Approx(1.25).epsilon(1e-10));
    }
    SUBCASE("equality through a pair of inequalities") {
        const auto lp = program(vec({0, 1}), mat(4, 2, {1, 1, -1, -1, -1, 1, 0, 1}), vec({2, -2, 0, 5}));
        const auto out = lp_solve(lp);
        check_certificate(lp, out);
        CHECK(out.optimum == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("dimension checks") {
        CHECK(error_kind([] { (void)lp_solve(program(vec({1, 1}), mat(1, 1, {1}), vec({1}))); }) ==
              ErrorKind::DimensionMismatch);
    }
}

TEST_CASE("lp_solve agrees with vertex enumeration in the plane") {
    Random rng(41);
    for (int t = 0; t < 300; ++t) {
        const Matrix h = rng.matrix(rng.integer(2, 4), 2, 2.0);
        if (numerical_rank(h) < 2) continue;
        const auto r = feasible_residual(rng, h);
        const auto oracle = hull_by_vertices(h, r);
        REQUIRE(oracle.has_value());
        const Index i = rng.integer(0, 1);
        LinearProgram lp;
        lp.objective = Vector::Unit(2, i);
        lp.constraints.resize(2 * h.rows(), 2);
        lp.constraints << h, -h;
        lp.rhs.resize(2 * h.rows());
        lp.rhs << r.hi(), -r.lo();
        const auto up = lp_solve(lp);
        check_certificate(lp, up);
        CHECK(up.optimum == doctest::Approx(oracle->hi()[i]).epsilon(1e-9).scale(1.0));
        lp.sense = LpSense::Minimize;
        const auto down = lp_solve(lp);
        check_certificate(lp, down);
        CHECK(down.optimum == doctest::Approx(oracle->lo()[i]).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("residual_box_hull") {
    SUBCASE("identity") {
        const auto hull = residual_box_hull(Matrix::Identity(2, 2), box({0, 0}, {1, 2}));
        REQUIRE(hull);
        CHECK((hull->box.lo() - vec({0, 0})).norm() <= 1e-12);
        CHECK((hull->box.hi() - vec({1, 2})).norm() <= 1e-12);
        CHECK_FALSE(hull->relaxed);
    }
    SUBCASE("scalar scaling") {
        const auto hull = residual_box_hull(mat(1, 1, {2}), box({2}, {4}));
        REQUIRE(hull);
        CHECK(hull->box.lo()[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(hull->box.hi()[0] == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("example feedthrough against rejection sampling") {
        const Matrix h = mat(2, 2, {-0.1, 0.3, 0.5, -0.7});
        Random rng(42);
        for (int t = 0; t < 20; ++t) {
            const auto r = feasible_residual(rng, h, 1.0);
            const auto hull = residual_box_hull(h, r);
            REQUIRE(hull);
            for (Index i = 0; i < 2; ++i) {
                CHECK(r.contains(h * hull->argmin[static_cast<std::size_t>(i)], 1e-8));
                CHECK(r.contains(h * hull->argmax[static_cast<std::size_t>(i)], 1e-8));
                CHECK(hull->argmin[static_cast<std::size_t>(i)][i] == doctest::Approx(hull->box.lo()[i]).epsilon(1e-8));
                CHECK(hull->argmax[static_cast<std::size_t>(i)][i] == doctest::Approx(hull->box.hi()[i]).epsilon(1e-8));
            }
            // Sample candidates from the pseudo-inverse box and keep the feasible ones.
            const auto outer = affine_image_bounds(pseudo_inverse(h), r);
            int accepted = 0;
            while (accepted < 200) {
                const Vector d = rng.point_in(outer);
                if (!r.contains(h * d)) continue;
                ++accepted;
                REQUIRE(hull->box.contains(d, 1e-9));
            }
        }
    }
    SUBCASE("tall full-rank matrix against vertex enumeration") {
        Random rng(43);
        for (int t = 0; t < 200; ++t) {
            const Matrix h = rng.matrix(3, 2, 1.0);
            const auto r = feasible_residual(rng, h);
            const auto hull = residual_box_hull(h, r);
            const auto oracle = hull_by_vertices(h, r);
            REQUIRE(hull);
            REQUIRE(oracle);
            CHECK((hull->box.lo() - oracle->lo()).cwiseAbs().maxCoeff() <= 1e-8);
            CHECK((hull->box.hi() - oracle->hi()).cwiseAbs().maxCoeff() <= 1e-8);
            const auto pinv = affine_image_bounds(pseudo_inverse(h), r);
            CHECK(pinv.contains(hull->box, 1e-8));
        }
    }
    SUBCASE("empty polytope") {
        // d <= 0 and d >= 1 through two rows.
        CHECK_FALSE(residual_box_hull(mat(2, 1, {1, 1}), box({-1, 1}, {0, 2})).has_value());
    }
    SUBCASE("razor-thin polytope is recovered by relaxation") {
        const auto hull = residual_box_hull(mat(2, 1, {1, 1}), box({0, 1 + 5e-8}, {1, 2}));
        REQUIRE(hull);
        CHECK(hull->relaxed);
        CHECK(hull->box.lo()[0] == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("rank deficiency") {
        CHECK(error_kind([] { (void)residual_box_hull(mat(2, 2, {1, 2, 2, 4}), box({0, 0}, {1, 1})); }) ==
              ErrorKind::RankDeficient);
    }
}
