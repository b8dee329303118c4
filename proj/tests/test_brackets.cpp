#include "catch_amalgamated.hpp"

#include "involution/brackets.hpp"
#include "involution/errors.hpp"
#include "involution/observables.hpp"
#include "involution/random.hpp"
#include "test_support.hpp"

using namespace involution;
using testing_support::fd_poisson;
using testing_support::rel_diff;

namespace {

Observable phi_sphere(std::size_t n) { return ConstraintPair::sphere(n).phi(); }

std::vector<Observable> sample_observables(const Parameters& p)
{
    std::vector<Observable> out;
    for (FamilyKind k : {FamilyKind::F, FamilyKind::G, FamilyKind::Htilde, FamilyKind::H})
        for (auto& o : make_family(k, p)) out.push_back(o);
    out.push_back(make_sqrtL(0, 1, p.n()));
    out.push_back(coordinate(p.n(), 1) * momentum(p.n(), 2) + 0.5 * coordinate(p.n(), 0));
    return out;
}

}  // namespace

TEST_CASE("canonical pairs", "[brackets]")
{
    const PhasePoint pt({0.3, 1.7, 0.9}, {-1.0, 0.2, 0.4});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(poisson(coordinate(3, i), momentum(3, j), pt) == (i == j ? 1.0 : 0.0));
            CHECK(poisson(coordinate(3, i), coordinate(3, j), pt) == 0.0);
            CHECK(poisson(momentum(3, i), momentum(3, j), pt) == 0.0);
        }
}

TEST_CASE("{L12, L23} = -L13", "[brackets]")
{
    const PhasePoint pt({1, 1, 1}, {1, 0, 0});
    const double v = poisson(make_sqrtL(0, 1, 3), make_sqrtL(1, 2, 3), pt);
    CHECK(v == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(v == Catch::Approx(-make_sqrtL(0, 2, 3)(pt)).epsilon(1e-14));

    // At generic interior points too.
    for (const auto& q : sample_points(5, 3, 30))
        CHECK(rel_diff(poisson(make_sqrtL(0, 1, 3), make_sqrtL(1, 2, 3), q), -make_sqrtL(0, 2, 3)(q)) <= 1e-12);
}

TEST_CASE("Poisson bracket agrees with a finite-difference oracle", "[brackets]")
{
    const Parameters p = make_parameters(std::vector<Rational>{1, 2, 4}, Rational(1));
    const auto obs = sample_observables(p);
    for (const auto& pt : sample_points(9, 3, 10))
        for (std::size_t a = 0; a < obs.size(); ++a)
            for (std::size_t b = a + 1; b < obs.size(); b += 3) {
                const BracketValue v = poisson_with_scale(obs[a], obs[b], pt);
                REQUIRE(std::abs(v.value - fd_poisson(obs[a], obs[b], pt)) <= 1e-7 * std::max(1.0, v.scale));
            }
}

TEST_CASE("antisymmetry, Leibniz and Jacobi", "[brackets]")
{
    const Parameters p = make_parameters(std::vector<Rational>{1, 3, Rational(-2, 5)}, Rational(2));
    const auto obs = sample_observables(p);
    Rng rng(17);
    for (const auto& pt : sample_points(23, 3, 25)) {
        const auto& f = obs[rng.integer(0, obs.size() - 1)];
        const auto& g = obs[rng.integer(0, obs.size() - 1)];
        const auto& h = obs[rng.integer(0, obs.size() - 1)];
        CHECK(poisson(f, g, pt) == -poisson(g, f, pt));

        const BracketValue lhs = poisson_with_scale(f * g, h, pt);
        const double rhs = f(pt) * poisson(g, h, pt) + g(pt) * poisson(f, h, pt);
        CHECK(std::abs(lhs.value - rhs) <= 1e-10 * std::max(1.0, lhs.scale));

        const BracketValue jac = jacobi_residual(f, g, h, pt);
        CHECK(std::abs(jac.value) <= 1e-8 * std::max(1.0, jac.scale));
    }
}

TEST_CASE("Dirac bracket examples on the sphere", "[brackets]")
{
    const ConstraintPair sphere = ConstraintPair::sphere(3);
    const PhasePoint on = sphere.project(PhasePoint({0.5, 1.2, -0.3}, {0.7, -0.1, 0.9}));
    REQUIRE(std::abs(sphere.phi()(on)) <= 1e-15);
    REQUIRE(std::abs(sphere.pi()(on)) <= 1e-15);

    CHECK(dirac(coordinate(3, 0), coordinate(3, 1), sphere, on) == 0.0);
    CHECK(dirac(coordinate(3, 0), momentum(3, 1), sphere, on) ==
          Catch::Approx(-on.x[0] * on.x[1]).margin(1e-15));
    CHECK(dirac(coordinate(3, 0), momentum(3, 0), sphere, on) ==
          Catch::Approx(1 - on.x[0] * on.x[0]).margin(1e-15));

    const Parameters p = make_parameters(std::vector<Rational>{1, 2, 4});
    for (const auto& g : sample_observables(p)) CHECK(std::abs(dirac(sphere.phi(), g, sphere, on)) <= 1e-13);
}

TEST_CASE("Dirac bracket reduces to Poisson when f commutes with both constraints", "[brackets]")
{
    // {J_12, phi} = {J_12, Pi} = 0 for the sphere: rotations preserve both.
    const ConstraintPair sphere = ConstraintPair::sphere(3);
    const Observable j12 = make_angularJ(0, 1, 3);
    const Parameters p = make_parameters(std::vector<Rational>{1, 2, 4});
    for (const auto& pt : sample_points(3, 3, 20)) {
        const auto q = sphere.project(pt);
        CHECK(std::abs(poisson(j12, sphere.phi(), q)) <= 1e-14);
        CHECK(rel_diff(dirac(j12, make_F(1, p), sphere, q), poisson(j12, make_F(1, p), q)) <= 1e-12);
    }
}

TEST_CASE("constraint pairs and projection", "[brackets]")
{
    SECTION("sphere example")
    {
        const auto q = ConstraintPair::sphere(2).project(PhasePoint({2, 0}, {1, 1}));
        CHECK(q.x == std::vector<double>{1, 0});
        CHECK(q.p == std::vector<double>{0, 1});
    }
    SECTION("ellipsoid alpha = (1,4), x already on the surface")
    {
        const Parameters p = make_parameters(std::vector<Rational>{1, 4});
        const ConstraintPair ell = ConstraintPair::ellipsoid(p);
        const auto q = ell.project(PhasePoint({1, 0}, {0.5, 0.25}));
        CHECK(q.x == std::vector<double>{1, 0});
        // normal (x1/a1, x2/a2) = (1, 0): the p1 component goes, p2 stays
        CHECK(q.p[0] == Catch::Approx(0.0).margin(1e-16));
        CHECK(q.p[1] == 0.25);
        CHECK(std::abs(ell.pi()(q)) <= 1e-16);
    }
    SECTION("idempotence")
    {
        const Parameters p = make_parameters(std::vector<Rational>{1, 2, 3});
        for (const auto& c : {ConstraintPair::sphere(3), ConstraintPair::ellipsoid(p)})
            for (const auto& pt : sample_points(4, 3, 20)) {
                const auto a = c.project(pt);
                const auto b = c.project(a);
                for (std::size_t i = 0; i < 3; ++i) {
                    CHECK(std::abs(a.x[i] - b.x[i]) <= 1e-14);
                    CHECK(std::abs(a.p[i] - b.p[i]) <= 1e-14);
                }
            }
    }
    SECTION("degenerate and singular inputs")
    {
        CHECK_THROWS_AS(ConstraintPair::sphere(2).project(PhasePoint({0, 0}, {1, 1})), DegeneratePoint);
        CHECK_THROWS_AS(dirac(coordinate(2, 0), momentum(2, 0), ConstraintPair::sphere(2), PhasePoint({0, 0}, {1, 1})),
                        SingularConstraint);
    }
    SECTION("J = {phi, Pi}")
    {
        const Parameters p = make_parameters(std::vector<Rational>{1, 2, 3});
        const ConstraintPair ell = ConstraintPair::ellipsoid(p);
        const PhasePoint pt({0.4, 0.9, 1.3}, {0.2, 0.1, -0.5});
        CHECK(poisson(ell.phi(), ell.pi(), pt) ==
              Catch::Approx(0.16 + 0.81 / 4 + 1.69 / 9).epsilon(1e-14));
        CHECK(poisson(phi_sphere(3), ConstraintPair::sphere(3).pi(), pt) ==
              Catch::Approx(0.16 + 0.81 + 1.69).epsilon(1e-14));
    }
}

TEST_CASE("verify_commuting_family", "[brackets]")
{
    const Parameters p = make_parameters(std::vector<Rational>{1, 2, 4});
    SECTION("F family, 50 trials")
    {
        const auto reports = verify_commuting_family(make_family(FamilyKind::F, p), BracketSpec::poisson(), 50, 42, 1e-10);
        CHECK(reports.size() == 3 * 50);
        for (const auto& r : reports) CHECK(r.passed);
        for (const auto& s : summarize(reports)) CHECK(s.worst_relative <= 1e-10);
    }
    SECTION("coordinates commute exactly")
    {
        const auto reports =
            verify_commuting_family({coordinate(3, 0), coordinate(3, 1)}, BracketSpec::poisson(), 20, 1, 1e-10);
        for (const auto& r : reports) CHECK(r.residual == 0.0);
    }
    SECTION("F1, G1 do not commute")
    {
        const auto reports =
            verify_commuting_family({make_F(0, p), make_G(0, p)}, BracketSpec::poisson(), 20, 42, 1e-10);
        double worst = 0;
        for (const auto& r : reports) worst = std::max(worst, std::abs(r.residual));
        CHECK(worst > 1e-6);
        CHECK_FALSE(summarize(reports).front().passed);
    }
    SECTION("evaluation errors are recorded per point")
    {
        // x1 - 1 < 0 on part of the sampling box.
        const Observable bad = Observable::from_program(2, "bad", [](auto x, auto) {
            using T = typename decltype(x)::value_type;
            return positive_sqrt(T(x[0] - 1.0));
        });
        const auto reports = verify_commuting_family({bad, coordinate(2, 1)}, BracketSpec::poisson(), 30, 42, 1e-10);
        std::size_t errors = 0;
        for (const auto& r : reports) errors += r.error.empty() ? 0 : 1;
        CHECK(errors > 0);
        CHECK(errors < reports.size());
        CHECK(summarize(reports).front().failures == errors);
    }
}

TEST_CASE("parallel and serial verification agree exactly", "[brackets]")
{
    const Parameters p = make_parameters(std::vector<Rational>{1, 2, 4, 8, 16}, Rational(1));
    for (const auto& bracket :
         {BracketSpec::poisson(), BracketSpec::dirac(ConstraintPair::ellipsoid(p)), BracketSpec::dirac(ConstraintPair::sphere(5))}) {
        const auto fam = make_family(FamilyKind::H, p);
        const auto a = verify_commuting_family(fam, bracket, 40, 99, 1e-10);
        const auto b = verify_commuting_family_serial(fam, bracket, 40, 99, 1e-10);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            REQUIRE(a[k].i == b[k].i);
            REQUIRE(a[k].k == b[k].k);
            REQUIRE(a[k].trial == b[k].trial);
            REQUIRE(a[k].residual == b[k].residual);
            REQUIRE(a[k].scale == b[k].scale);
            REQUIRE(a[k].point.flat() == b[k].point.flat());
        }
    }
}

TEST_CASE("phi commutes with F on the ellipsoid and with G on the sphere", "[brackets]")
{
    const Parameters p = make_parameters(std::vector<Rational>{1, 2, 4, 8});
    const ConstraintPair ell = ConstraintPair::ellipsoid(p);
    const ConstraintPair sph = ConstraintPair::sphere(4);
    for (const auto& pt : sample_points(8, 4, 50)) {
        const auto on_e = ell.project(pt);
        const auto on_s = sph.project(pt);
        for (std::size_t i = 0; i < 4; ++i) {
            const BracketValue a = poisson_with_scale(ell.phi(), make_F(i, p), on_e);
            const BracketValue b = poisson_with_scale(sph.phi(), make_G(i, p), on_s);
            CHECK(std::abs(a.value) <= 1e-10 * std::max(1.0, a.scale));
            CHECK(std::abs(b.value) <= 1e-10 * std::max(1.0, b.scale));
        }
    }
}
