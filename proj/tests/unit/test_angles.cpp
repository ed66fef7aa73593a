#include <doctest.h>

#include <numbers>

#include "atri/angles.hpp"
#include "atri/errors.hpp"
#include "support.hpp"

using namespace atri;
using namespace atri::testing;

namespace
{
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("figure-eight constraint matrix")
{
    const auto tri = load_fixture("fig8").triangulation;
    const auto cs = build_constraints(tri);
    REQUIRE(cs.A.rows() == 4);
    REQUIRE(cs.A.cols() == 6);
    Eigen::MatrixXd tets(2, 6);
    tets << 1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 1;
    CHECK(cs.A.topRows(2) == tets);
    CHECK(cs.A.row(2).sum() == 6.0);
    CHECK(cs.A.row(3).sum() == 6.0);
    CHECK(cs.b[0] == kPi);
    CHECK(cs.b[3] == 2 * kPi);
    CHECK(cs.residual(Eigen::VectorXd::Constant(6, kPi / 3)) < 1e-15);
}

TEST_CASE("edge rows count tetrahedron edges in each pair")
{
    for (const auto& name : all_fixtures()) {
        CAPTURE(name);
        const auto tri = load_fixture(name).triangulation;
        const int n = tri.tet_count();
        const auto cs = build_constraints(tri);
        Eigen::MatrixXd oracle = Eigen::MatrixXd::Zero(n, 3 * n);
        for (int t = 0; t < n; ++t)
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b) oracle(tri.edge_of(t, a, b), angle_coordinate(t, a, b)) += 1;
        CHECK(cs.A.bottomRows(n) == oracle);
        CHECK(cs.A.bottomRows(n).sum() == 6.0 * n);
        CHECK(cs.A.bottomRows(n).maxCoeff() <= 2.0);
    }
}

TEST_CASE("rank, dimension and cusp vectors")
{
    for (const auto& name : all_fixtures()) {
        CAPTURE(name);
        const auto tri = load_fixture(name).triangulation;
        const int n = tri.tet_count(), k = tri.cusp_count();
        const auto cs = build_constraints(tri);
        const auto rd = rank_and_dimension(cs, k);
        CHECK(rd.rank == 2 * n - k);
        CHECK(rd.dimension == n + k);
        const auto r = cusp_vectors(tri);
        REQUIRE(static_cast<int>(r.size()) == k);
        Eigen::MatrixXd R(k, 2 * n);
        for (int c = 0; c < k; ++c) {
            CHECK((r[c].transpose() * cs.A).cwiseAbs().maxCoeff() < 1e-12);
            R.row(c) = r[c].transpose();
        }
        CHECK(numerical_rank(R) == k);
    }
    const auto fig8 = load_fixture("fig8").triangulation;
    CHECK(rank_and_dimension(build_constraints(fig8), 1).rank == 3);
    CHECK_THROWS_AS(rank_and_dimension(build_constraints(fig8), 2), RankAnomaly);
}

TEST_CASE("figure-eight starting point is the regular structure")
{
    const auto cs = build_constraints(load_fixture("fig8").triangulation);
    const auto ip = initial_point(cs);
    CHECK(ip.feasibility == Feasibility::Interior);
    CHECK(ip.margin == doctest::Approx(kPi / 3).epsilon(1e-12));
    for (Eigen::Index j = 0; j < 6; ++j) CHECK(ip.angles[j] == doctest::Approx(kPi / 3).epsilon(1e-12));
}

TEST_CASE("starting points are interior on feasible fixtures")
{
    for (const auto& name : feasible_fixtures()) {
        CAPTURE(name);
        const auto cs = build_constraints(load_fixture(name).triangulation);
        const auto ip = initial_point(cs);
        REQUIRE(ip.feasibility == Feasibility::Interior);
        CHECK(cs.residual(ip.angles) < 1e-12);
        CHECK(boundary_margin(ip.angles) >= kMarginFloor);
        CHECK(boundary_margin(ip.angles) == doctest::Approx(ip.margin).epsilon(1e-9));
    }
}

TEST_CASE("a degree-one edge makes the polytope empty")
{
    const auto tri = load_fixture("degenerate").triangulation;
    bool has_degree_one = false;
    for (const auto& ec : tri.edge_classes()) has_degree_one |= ec.degree() == 1;
    REQUIRE(has_degree_one);
    CHECK(initial_point(build_constraints(tri)).feasibility == Feasibility::Empty);
}

TEST_CASE("a numerically thin polytope is flagged")
{
    // one tetrahedron-like system whose only solutions have an angle of 1e-9
    ConstraintSystem cs;
    cs.tet_count = 1;
    cs.A = Eigen::MatrixXd(2, 3);
    cs.A << 1, 1, 1, 1, 0, 0;
    cs.b = Eigen::Vector2d(kPi, 1e-9);
    const auto ip = initial_point(cs);
    CHECK(ip.feasibility == Feasibility::Thin);
    CHECK(ip.margin > 0.0);
    CHECK(ip.margin <= kMarginFloor);
}

TEST_CASE("tangent bases span the polytope directions")
{
    for (const auto& name : all_fixtures()) {
        CAPTURE(name);
        const auto tri = load_fixture(name).triangulation;
        const int n = tri.tet_count(), k = tri.cusp_count();
        const auto cs = build_constraints(tri);
        const auto basis = tangent_basis(tri, cs, peripheral_curves(tri));
        CHECK(basis.dimension() == n + k);
        CHECK_FALSE(basis.completed_numerically);
        CHECK((cs.A * basis.W).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(numerical_rank(basis.W) == n + k);
        int homology = 0;
        for (auto p : basis.provenance) homology += p == Provenance::Homology;
        CHECK(homology == 2 * k);

        // edge links alone span n - k dimensions
        Eigen::MatrixXd links(3 * n, n);
        for (int e = 0; e < n; ++e) links.col(e) = leading_trailing_vector(tri, edge_link_curve(tri, e, 0));
        CHECK(numerical_rank(links) == n - k);
    }
}

TEST_CASE("file curves and constructed curves give the same tangent space")
{
    const auto doc = load_fixture("fig8");
    const auto& tri = doc.triangulation;
    const auto cs = build_constraints(tri);
    const auto a = tangent_basis(tri, cs, peripheral_curves(tri, doc.peripheral));
    const auto b = tangent_basis(tri, cs, peripheral_curves(tri));
    Eigen::MatrixXd both(6, 6);
    both << a.W, b.W;
    CHECK(numerical_rank(both) == 3);
}
