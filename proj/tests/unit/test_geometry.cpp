#include <doctest.h>

#include <numbers>
#include <random>

#include "atri/errors.hpp"
#include "atri/geometry.hpp"
#include "support.hpp"

using namespace atri;
using namespace atri::testing;

namespace
{
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("Lobachevsky function special values")
{
    CHECK(lobachevsky(0.0) == 0.0);
    CHECK(std::abs(lobachevsky(kPi / 2)) < 1e-15);
    CHECK(std::abs(lobachevsky(kPi)) < 1e-15);
    CHECK(lobachevsky(kPi / 6) == doctest::Approx(0.5074708032).epsilon(1e-10));
    CHECK(lobachevsky(kPi / 3) == doctest::Approx(0.3383138689).epsilon(1e-10));
    CHECK(std::abs(lobachevsky(kPi / 6) - lobachevsky_quadrature(kPi / 6)) < 1e-13);
    CHECK(std::abs(lobachevsky(kPi / 3) - lobachevsky_quadrature(kPi / 3)) < 1e-13);
}

TEST_CASE("Lobachevsky function symmetries")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng);
        CHECK(std::abs(lobachevsky(x + kPi) - lobachevsky(x)) < 1e-13);
        CHECK(std::abs(lobachevsky(-x) + lobachevsky(x)) < 1e-13);
    }
    // the maximum sits at pi/6
    for (double x = 0.0; x < kPi; x += 0.01) CHECK(lobachevsky(x) <= lobachevsky(kPi / 6) + 1e-15);
}

TEST_CASE("Lobachevsky series matches quadrature near the reduction edge")
{
    for (double x : {1.5, 1.57, 1.5707, kPi / 2 - 1e-6, kPi / 2 + 1e-6, 1.6, 3.1, 3.14159})
        CHECK(std::abs(lobachevsky(x) - lobachevsky_quadrature(x)) < 1e-12);
}

TEST_CASE("shape parameters")
{
    auto near = [](std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-10; };
    CHECK(near(shape_parameter(kPi / 3, kPi / 3, kPi / 3), {0.5, 0.8660254038}));
    CHECK(near(shape_parameter(kPi / 2, kPi / 4, kPi / 4), {0.0, 1.0}));
    CHECK(near(shape_parameter(kPi / 2, kPi / 3, kPi / 6), {0.0, 0.5773502692}));
    CHECK_THROWS_AS(shape_parameter(0.0, kPi / 2, kPi / 2), DegenerateTetrahedron);
    CHECK_THROWS_AS(shape_parameter(1e-13, kPi / 2, kPi / 2 - 1e-13), DegenerateTetrahedron);
    CHECK_THROWS_AS(shape_parameter(kPi, 0.0, 0.0), DegenerateTetrahedron);
}

TEST_CASE("the three shapes of a tetrahedron are related")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.01, kPi - 0.02);
    for (int i = 0; i < 500; ++i) {
        const double a = u(rng);
        const double b = std::uniform_real_distribution<double>(0.005, kPi - a - 0.005)(rng);
        Eigen::Vector3d v(a, b, kPi - a - b);
        const auto z = shapes(v);
        for (const auto& zi : z) CHECK(zi.imag() > 0);
        CHECK(std::abs(z[0] * z[1] * z[2] + 1.0) < 1e-10 * std::max(1.0, std::abs(z[0] * z[1])));
        CHECK(std::abs(z[2] - (z[0] - 1.0) / z[0]) < 1e-10 * std::max(1.0, std::abs(z[2])));
        CHECK(std::abs(z[1] - 1.0 / (1.0 - z[0])) < 1e-10 * std::max(1.0, std::abs(z[1])));
    }
}

TEST_CASE("volume values")
{
    CHECK(volume(Eigen::VectorXd::Constant(6, kPi / 3)) == doctest::Approx(2.0298832128).epsilon(1e-10));
    CHECK(volume(Eigen::Vector3d::Constant(kPi / 3)) == doctest::Approx(1.0149416064).epsilon(1e-10));
    CHECK(std::abs(volume(Eigen::Vector3d(0.0, 0.0, kPi))) < 1e-15);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const double a = std::uniform_real_distribution<double>(0.0, kPi)(rng);
        const double b = std::uniform_real_distribution<double>(0.0, kPi - a)(rng);
        const double vol = volume(Eigen::Vector3d(a, b, kPi - a - b));
        CHECK(volume(Eigen::Vector3d(b, kPi - a - b, a)) == doctest::Approx(vol).epsilon(1e-14));
        CHECK(volume(Eigen::Vector3d(kPi - a - b, b, a)) == doctest::Approx(vol).epsilon(1e-14));
        CHECK(vol <= 1.0149416064 + 1e-10);
    }
}

TEST_CASE("holonomy of edge links and reversal")
{
    std::mt19937_64 rng(8);
    for (const auto& name : feasible_fixtures()) {
        CAPTURE(name);
        const auto doc = load_fixture(name);
        const auto& tri = doc.triangulation;
        const auto v = random_angle_structure(tri, rng);
        for (int e = 0; e < tri.tet_count(); ++e) {
            const auto h = holonomy(edge_link_curve(tri, e, 0), v);
            CHECK(std::abs(h.im - 2 * kPi) < 1e-12);
        }
        for (int c = 0; c < tri.cusp_count(); ++c) {
            const auto sigma = random_curve(tri, c, rng);
            const auto h = holonomy(sigma, v);
            const auto hr = holonomy(reversed(sigma), v);
            CHECK(std::abs(h.re + hr.re) < 1e-12);
            CHECK(std::abs(h.im + hr.im) < 1e-12);
            CHECK(std::abs(angular_holonomy_form(tri, sigma).dot(v) - h.im) < 1e-12);
        }
    }
    const auto tri = load_fixture("fig8").triangulation;
    const auto h = holonomy(edge_link_curve(tri, 1, 1), Eigen::VectorXd::Constant(6, kPi / 3));
    CHECK(std::abs(h.re) < 1e-15);
    CHECK(std::abs(h.im - 2 * kPi) < 1e-14);
}

TEST_CASE("angular holonomy changes by twice the intersection number")
{
    std::mt19937_64 rng(9);
    for (const auto& name : all_fixtures()) {
        CAPTURE(name);
        const auto tri = load_fixture(name).triangulation;
        for (int trial = 0; trial < 60; ++trial) {
            const int c = trial % tri.cusp_count();
            const auto rho = random_curve(tri, c, rng);
            const auto sigma = random_curve(tri, c, rng);
            const double d = angular_holonomy_form(tri, rho).dot(leading_trailing_vector(tri, sigma));
            CHECK(std::abs(d - 2.0 * intersection_number(tri, rho, sigma)) < 1e-12);
        }
    }
}

TEST_CASE("volume derivative along a curve deformation is the real holonomy")
{
    std::mt19937_64 rng(10);
    for (const auto& name : feasible_fixtures()) {
        CAPTURE(name);
        const auto tri = load_fixture(name).triangulation;
        for (int trial = 0; trial < 30; ++trial) {
            const auto v = random_angle_structure(tri, rng);
            const auto sigma = random_curve(tri, trial % tri.cusp_count(), rng);
            const double d = directional_derivative(v, leading_trailing_vector(tri, sigma));
            CHECK(std::abs(d - holonomy(sigma, v).re) < 1e-10);
        }
    }
}

TEST_CASE("derivatives match finite differences")
{
    std::mt19937_64 rng(12);
    int checked = 0;
    for (const auto& name : feasible_fixtures()) {
        const auto tri = load_fixture(name).triangulation;
        const auto cs = build_constraints(tri);
        const auto basis = tangent_basis(tri, cs, peripheral_curves(tri));
        std::normal_distribution<double> gauss;
        for (int trial = 0; trial < 25; ++trial) {
            const auto v = random_angle_structure(tri, rng, 0.1);
            Eigen::VectorXd c(basis.dimension());
            for (auto& x : c) x = gauss(rng);
            Eigen::VectorXd w = basis.W * c;
            w /= w.cwiseAbs().maxCoeff();
            const double d = directional_derivative(v, w);
            const double h1 = 1e-5;
            const double fd = (volume(v + h1 * w) - volume(v - h1 * w)) / (2 * h1);
            if (std::abs(d) > 1e-3) {
                CHECK(std::abs(fd - d) <= 1e-6 * std::abs(d));
                ++checked;
            }
            const double q = hessian_quadratic_form(v, w);
            CHECK(q < 0);
            const double h2 = 1e-4;
            const double fd2 = (volume(v + h2 * w) - 2 * volume(v) + volume(v - h2 * w)) / (h2 * h2);
            CHECK(std::abs(fd2 - q) <= 1e-4 * std::abs(q));
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("Hessian quadratic form on the regular tetrahedron")
{
    CHECK(hessian_quadratic_form(Eigen::Vector3d::Constant(kPi / 3), Eigen::Vector3d(1, -1, 0)) ==
          doctest::Approx(-2.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(volume_gradient(Eigen::Vector3d(1e-13, kPi / 2, kPi / 2 - 1e-13)), DegenerateTetrahedron);
}
