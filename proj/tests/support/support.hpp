#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "atri/angles.hpp"
#include "atri/curves.hpp"
#include "atri/native_format.hpp"
#include "atri/solver.hpp"

namespace atri::testing
{

std::string fixture_path(const std::string& name);
NativeDocument load_fixture(const std::string& name);

/** Fixtures with a nonempty angle polytope */
const std::vector<std::string>& feasible_fixtures();
/** Every shipped fixture */
const std::vector<std::string>& all_fixtures();

/** @brief Label per tetrahedron edge (tet*6 + slot) from union-find over face gluings */
std::vector<int> edge_partition_oracle(const Triangulation& tri);
/** @brief Label per ideal vertex (tet*4 + v) from union-find over face gluings */
std::vector<int> cusp_partition_oracle(const Triangulation& tri);
/** @brief True if two labelings describe the same partition */
bool same_partition(const std::vector<int>& a, const std::vector<int>& b);

/** @brief Closed normal curve from a random walk on one cusp torus */
NormalCurve random_curve(const Triangulation& tri, int cusp, std::mt19937_64& rng);

/** @brief Every curve the library builds on this cusp: edge links, basis, peripheral */
std::vector<NormalCurve> constructed_curves(const Triangulation& tri, const std::vector<PeripheralPair>& per,
                                            int cusp);

/** @brief Interior angle structure with margin at least min_margin, sampled along the tangent space */
AngleVector random_angle_structure(const Triangulation& tri, std::mt19937_64& rng, double min_margin = 0.05);

/** @brief Independent evaluation of the Lobachevsky integral by tanh-sinh quadrature */
double lobachevsky_quadrature(double x);

/** @brief max c.x over {A x = b, x >= 0} by enumerating basic solutions; nullopt if infeasible */
std::optional<double> lp_bruteforce(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

}  // namespace atri::testing
