#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "atri/curves.hpp"
#include "atri/triangulation.hpp"

namespace atri
{

/** Dihedral angles, one per angle coordinate, in radians */
using AngleVector = Eigen::VectorXd;

/** Angles closer than this to 0 or pi are treated as degenerate */
inline constexpr double kDegenerateAngle = 1e-12;

/**
 * @brief Lobachevsky function, minus the integral of log|2 sin t| from 0 to x
 *
 * Odd and pi-periodic. Evaluated by range reduction to [-pi/2, pi/2] and
 * the zeta series; absolute error below 1e-13.
 */
double lobachevsky(double x);

/**
 * @brief Shape parameter of the edge carrying angle alpha
 *
 * (alpha, beta, gamma) are the angles at one ideal vertex in clockwise
 * order; z = sin(gamma)/sin(beta) * exp(i alpha).
 */
std::complex<double> shape_parameter(double alpha, double beta, double gamma);

/** @brief Shape parameter of every angle coordinate */
std::vector<std::complex<double>> shapes(const AngleVector& v);

struct Holonomy {
    double re{0.0};  ///< log of the scaling factor
    double im{0.0};  ///< total turning angle
    std::complex<double> value() const { return {re, im}; }
};

/**
 * @brief Holonomy of a normal curve: sum of epsilon_i log z_i
 *
 * The imaginary part is summed from the angles themselves, so it is
 * exact for any branch bookkeeping.
 */
Holonomy holonomy(const NormalCurve& curve, const AngleVector& v);

/** @brief Sum of lobachevsky over all coordinates; defined on the closed box */
double volume(const AngleVector& v);

/** @brief Volume gradient, -log sin v_j (meaningful along tangent directions) */
Eigen::VectorXd volume_gradient(const AngleVector& v);

/** @brief Diagonal of the volume Hessian, -cot v_j */
Eigen::VectorXd volume_hessian_diagonal(const AngleVector& v);

/** @brief -sum w_j log sin v_j */
double directional_derivative(const AngleVector& v, const DeformationVector& w);

/** @brief -sum w_j^2 cot v_j */
double hessian_quadratic_form(const AngleVector& v, const DeformationVector& w);

/** @brief Smallest distance of any coordinate to {0, pi} */
double boundary_margin(const AngleVector& v);

}  // namespace atri
