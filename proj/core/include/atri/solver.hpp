#pragma once

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "atri/angles.hpp"
#include "atri/errors.hpp"
#include "atri/geometry.hpp"
#include "atri/triangulation.hpp"

namespace atri
{

struct SolveOptions {
    /** Stop once the reduced gradient's max norm falls below this */
    double gradient_tolerance{1e-12};
    int max_iterations{200};
    /** No trial step may bring an angle closer than this to 0 or pi */
    double boundary_threshold{1e-9};
    double armijo{1e-4};
    double backtrack{0.5};
};

/** Holonomy residuals at or below this count as solved */
inline constexpr double kVerifyTolerance = 1e-9;

enum class SolveStatus { InteriorCriticalPoint, BoundaryMaximum, Infeasible };

std::string to_string(SolveStatus s);

struct IterationRecord {
    double volume{0.0};
    double gradient_norm{0.0};
    double step{0.0};
    bool newton{true};
};

struct Ascent {
    SolveStatus status{SolveStatus::InteriorCriticalPoint};
    AngleVector angles;
    double volume{0.0};
    double gradient_norm{0.0};
    int iterations{0};
    /** One record per accepted step */
    std::vector<IterationRecord> history;
};

/** @brief Neither converged nor recognizably stuck at the boundary */
class MaxIterations : public Error
{
public:
    MaxIterations(const std::string& msg, Ascent partial) : Error(msg), partial_{std::move(partial)} {}
    const Ascent& partial() const noexcept { return partial_; }

private:
    Ascent partial_;
};

/** @brief W^T grad V at p */
Eigen::VectorXd reduced_gradient(const Eigen::MatrixXd& W, const AngleVector& p);

/** @brief W^T Hess V W at p; negative definite on the interior */
Eigen::MatrixXd reduced_hessian(const Eigen::MatrixXd& W, const AngleVector& p);

/**
 * @brief Ascend the volume over p0 + span(W) to its maximum
 *
 * Newton steps in the reduced coordinates with an Armijo line search that
 * keeps every angle inside (threshold, pi - threshold); falls back to the
 * reduced gradient when the Newton direction does not ascend.
 */
Ascent maximize(const Eigen::MatrixXd& W, const AngleVector& p0, const SolveOptions& opts = {});

struct MetricResiduals {
    /** max |H(edge link) - 2 pi i| */
    double edge{0.0};
    /** max |H(sigma)| over meridians and longitudes of unfilled cusps */
    double completeness{0.0};
    /** max |p H(mu) + q H(lambda) - 2 pi i| over filled cusps */
    double filling{0.0};

    double worst() const { return std::max({edge, completeness, filling}); }
};

MetricResiduals verify_metric(const Triangulation& tri, const AngleVector& v,
                              const std::vector<PeripheralPair>& peripheral,
                              const std::vector<Filling>& fillings = {});

/**
 * @brief Append the row Im(p H(mu) + q H(lambda)) = 2 pi for one cusp
 *
 * Throws NotCoprime when gcd(|p|, |q|) != 1.
 */
ConstraintSystem dehn_slice(const Triangulation& tri, const ConstraintSystem& cs,
                            const std::vector<PeripheralPair>& peripheral, const Filling& filling);

/**
 * @brief V(v) for a point of the closed angle polytope
 *
 * Throws NotFeasible if v misses the constraints or the box by more than 1e-9.
 */
double volume_lower_bound(const Triangulation& tri, const AngleVector& v);

struct SolveReport {
    SolveStatus status{SolveStatus::Infeasible};
    AngleVector angles;
    std::vector<std::complex<double>> shapes;
    double volume{0.0};
    /** V at the best feasible point found; proven below vol(M) only after an interior critical point */
    double lower_bound{0.0};
    bool bound_caveat{true};
    /** Largest-margin point had margin in (0, kMarginFloor] */
    bool thin{false};
    double start_margin{0.0};
    int dimension{0};
    MetricResiduals residuals;
    int iterations{0};
    std::vector<Filling> fillings;
};

struct SolveInput {
    const Triangulation& triangulation;
    std::vector<PeripheralPair> peripheral;
    std::vector<Filling> fillings;
};

/** @brief Full pipeline: constraints, slices, start point, basis, ascent, verification */
SolveReport solve(const SolveInput& input, const SolveOptions& opts = {});

/** @brief Same, starting the ascent from a caller-chosen interior point */
SolveReport solve_from(const SolveInput& input, const AngleVector& start, const SolveOptions& opts = {});

}  // namespace atri
