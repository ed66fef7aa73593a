#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "atri/curves.hpp"
#include "atri/geometry.hpp"
#include "atri/triangulation.hpp"

namespace atri
{

/** Angles must stay this far from {0, pi} at the starting point */
inline constexpr double kMarginFloor = 1e-7;

/** Singular values below this fraction of the largest count as zero */
inline constexpr double kRankTolerance = 1e-10;

/**
 * Linear system A v = b cutting out the angle polytope. Rows [0, n) are
 * tetrahedron sums (= pi), rows [n, 2n) edge sums (= 2 pi); any further
 * rows are Dehn filling slices.
 */
struct ConstraintSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    int tet_count{0};
    int slice_count{0};

    int coordinate_count() const { return static_cast<int>(A.cols()); }
    /** @brief Largest |A v - b| entry */
    double residual(const AngleVector& v) const;
};

ConstraintSystem build_constraints(const Triangulation& tri);

/** @brief Numerical rank by SVD with relative tolerance kRankTolerance */
int numerical_rank(const Eigen::MatrixXd& m);

struct RankReport {
    int rank{0};
    int dimension{0};
};

/**
 * @brief Rank of A and dimension 3n - rank of its solution space
 *
 * Throws RankAnomaly unless rank == 2n - k + (slice rows).
 */
RankReport rank_and_dimension(const ConstraintSystem& cs, int cusp_count);

/** @brief Row vectors r_c (one per cusp) spanning the left null space of A */
std::vector<Eigen::VectorXd> cusp_vectors(const Triangulation& tri);

enum class Feasibility {
    Interior,  ///< margin above kMarginFloor
    Thin,      ///< polytope nonempty but margin at most kMarginFloor
    Empty,     ///< no angle structure
};

struct InitialPoint {
    Feasibility feasibility{Feasibility::Empty};
    /** Optimal margin t*: every angle lies in [t*, pi - t*] */
    double margin{0.0};
    AngleVector angles;
};

/**
 * @brief Maximize the smallest distance of any angle to {0, pi} subject to A v = b
 *
 * Solved exactly by the dense simplex routine. Throws LPNumericalFailure
 * if the returned point misses the constraints.
 */
InitialPoint initial_point(const ConstraintSystem& cs);

enum class Provenance { Homology, Filling, EdgeLink, NullspaceCompletion };

std::string to_string(Provenance p);

/** @brief Meridian/longitude pair on one cusp */
struct PeripheralPair {
    NormalCurve meridian;
    NormalCurve longitude;
    bool from_file{false};
};

/** @brief Dehn filling coefficients for one cusp */
struct Filling {
    int cusp{0};
    int p{1};
    int q{0};

    friend bool operator==(const Filling&, const Filling&) = default;
};

struct TangentBasis {
    /** Columns span the tangent space of the (sliced) polytope */
    Eigen::MatrixXd W;
    std::vector<Provenance> provenance;
    /** True if curve deformations did not suffice and the SVD null space filled in */
    bool completed_numerically{false};

    int dimension() const { return static_cast<int>(W.cols()); }
};

/**
 * @brief Choose independent leading-trailing deformations spanning ker A
 *
 * Candidates are the homology curves of unfilled cusps, p mu + q lambda
 * for filled cusps, then edge links in edge order; each is kept if it
 * raises the rank. Throws SpanDeficiency if even null-space completion
 * cannot reach the expected dimension.
 */
TangentBasis tangent_basis(const Triangulation& tri, const ConstraintSystem& cs,
                           const std::vector<PeripheralPair>& peripheral,
                           const std::vector<Filling>& fillings = {});

/** @brief Peripheral curves for every cusp: the supplied ones, else a constructed basis */
std::vector<PeripheralPair> peripheral_curves(
    const Triangulation& tri, const std::vector<std::optional<PeripheralPair>>& supplied = {});

}  // namespace atri
