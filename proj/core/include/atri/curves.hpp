#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "atri/triangulation.hpp"

namespace atri
{

/**
 * Arc inside boundary triangle (tet, vertex). Sides are named by the
 * corner they face, so `enter` and `exit` are vertices of the tetrahedron
 * other than `vertex`.
 */
struct Segment {
    int tet{0};
    int vertex{0};
    int enter{0};
    int exit{0};

    /** @brief The corner lying on both the entry and the exit side */
    int cut() const { return 6 - vertex - enter - exit; }
    Segment reversed() const { return {tet, vertex, exit, enter}; }
    friend bool operator==(const Segment&, const Segment&) = default;
};

/** @brief Oriented closed normal curve on one cusp torus */
struct NormalCurve {
    int cusp{0};
    std::vector<Segment> segments;

    int length() const { return static_cast<int>(segments.size()); }
    bool empty() const { return segments.empty(); }
};

struct CutCorner {
    int corner{0};
    /** +1 when the corner lies to the left of the oriented segment */
    int epsilon{1};
};

/** Element of R^{3n} indexed by angle coordinate */
using DeformationVector = Eigen::VectorXd;

CutCorner cut_corner(const Segment& seg);

/** @brief Throws InvalidCurve unless the segments chain into a closed normal curve on its cusp */
void validate_curve(const Triangulation& tri, const NormalCurve& curve);

/** @brief Traverse the same curve backwards */
NormalCurve reversed(const NormalCurve& curve);

/** @brief Counterclockwise loop around endpoint `end` (0 = tail, 1 = head) of an edge class */
NormalCurve edge_link_curve(const Triangulation& tri, int edge, int end);

/**
 * @brief Two simple closed curves spanning the homology of a cusp torus
 *
 * Built from a tree-cotree decomposition of the cusp triangulation; the
 * pair is oriented so that intersection_number(first, second) == +1.
 * Throws BasisFailure if the construction does not yield such a pair.
 */
std::pair<NormalCurve, NormalCurve> homology_basis(const Triangulation& tri, int cusp);

/**
 * @brief Signed count of crossings of rho by sigma, right-to-left minus left-to-right
 *
 * Computed from a combinatorial transverse realization. Throws
 * DifferentCusps when the curves live on different tori.
 */
int intersection_number(const Triangulation& tri, const NormalCurve& rho, const NormalCurve& sigma);

/** @brief +1 at each segment's leading corner, -1 at its trailing corner */
DeformationVector leading_trailing_vector(const Triangulation& tri, const NormalCurve& curve);

/**
 * Coefficients c with c . v = Im H(curve) for every angle vector v: the
 * epsilon-signed incidence of cut corners.
 */
Eigen::VectorXd angular_holonomy_form(const Triangulation& tri, const NormalCurve& curve);

/**
 * @brief Cut a curve at the first triangle it visits twice and rejoin into two curves
 *
 * Returns nullopt when every triangle is visited at most once. Arcs that
 * degenerate after rejoining are removed by a local isotopy, so either
 * piece may come back empty.
 */
std::optional<std::pair<NormalCurve, NormalCurve>> cut_and_rejoin(const NormalCurve& curve);

/** @brief True if no boundary triangle is visited twice */
bool visits_triangles_once(const NormalCurve& curve);

}  // namespace atri
