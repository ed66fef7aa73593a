#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace atri
{

/** @brief Permutation of {0,1,2,3}, stored as the images of 0,1,2,3 */
class Perm4
{
public:
    constexpr Perm4() : img_{0, 1, 2, 3} {}
    constexpr Perm4(int a, int b, int c, int d)
        : img_{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
               static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)}
    {
    }

    /** @brief Parse four digits such as "0132"; returns false if malformed */
    static bool parse(std::string_view digits, Perm4& out);

    constexpr int operator[](int i) const { return img_[i]; }
    Perm4 inverse() const;
    /** @brief +1 for even permutations, -1 for odd ones */
    int sign() const;
    std::string str() const;

    friend bool operator==(const Perm4&, const Perm4&) = default;

private:
    std::array<std::uint8_t, 4> img_;
};

/** @brief +1 if (a,b,c,d) is an even arrangement of {0,1,2,3}, else -1 */
int arrangement_sign(int a, int b, int c, int d);

/** @brief Gluing of one face: face f of this tetrahedron maps to face perm[f] of neighbor */
struct FaceGluing {
    int neighbor{0};
    Perm4 perm;
};

/** @brief Ideal vertex v of tetrahedron tet; also names the boundary triangle cut off at v */
struct IdealVertex {
    int tet{0};
    int vertex{0};
    friend bool operator==(const IdealVertex&, const IdealVertex&) = default;
};

/** @brief Oriented tetrahedron edge; tail sits at end 0 of its edge class */
struct TetEdge {
    int tet{0};
    int tail{0};
    int head{0};
};

/**
 * Angle coordinates: index j in [0, 3n) names tetrahedron j/3 and the
 * opposite-edge pair j%3, with 0 = {01,23}, 1 = {02,13}, 2 = {03,12}.
 */
constexpr int edge_pair(int a, int b)
{
    if (a == 0) return b - 1;
    if (b == 0) return a - 1;
    return 5 - a - b;
}
constexpr int angle_coordinate(int tet, int a, int b) { return 3 * tet + edge_pair(a, b); }

struct EdgeClass {
    int id{0};
    /** Members in rotation order; consecutive members share a glued face */
    std::vector<TetEdge> members;
    int degree() const { return static_cast<int>(members.size()); }
};

struct Cusp {
    int id{0};
    std::vector<IdealVertex> vertices;
};

/** @brief Glued side of a boundary triangle: triangle (tet, vertex), side opposite corner `side` */
struct TriangleSide {
    int tet{0};
    int vertex{0};
    int side{0};
    friend bool operator==(const TriangleSide&, const TriangleSide&) = default;
};

/**
 * Tiling of one cusp torus by boundary triangles. Triangles are oriented
 * as seen from the cusp: corners (a,b,c) of triangle (tet, v) run
 * counterclockwise iff (v,a,b,c) is an even arrangement.
 */
struct CuspTriangulation {
    int cusp{0};
    std::vector<IdealVertex> triangles;
    int side_count{0};    ///< sides after gluing
    int vertex_count{0};  ///< cusp vertices, i.e. edge-class endpoints on this torus

    int euler_characteristic() const
    {
        return vertex_count - side_count + static_cast<int>(triangles.size());
    }
};

/**
 * Validated ideal triangulation of an orientable 3-manifold whose
 * boundary consists of tori. Immutable after construction.
 */
class Triangulation
{
public:
    /**
     * @brief Validate gluings and derive edge classes and cusps
     *
     * Throws BadGluing, NonOrientable or BadCuspLink.
     */
    Triangulation(std::string name, std::vector<std::array<FaceGluing, 4>> gluings);

    const std::string& name() const { return name_; }
    int tet_count() const { return static_cast<int>(gluings_.size()); }
    int coordinate_count() const { return 3 * tet_count(); }
    const FaceGluing& gluing(int tet, int face) const { return gluings_[tet][face]; }

    const std::vector<EdgeClass>& edge_classes() const { return edges_; }
    const std::vector<Cusp>& cusps() const { return cusps_; }
    int cusp_count() const { return static_cast<int>(cusps_.size()); }

    /** @brief Edge class containing tetrahedron edge {a,b} of tet */
    int edge_of(int tet, int a, int b) const { return edge_id_[tet][edge_slot(a, b)]; }
    int cusp_of(int tet, int vertex) const { return cusp_id_[tet][vertex]; }
    /** @brief Cusp vertex (2*edge + end) at corner u of boundary triangle (tet, v) */
    int corner_vertex(int tet, int v, int u) const { return corner_vertex_[tet][v][u]; }

    /** @brief Side of the neighboring triangle glued to the given side */
    TriangleSide across(const TriangleSide& s) const;

    const CuspTriangulation& cusp_triangulation(int cusp) const { return cusp_tris_[cusp]; }

    /** @brief Counterclockwise corner order of boundary triangle (tet, v) */
    static std::array<int, 3> ccw_corners(int v);

    static constexpr int edge_slot(int a, int b)
    {
        const int lo = a < b ? a : b;
        const int hi = a < b ? b : a;
        // 01 02 03 12 13 23 -> 0..5
        return lo == 0 ? hi - 1 : lo + hi;
    }

private:
    void validate_gluings() const;
    void build_edges();
    void build_cusps();

    std::string name_;
    std::vector<std::array<FaceGluing, 4>> gluings_;
    std::vector<EdgeClass> edges_;
    std::vector<Cusp> cusps_;
    std::vector<CuspTriangulation> cusp_tris_;
    std::vector<std::array<int, 6>> edge_id_;
    std::vector<std::array<int, 4>> cusp_id_;
    std::vector<std::array<std::array<int, 4>, 4>> corner_vertex_;
};

}  // namespace atri
