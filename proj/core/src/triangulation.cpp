#include "atri/triangulation.hpp"

#include <algorithm>
#include <set>

#include "atri/errors.hpp"

namespace atri
{

bool Perm4::parse(std::string_view digits, Perm4& out)
{
    if (digits.size() != 4) return false;
    std::array<bool, 4> seen{};
    std::array<int, 4> d{};
    for (int i = 0; i < 4; ++i) {
        const char c = digits[i];
        if (c < '0' || c > '3') return false;
        d[i] = c - '0';
        if (seen[d[i]]) return false;
        seen[d[i]] = true;
    }
    out = Perm4(d[0], d[1], d[2], d[3]);
    return true;
}

Perm4 Perm4::inverse() const
{
    std::array<int, 4> q{};
    for (int i = 0; i < 4; ++i) q[img_[i]] = i;
    return {q[0], q[1], q[2], q[3]};
}

int Perm4::sign() const { return arrangement_sign(img_[0], img_[1], img_[2], img_[3]); }

std::string Perm4::str() const
{
    std::string s(4, '0');
    for (int i = 0; i < 4; ++i) s[i] = static_cast<char>('0' + img_[i]);
    return s;
}

int arrangement_sign(int a, int b, int c, int d)
{
    const int p[4] = {a, b, c, d};
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

std::array<int, 3> Triangulation::ccw_corners(int v)
{
    std::array<int, 3> c{};
    int k = 0;
    for (int u = 0; u < 4; ++u)
        if (u != v) c[k++] = u;
    if (arrangement_sign(v, c[0], c[1], c[2]) < 0) std::swap(c[1], c[2]);
    return c;
}

Triangulation::Triangulation(std::string name, std::vector<std::array<FaceGluing, 4>> gluings)
    : name_{std::move(name)}, gluings_{std::move(gluings)}
{
    if (gluings_.empty()) throw BadGluing("triangulation has no tetrahedra");
    validate_gluings();
    build_edges();
    build_cusps();
}

TriangleSide Triangulation::across(const TriangleSide& s) const
{
    const auto& g = gluings_[s.tet][s.side];
    return {g.neighbor, g.perm[s.vertex], g.perm[s.side]};
}

void Triangulation::validate_gluings() const
{
    const int n = tet_count();
    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = gluings_[t][f];
            const auto where = "tet " + std::to_string(t) + " face " + std::to_string(f);
            if (g.neighbor < 0 || g.neighbor >= n)
                throw BadGluing(where + " is glued to a missing tetrahedron");
            const int image = g.perm[f];
            if (g.neighbor == t && image == f)
                throw BadGluing(where + " is glued to itself");
            const auto& back = gluings_[g.neighbor][image];
            if (back.neighbor != t || !(back.perm == g.perm.inverse()))
                throw BadGluing(where + " gluing is not inverted by its partner");
            if (g.perm.sign() != -1)
                throw NonOrientable(where + " gluing " + g.perm.str() + " is even");
        }
    }
}

void Triangulation::build_edges()
{
    const int n = tet_count();
    edge_id_.assign(n, {-1, -1, -1, -1, -1, -1});
    corner_vertex_.assign(n, {});
    for (auto& per_tet : corner_vertex_)
        for (auto& row : per_tet) row.fill(-1);

    for (int t0 = 0; t0 < n; ++t0) {
        for (int a0 = 0; a0 < 4; ++a0) {
            for (int b0 = a0 + 1; b0 < 4; ++b0) {
                if (edge_id_[t0][edge_slot(a0, b0)] >= 0) continue;
                EdgeClass ec;
                ec.id = static_cast<int>(edges_.size());
                // state: tet, tail a, head b, then c, d with (a,c,b,d) even;
                // step through face d.
                int t = t0, a = a0, b = b0;
                int c = -1, d = -1;
                for (int x = 0; x < 4; ++x) {
                    if (x == a || x == b) continue;
                    if (c < 0)
                        c = x;
                    else
                        d = x;
                }
                if (arrangement_sign(a, c, b, d) < 0) std::swap(c, d);
                while (true) {
                    const int slot = edge_slot(a, b);
                    if (edge_id_[t][slot] >= 0) {
                        if (t == t0 && a == a0 && b == b0) break;
                        throw BadCuspLink("edge of tet " + std::to_string(t) +
                                          " is identified with itself in reverse");
                    }
                    edge_id_[t][slot] = ec.id;
                    ec.members.push_back({t, a, b});
                    const auto& g = gluings_[t][d];
                    const int na = g.perm[a], nb = g.perm[b], nc = g.perm[d], nd = g.perm[c];
                    t = g.neighbor;
                    a = na;
                    b = nb;
                    c = nc;
                    d = nd;
                }
                for (const auto& m : ec.members) {
                    corner_vertex_[m.tet][m.tail][m.head] = 2 * ec.id;
                    corner_vertex_[m.tet][m.head][m.tail] = 2 * ec.id + 1;
                }
                edges_.push_back(std::move(ec));
            }
        }
    }
}

void Triangulation::build_cusps()
{
    const int n = tet_count();
    cusp_id_.assign(n, {-1, -1, -1, -1});
    for (int t0 = 0; t0 < n; ++t0) {
        for (int v0 = 0; v0 < 4; ++v0) {
            if (cusp_id_[t0][v0] >= 0) continue;
            Cusp cusp;
            cusp.id = static_cast<int>(cusps_.size());
            std::vector<IdealVertex> stack{{t0, v0}};
            while (!stack.empty()) {
                const auto iv = stack.back();
                stack.pop_back();
                if (cusp_id_[iv.tet][iv.vertex] >= 0) continue;
                cusp_id_[iv.tet][iv.vertex] = cusp.id;
                cusp.vertices.push_back(iv);
                for (int f = 0; f < 4; ++f) {
                    if (f == iv.vertex) continue;
                    const auto& g = gluings_[iv.tet][f];
                    stack.push_back({g.neighbor, g.perm[iv.vertex]});
                }
            }
            std::sort(cusp.vertices.begin(), cusp.vertices.end(), [](auto& x, auto& y) {
                return x.tet != y.tet ? x.tet < y.tet : x.vertex < y.vertex;
            });
            cusps_.push_back(std::move(cusp));
        }
    }

    for (const auto& cusp : cusps_) {
        CuspTriangulation ct;
        ct.cusp = cusp.id;
        ct.triangles = cusp.vertices;
        std::set<int> verts;
        for (const auto& iv : cusp.vertices)
            for (int u = 0; u < 4; ++u)
                if (u != iv.vertex) verts.insert(corner_vertex_[iv.tet][iv.vertex][u]);
        ct.vertex_count = static_cast<int>(verts.size());
        ct.side_count = 3 * static_cast<int>(ct.triangles.size()) / 2;
        if (ct.euler_characteristic() != 0)
            throw BadCuspLink("cusp " + std::to_string(cusp.id) + " has Euler characteristic " +
                              std::to_string(ct.euler_characteristic()));
        cusp_tris_.push_back(std::move(ct));
    }
    if (static_cast<int>(edges_.size()) != n)
        throw BadCuspLink("found " + std::to_string(edges_.size()) + " edge classes for " +
                          std::to_string(n) + " tetrahedra");
}

}  // namespace atri
