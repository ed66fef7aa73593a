#include "atri/curves.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "atri/errors.hpp"

namespace atri
{

namespace
{

int triangle_key(int tet, int vertex) { return 4 * tet + vertex; }
int side_key(const TriangleSide& s) { return 16 * s.tet + 4 * s.vertex + s.side; }

// Position of a side on the counterclockwise boundary of its triangle:
// arc k runs from corner ccw[k] to corner ccw[k+1], i.e. it is the side
// opposite ccw[k+2].
int boundary_arc(int vertex, int side)
{
    const auto ccw = Triangulation::ccw_corners(vertex);
    for (int k = 0; k < 3; ++k)
        if (ccw[(k + 2) % 3] == side) return k;
    return -1;
}

std::string describe(const Segment& s)
{
    return "(" + std::to_string(s.tet) + "," + std::to_string(s.vertex) + "," +
           std::to_string(s.enter) + "," + std::to_string(s.exit) + ")";
}

// Drop arcs whose entry and exit coincide by merging their neighbours.
void remove_degenerate(NormalCurve& c)
{
    auto& s = c.segments;
    while (true) {
        auto it = std::find_if(s.begin(), s.end(), [](const Segment& x) { return x.enter == x.exit; });
        if (it == s.end()) return;
        const int m = static_cast<int>(s.size());
        if (m == 1) {
            s.clear();
            return;
        }
        const int k = static_cast<int>(it - s.begin());
        const int prev = (k + m - 1) % m;
        const int next = (k + 1) % m;
        const Segment merged{s[prev].tet, s[prev].vertex, s[prev].enter, s[next].exit};
        if (prev == next) {
            s = {merged};
            continue;
        }
        s[prev] = merged;
        // erase k and next, keeping cyclic order
        std::vector<Segment> out;
        out.reserve(m - 2);
        for (int i = 0; i < m; ++i)
            if (i != k && i != next) out.push_back(s[i]);
        s = std::move(out);
    }
}

}  // namespace

CutCorner cut_corner(const Segment& seg)
{
    const int corner = seg.cut();
    return {corner, arrangement_sign(seg.vertex, seg.enter, corner, seg.exit)};
}

void validate_curve(const Triangulation& tri, const NormalCurve& curve)
{
    if (curve.cusp < 0 || curve.cusp >= tri.cusp_count())
        throw InvalidCurve("curve refers to missing cusp " + std::to_string(curve.cusp));
    const int m = curve.length();
    if (m == 0) throw InvalidCurve("curve has no segments");
    for (int i = 0; i < m; ++i) {
        const auto& s = curve.segments[i];
        if (s.tet < 0 || s.tet >= tri.tet_count())
            throw InvalidCurve("segment " + describe(s) + " names a missing tetrahedron");
        for (int x : {s.vertex, s.enter, s.exit})
            if (x < 0 || x > 3) throw InvalidCurve("segment " + describe(s) + " has a bad index");
        if (s.enter == s.exit || s.enter == s.vertex || s.exit == s.vertex)
            throw InvalidCurve("segment " + describe(s) + " does not cut off a corner");
        if (tri.cusp_of(s.tet, s.vertex) != curve.cusp)
            throw InvalidCurve("segment " + describe(s) + " is not on cusp " +
                               std::to_string(curve.cusp));
        const auto& nxt = curve.segments[(i + 1) % m];
        const auto landing = tri.across({s.tet, s.vertex, s.exit});
        if (landing.tet != nxt.tet || landing.vertex != nxt.vertex || landing.side != nxt.enter)
            throw InvalidCurve("segment " + describe(s) + " is not followed by " + describe(nxt));
    }
}

NormalCurve reversed(const NormalCurve& curve)
{
    NormalCurve r{curve.cusp, {}};
    r.segments.reserve(curve.segments.size());
    for (auto it = curve.segments.rbegin(); it != curve.segments.rend(); ++it)
        r.segments.push_back(it->reversed());
    return r;
}

NormalCurve edge_link_curve(const Triangulation& tri, int edge, int end)
{
    const auto& ec = tri.edge_classes().at(edge);
    NormalCurve curve;
    auto other_two = [](int a, int b) {
        std::array<int, 2> cd{-1, -1};
        for (int x = 0, k = 0; x < 4; ++x)
            if (x != a && x != b) cd[k++] = x;
        if (arrangement_sign(a, cd[0], b, cd[1]) < 0) std::swap(cd[0], cd[1]);
        return cd;
    };
    if (end == 0) {
        for (const auto& m : ec.members) {
            const auto [c, d] = other_two(m.tail, m.head);
            curve.segments.push_back({m.tet, m.tail, c, d});
        }
    } else {
        for (auto it = ec.members.rbegin(); it != ec.members.rend(); ++it) {
            const auto [c, d] = other_two(it->tail, it->head);
            curve.segments.push_back({it->tet, it->head, d, c});
        }
    }
    curve.cusp = tri.cusp_of(curve.segments.front().tet, curve.segments.front().vertex);
    return curve;
}

std::pair<NormalCurve, NormalCurve> homology_basis(const Triangulation& tri, int cusp)
{
    const auto& ct = tri.cusp_triangulation(cusp);
    std::map<int, int> local;  // triangle key -> index
    for (int i = 0; i < static_cast<int>(ct.triangles.size()); ++i)
        local[triangle_key(ct.triangles[i].tet, ct.triangles[i].vertex)] = i;
    const int ntri = static_cast<int>(ct.triangles.size());

    // Glued side pairs, each keyed by its smaller side.
    std::set<int> primal_tree;
    {
        std::set<int> reached;
        std::queue<int> todo;
        const auto& t0 = ct.triangles.front();
        const int start = tri.corner_vertex(t0.tet, t0.vertex, Triangulation::ccw_corners(t0.vertex)[0]);
        reached.insert(start);
        todo.push(start);
        // adjacency: each side joins the cusp vertices at its two ends
        std::multimap<int, std::pair<int, int>> adj;  // vertex -> (side key, other vertex)
        for (const auto& iv : ct.triangles) {
            for (int u = 0; u < 4; ++u) {
                if (u == iv.vertex) continue;
                const TriangleSide s{iv.tet, iv.vertex, u};
                const int key = std::min(side_key(s), side_key(tri.across(s)));
                std::array<int, 2> ends{};
                for (int x = 0, k = 0; x < 4; ++x)
                    if (x != iv.vertex && x != u) ends[k++] = tri.corner_vertex(iv.tet, iv.vertex, x);
                adj.insert({ends[0], {key, ends[1]}});
                adj.insert({ends[1], {key, ends[0]}});
            }
        }
        while (!todo.empty()) {
            const int v = todo.front();
            todo.pop();
            auto [lo, hi] = adj.equal_range(v);
            for (auto it = lo; it != hi; ++it) {
                const auto [key, w] = it->second;
                if (reached.count(w)) continue;
                reached.insert(w);
                primal_tree.insert(key);
                todo.push(w);
            }
        }
    }

    // Dual spanning tree avoiding primal tree sides.
    struct Parent {
        int tri{-1};
        int side_here{-1};   // side of this triangle leading to the parent
        int side_there{-1};  // matching side of the parent
    };
    std::vector<Parent> parent(ntri);
    std::vector<int> depth(ntri, -1);
    std::set<int> cotree;
    depth[0] = 0;
    std::queue<int> todo;
    todo.push(0);
    while (!todo.empty()) {
        const int i = todo.front();
        todo.pop();
        const auto& iv = ct.triangles[i];
        for (int u = 0; u < 4; ++u) {
            if (u == iv.vertex) continue;
            const TriangleSide s{iv.tet, iv.vertex, u};
            const auto o = tri.across(s);
            const int key = std::min(side_key(s), side_key(o));
            if (primal_tree.count(key)) continue;
            const int j = local.at(triangle_key(o.tet, o.vertex));
            if (depth[j] >= 0) continue;
            depth[j] = depth[i] + 1;
            parent[j] = {i, o.side, u};
            cotree.insert(key);
            todo.push(j);
        }
    }
    if (std::count(depth.begin(), depth.end(), -1) != 0)
        throw BasisFailure("dual spanning tree does not reach every triangle of cusp " +
                           std::to_string(cusp));

    std::vector<TriangleSide> leftover;
    for (const auto& iv : ct.triangles) {
        for (int u = 0; u < 4; ++u) {
            if (u == iv.vertex) continue;
            const TriangleSide s{iv.tet, iv.vertex, u};
            const int key = side_key(s);
            if (key > side_key(tri.across(s))) continue;
            if (!primal_tree.count(key) && !cotree.count(key)) leftover.push_back(s);
        }
    }
    if (leftover.size() != 2)
        throw BasisFailure("tree-cotree left " + std::to_string(leftover.size()) +
                           " generators on cusp " + std::to_string(cusp));

    // Loop: enter triangle B through the leftover side, follow the tree to
    // triangle A, leave A through the leftover side.
    auto loop_through = [&](const TriangleSide& exit_side) {
        const auto entry = tri.across(exit_side);
        const int a = local.at(triangle_key(exit_side.tet, exit_side.vertex));
        const int b = local.at(triangle_key(entry.tet, entry.vertex));
        // climb both ends to the common ancestor
        std::vector<int> from_b{b}, from_a{a};
        int x = b, y = a;
        while (depth[x] > depth[y]) from_b.push_back(x = parent[x].tri);
        while (depth[y] > depth[x]) from_a.push_back(y = parent[y].tri);
        while (x != y) {
            from_b.push_back(x = parent[x].tri);
            from_a.push_back(y = parent[y].tri);
        }
        // triangle sequence b ... lca ... a
        std::vector<int> path = from_b;
        for (int k = static_cast<int>(from_a.size()) - 2; k >= 0; --k) path.push_back(from_a[k]);

        NormalCurve c{cusp, {}};
        int enter = entry.side;
        for (std::size_t k = 0; k < path.size(); ++k) {
            const int cur = path[k];
            const auto& iv = ct.triangles[cur];
            int exit = exit_side.side;
            int next_enter = -1;
            if (k + 1 < path.size()) {
                const int nxt = path[k + 1];
                if (parent[cur].tri == nxt) {
                    exit = parent[cur].side_here;
                    next_enter = parent[cur].side_there;
                } else {
                    exit = parent[nxt].side_there;
                    next_enter = parent[nxt].side_here;
                }
            }
            c.segments.push_back({iv.tet, iv.vertex, enter, exit});
            enter = next_enter;
        }
        return c;
    };

    NormalCurve mu = loop_through(leftover[0]);
    NormalCurve lambda = loop_through(leftover[1]);
    validate_curve(tri, mu);
    validate_curve(tri, lambda);
    if (!visits_triangles_once(mu) || !visits_triangles_once(lambda))
        throw BasisFailure("homology generator on cusp " + std::to_string(cusp) + " is not simple");
    const int iota = intersection_number(tri, mu, lambda);
    if (iota == -1)
        lambda = reversed(lambda);
    else if (iota != 1)
        throw BasisFailure("generators on cusp " + std::to_string(cusp) + " intersect " +
                           std::to_string(iota) + " times");
    return {std::move(mu), std::move(lambda)};
}

int intersection_number(const Triangulation& tri, const NormalCurve& rho, const NormalCurve& sigma)
{
    if (rho.cusp != sigma.cusp)
        throw DifferentCusps("curves lie on cusps " + std::to_string(rho.cusp) + " and " +
                             std::to_string(sigma.cusp));
    if (rho.empty() || sigma.empty()) return 0;

    // Each crossing of a glued side gets a parameter in (0,1) along the
    // side's canonical direction: the counterclockwise direction of the
    // owning (smaller-keyed) triangle side. rho occupies (0, 1/2) and
    // sigma (1/2, 1), so the two curves never share a point.
    struct Crossing {
        int owner;   // canonical side key
        double param;
    };
    auto crossings = [&](const NormalCurve& c, double lo) {
        const int m = c.length();
        std::vector<Crossing> out(m);  // out[i]: crossing after segment i
        std::map<int, int> count;
        for (int i = 0; i < m; ++i) {
            const auto& s = c.segments[i];
            const TriangleSide here{s.tet, s.vertex, s.exit};
            out[i].owner = std::min(side_key(here), side_key(tri.across(here)));
            ++count[out[i].owner];
        }
        std::map<int, int> seen;
        for (int i = 0; i < m; ++i) {
            const int k = ++seen[out[i].owner];
            out[i].param = lo + 0.5 * k / (count[out[i].owner] + 1);
        }
        return out;
    };
    const auto rc = crossings(rho, 0.0);
    const auto sc = crossings(sigma, 0.5);

    // Boundary coordinate in [0,3) of a crossing seen from a side of a triangle.
    auto position = [&](const TriangleSide& s, const Crossing& x) {
        const double t = side_key(s) == x.owner ? x.param : 1.0 - x.param;
        return boundary_arc(s.vertex, s.side) + t;
    };
    auto in_arc = [](double x, double from, double to) {
        auto wrap = [](double d) { return d < 0 ? d + 3.0 : d; };
        return wrap(x - from) < wrap(to - from);
    };

    std::multimap<int, int> sigma_in;  // triangle key -> segment index
    for (int j = 0; j < sigma.length(); ++j)
        sigma_in.insert({triangle_key(sigma.segments[j].tet, sigma.segments[j].vertex), j});

    const int mr = rho.length(), ms = sigma.length();
    int total = 0;
    for (int i = 0; i < mr; ++i) {
        const auto& r = rho.segments[i];
        const double p1 = position({r.tet, r.vertex, r.enter}, rc[(i + mr - 1) % mr]);
        const double p2 = position({r.tet, r.vertex, r.exit}, rc[i]);
        auto [lo, hi] = sigma_in.equal_range(triangle_key(r.tet, r.vertex));
        for (auto it = lo; it != hi; ++it) {
            const int j = it->second;
            const auto& s = sigma.segments[j];
            const double q1 = position({s.tet, s.vertex, s.enter}, sc[(j + ms - 1) % ms]);
            const double q2 = position({s.tet, s.vertex, s.exit}, sc[j]);
            // right of rho is the ccw arc p1 -> p2, left is p2 -> p1
            const bool q1_right = in_arc(q1, p1, p2);
            const bool q2_right = in_arc(q2, p1, p2);
            if (q1_right && !q2_right) ++total;
            if (!q1_right && q2_right) --total;
        }
    }
    return total;
}

DeformationVector leading_trailing_vector(const Triangulation& tri, const NormalCurve& curve)
{
    DeformationVector w = DeformationVector::Zero(tri.coordinate_count());
    for (const auto& s : curve.segments) {
        w[angle_coordinate(s.tet, s.vertex, s.enter)] += 1.0;
        w[angle_coordinate(s.tet, s.vertex, s.exit)] -= 1.0;
    }
    return w;
}

Eigen::VectorXd angular_holonomy_form(const Triangulation& tri, const NormalCurve& curve)
{
    Eigen::VectorXd c = Eigen::VectorXd::Zero(tri.coordinate_count());
    for (const auto& s : curve.segments) {
        const auto cc = cut_corner(s);
        c[angle_coordinate(s.tet, s.vertex, cc.corner)] += cc.epsilon;
    }
    return c;
}

bool visits_triangles_once(const NormalCurve& curve)
{
    std::set<int> seen;
    for (const auto& s : curve.segments)
        if (!seen.insert(triangle_key(s.tet, s.vertex)).second) return false;
    return true;
}

std::optional<std::pair<NormalCurve, NormalCurve>> cut_and_rejoin(const NormalCurve& curve)
{
    const auto& s = curve.segments;
    const int m = curve.length();
    std::map<int, int> first;
    for (int j = 0; j < m; ++j) {
        const int key = triangle_key(s[j].tet, s[j].vertex);
        auto [it, fresh] = first.insert({key, j});
        if (fresh) continue;
        const int i = it->second;
        NormalCurve a{curve.cusp, {}}, b{curve.cusp, {}};
        a.segments.push_back({s[i].tet, s[i].vertex, s[j].enter, s[i].exit});
        for (int k = i + 1; k < j; ++k) a.segments.push_back(s[k]);
        b.segments.push_back({s[i].tet, s[i].vertex, s[i].enter, s[j].exit});
        for (int k = j + 1; k < m + i; ++k) b.segments.push_back(s[k % m]);
        remove_degenerate(a);
        remove_degenerate(b);
        return std::make_pair(std::move(a), std::move(b));
    }
    return std::nullopt;
}

}  // namespace atri
