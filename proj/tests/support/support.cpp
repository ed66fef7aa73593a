#include "support.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>

#include <Eigen/LU>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace atri::testing
{

namespace
{

struct UnionFind {
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void join(int a, int b) { parent[find(a)] = find(b); }
    std::vector<int> labels()
    {
        std::vector<int> out(parent.size());
        for (std::size_t i = 0; i < parent.size(); ++i) out[i] = find(static_cast<int>(i));
        return out;
    }
    std::vector<int> parent;
};

int slot(int a, int b)
{
    if (a > b) std::swap(a, b);
    static const int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[a][b];
}

}  // namespace

std::string fixture_path(const std::string& name) { return std::string(ATRI_FIXTURE_DIR) + "/" + name + ".atri"; }

NativeDocument load_fixture(const std::string& name) { return read_document(fixture_path(name)); }

const std::vector<std::string>& feasible_fixtures()
{
    static const std::vector<std::string> names{"fig8", "sister", "m006", "whitehead"};
    return names;
}

const std::vector<std::string>& all_fixtures()
{
    static const std::vector<std::string> names{"fig8", "sister", "m006", "whitehead", "degenerate"};
    return names;
}

std::vector<int> edge_partition_oracle(const Triangulation& tri)
{
    UnionFind uf(6 * tri.tet_count());
    for (int t = 0; t < tri.tet_count(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b)
                    if (a != f && b != f) uf.join(6 * t + slot(a, b), 6 * g.neighbor + slot(g.perm[a], g.perm[b]));
        }
    return uf.labels();
}

std::vector<int> cusp_partition_oracle(const Triangulation& tri)
{
    UnionFind uf(4 * tri.tet_count());
    for (int t = 0; t < tri.tet_count(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            for (int v = 0; v < 4; ++v)
                if (v != f) uf.join(4 * t + v, 4 * g.neighbor + g.perm[v]);
        }
    return uf.labels();
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b)
{
    if (a.size() != b.size()) return false;
    std::map<int, int> ab, ba;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [ia, fresh_a] = ab.emplace(a[i], b[i]);
        auto [ib, fresh_b] = ba.emplace(b[i], a[i]);
        if (ia->second != b[i] || ib->second != a[i]) return false;
    }
    return true;
}

NormalCurve random_curve(const Triangulation& tri, int cusp, std::mt19937_64& rng)
{
    const auto& verts = tri.cusp_triangulation(cusp).triangles;
    const auto start = verts[std::uniform_int_distribution<std::size_t>(0, verts.size() - 1)(rng)];
    std::vector<int> corners;
    for (int u = 0; u < 4; ++u)
        if (u != start.vertex) corners.push_back(u);
    int enter = corners[std::uniform_int_distribution<int>(0, 2)(rng)];

    std::map<std::array<int, 3>, int> seen;
    std::vector<Segment> walk;
    int tet = start.tet, vertex = start.vertex;
    while (true) {
        const std::array<int, 3> state{tet, vertex, enter};
        if (auto it = seen.find(state); it != seen.end())
            return {cusp, std::vector<Segment>(walk.begin() + it->second, walk.end())};
        seen[state] = static_cast<int>(walk.size());
        int exits[2], k = 0;
        for (int u = 0; u < 4; ++u)
            if (u != vertex && u != enter) exits[k++] = u;
        const int exit = exits[std::uniform_int_distribution<int>(0, 1)(rng)];
        walk.push_back({tet, vertex, enter, exit});
        const auto next = tri.across({tet, vertex, exit});
        tet = next.tet;
        vertex = next.vertex;
        enter = next.side;
    }
}

std::vector<NormalCurve> constructed_curves(const Triangulation& tri, const std::vector<PeripheralPair>& per,
                                            int cusp)
{
    std::vector<NormalCurve> out;
    for (int e = 0; e < tri.tet_count(); ++e)
        for (int end = 0; end < 2; ++end) {
            auto c = edge_link_curve(tri, e, end);
            if (c.cusp == cusp) out.push_back(std::move(c));
        }
    auto [mu, lambda] = homology_basis(tri, cusp);
    out.push_back(std::move(mu));
    out.push_back(std::move(lambda));
    out.push_back(per.at(cusp).meridian);
    out.push_back(per.at(cusp).longitude);
    return out;
}

AngleVector random_angle_structure(const Triangulation& tri, std::mt19937_64& rng, double min_margin)
{
    const auto cs = build_constraints(tri);
    const auto ip = initial_point(cs);
    const auto basis = tangent_basis(tri, cs, peripheral_curves(tri));
    std::normal_distribution<double> gauss;
    Eigen::VectorXd c(basis.dimension());
    for (auto& x : c) x = gauss(rng);
    const Eigen::VectorXd dir = basis.W * c;
    double s_max = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < dir.size(); ++j) {
        if (dir[j] < 0) s_max = std::min(s_max, (ip.angles[j] - min_margin) / -dir[j]);
        if (dir[j] > 0) s_max = std::min(s_max, (std::numbers::pi - min_margin - ip.angles[j]) / dir[j]);
    }
    const double s = std::uniform_real_distribution<double>(0.0, std::max(s_max, 0.0))(rng);
    return ip.angles + s * dir;
}

double lobachevsky_quadrature(double x)
{
    if (x == 0.0) return 0.0;
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto f = [](double t) {
        const double s = std::abs(2.0 * std::sin(t));
        return s == 0.0 ? 0.0 : -std::log(s);
    };
    // split at the interior zeros of sin so every singularity sits at an endpoint
    const double pi = std::numbers::pi;
    double total = 0.0, a = 0.0;
    const double sign = x > 0 ? 1.0 : -1.0;
    const double target = std::abs(x);
    while (a < target) {
        const double b = std::min(target, a + pi);
        total += integrator.integrate([&](double t) { return f(sign * t); }, a, b, 1e-15);
        a = b;
    }
    return sign * total;
}

std::optional<double> lp_bruteforce(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b)
{
    const int m = static_cast<int>(A.rows()), nv = static_cast<int>(A.cols());
    std::optional<double> best;
    std::vector<int> pick(m);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == m) {
            Eigen::MatrixXd B(m, m);
            for (int i = 0; i < m; ++i) B.col(i) = A.col(pick[i]);
            Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
            if (!lu.isInvertible()) return;
            const Eigen::VectorXd xb = lu.solve(b);
            if (xb.minCoeff() < -1e-9) return;
            double obj = 0.0;
            for (int i = 0; i < m; ++i) obj += c[pick[i]] * xb[i];
            if (!best || obj > *best) best = obj;
            return;
        }
        for (int j = start; j < nv; ++j) {
            pick[depth] = j;
            rec(j + 1, depth + 1);
        }
    };
    rec(0, 0);
    return best;
}

}  // namespace atri::testing
