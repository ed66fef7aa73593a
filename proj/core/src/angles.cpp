#include "atri/angles.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "atri/errors.hpp"
#include "atri/lp.hpp"

namespace atri
{

namespace
{
constexpr double kPi = std::numbers::pi;
}

double ConstraintSystem::residual(const AngleVector& v) const
{
    return (A * v - b).cwiseAbs().maxCoeff();
}

ConstraintSystem build_constraints(const Triangulation& tri)
{
    const int n = tri.tet_count();
    ConstraintSystem cs;
    cs.tet_count = n;
    cs.A = Eigen::MatrixXd::Zero(2 * n, 3 * n);
    cs.b.resize(2 * n);
    for (int t = 0; t < n; ++t) {
        cs.A.block(t, 3 * t, 1, 3).setOnes();
        cs.b[t] = kPi;
    }
    for (const auto& ec : tri.edge_classes()) {
        for (const auto& m : ec.members) cs.A(n + ec.id, angle_coordinate(m.tet, m.tail, m.head)) += 1.0;
        cs.b[n + ec.id] = 2.0 * kPi;
    }
    return cs;
}

int numerical_rank(const Eigen::MatrixXd& m)
{
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > kRankTolerance * s[0]) ++r;
    return r;
}

RankReport rank_and_dimension(const ConstraintSystem& cs, int cusp_count)
{
    RankReport rep;
    rep.rank = numerical_rank(cs.A);
    rep.dimension = cs.coordinate_count() - rep.rank;
    const int expected = 2 * cs.tet_count - cusp_count + cs.slice_count;
    if (rep.rank != expected)
        throw RankAnomaly("constraint rank " + std::to_string(rep.rank) + ", expected " +
                          std::to_string(expected));
    return rep;
}

std::vector<Eigen::VectorXd> cusp_vectors(const Triangulation& tri)
{
    const int n = tri.tet_count();
    std::vector<Eigen::VectorXd> out(tri.cusp_count(), Eigen::VectorXd::Zero(2 * n));
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v) out[tri.cusp_of(t, v)][t] -= 1.0;
    for (const auto& ec : tri.edge_classes()) {
        const auto& m = ec.members.front();
        out[tri.cusp_of(m.tet, m.tail)][n + ec.id] += 1.0;
        out[tri.cusp_of(m.tet, m.head)][n + ec.id] += 1.0;
    }
    return out;
}

InitialPoint initial_point(const ConstraintSystem& cs)
{
    // v = t + s, s >= 0, s + 2t + r = pi, r >= 0, t = tp - tm.
    const int rows = static_cast<int>(cs.A.rows());
    const int m = cs.coordinate_count();
    const int nv = 2 * m + 2;
    const int tp = 2 * m, tm = 2 * m + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows + m, nv);
    Eigen::VectorXd b(rows + m);
    const Eigen::VectorXd row_sums = cs.A.rowwise().sum();
    A.block(0, 0, rows, m) = cs.A;
    A.col(tp).head(rows) = row_sums;
    A.col(tm).head(rows) = -row_sums;
    b.head(rows) = cs.b;
    for (int j = 0; j < m; ++j) {
        A(rows + j, j) = 1.0;
        A(rows + j, m + j) = 1.0;
        A(rows + j, tp) = 2.0;
        A(rows + j, tm) = -2.0;
        b[rows + j] = kPi;
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(nv);
    c[tp] = 1.0;
    c[tm] = -1.0;

    const auto res = lp::maximize(c, A, b);
    InitialPoint ip;
    if (res.status == lp::Status::Infeasible) {
        ip.feasibility = Feasibility::Empty;
        ip.margin = -std::numeric_limits<double>::infinity();
        return ip;
    }
    if (res.status == lp::Status::Unbounded) throw LPNumericalFailure("margin program is unbounded");

    ip.margin = res.x[tp] - res.x[tm];
    ip.angles = res.x.head(m).array() + ip.margin;
    if (ip.margin > kMarginFloor)
        ip.feasibility = Feasibility::Interior;
    else if (ip.margin > 0.0)
        ip.feasibility = Feasibility::Thin;
    else
        ip.feasibility = Feasibility::Empty;
    if (cs.residual(ip.angles) > 1e-9)
        throw LPNumericalFailure("simplex point violates the constraints by " +
                                 std::to_string(cs.residual(ip.angles)));
    return ip;
}

std::string to_string(Provenance p)
{
    switch (p) {
        case Provenance::Homology: return "homology";
        case Provenance::Filling: return "filling";
        case Provenance::EdgeLink: return "edge-link";
        case Provenance::NullspaceCompletion: return "nullspace";
    }
    return "?";
}

TangentBasis tangent_basis(const Triangulation& tri, const ConstraintSystem& cs,
                           const std::vector<PeripheralPair>& peripheral,
                           const std::vector<Filling>& fillings)
{
    const int m = cs.coordinate_count();
    const int expected = m - 2 * tri.tet_count() + tri.cusp_count() - cs.slice_count;

    std::vector<std::pair<Eigen::VectorXd, Provenance>> candidates;
    for (int c = 0; c < tri.cusp_count(); ++c) {
        const auto& pp = peripheral.at(c);
        const Eigen::VectorXd wm = leading_trailing_vector(tri, pp.meridian);
        const Eigen::VectorXd wl = leading_trailing_vector(tri, pp.longitude);
        const Filling* fill = nullptr;
        for (const auto& f : fillings)
            if (f.cusp == c) fill = &f;
        if (fill) {
            candidates.emplace_back(fill->p * wm + fill->q * wl, Provenance::Filling);
        } else {
            candidates.emplace_back(wm, Provenance::Homology);
            candidates.emplace_back(wl, Provenance::Homology);
        }
    }
    for (int e = 0; e < tri.tet_count(); ++e)
        candidates.emplace_back(leading_trailing_vector(tri, edge_link_curve(tri, e, 0)),
                                Provenance::EdgeLink);

    TangentBasis basis;
    std::vector<Eigen::VectorXd> chosen;
    Eigen::MatrixXd Q(m, 0);  // orthonormal span of chosen vectors
    auto try_add = [&](const Eigen::VectorXd& w, Provenance prov) {
        const double norm = w.norm();
        if (norm == 0.0) return false;
        Eigen::VectorXd r = w;
        for (int pass = 0; pass < 2; ++pass) r -= Q * (Q.transpose() * r);
        if (r.norm() <= 1e-10 * norm) return false;
        Q.conservativeResize(m, Q.cols() + 1);
        Q.col(Q.cols() - 1) = r / r.norm();
        chosen.push_back(w);
        basis.provenance.push_back(prov);
        return true;
    };
    for (const auto& [w, prov] : candidates) {
        if (static_cast<int>(chosen.size()) == expected) break;
        if ((cs.A * w).cwiseAbs().maxCoeff() > 1e-9) continue;
        try_add(w, prov);
    }
    if (static_cast<int>(chosen.size()) < expected) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(cs.A, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        const int rank = numerical_rank(cs.A);
        for (int j = rank; j < m && static_cast<int>(chosen.size()) < expected; ++j) {
            (void)s;
            if (try_add(svd.matrixV().col(j), Provenance::NullspaceCompletion))
                basis.completed_numerically = true;
        }
    }
    if (static_cast<int>(chosen.size()) != expected)
        throw SpanDeficiency("tangent basis has " + std::to_string(chosen.size()) +
                             " vectors, expected " + std::to_string(expected));
    basis.W.resize(m, expected);
    for (int j = 0; j < expected; ++j) basis.W.col(j) = chosen[j];
    return basis;
}

std::vector<PeripheralPair> peripheral_curves(const Triangulation& tri,
                                              const std::vector<std::optional<PeripheralPair>>& supplied)
{
    std::vector<PeripheralPair> out;
    for (int c = 0; c < tri.cusp_count(); ++c) {
        if (c < static_cast<int>(supplied.size()) && supplied[c]) {
            out.push_back(*supplied[c]);
            continue;
        }
        auto [mu, lambda] = homology_basis(tri, c);
        out.push_back({std::move(mu), std::move(lambda), false});
    }
    return out;
}

}  // namespace atri
