#include "atri/solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Cholesky>

#include "atri/curves.hpp"

namespace atri
{

namespace
{

constexpr double kPi = std::numbers::pi;
constexpr double kStallImprovement = 1e-15;
constexpr double kBoundaryMargin = 1e-6;
constexpr int kMaxBacktracks = 80;
constexpr double kVolumeNoise = 1e-15;

// Largest alpha keeping p + alpha d inside (thr, pi - thr).
double step_limit(const AngleVector& p, const Eigen::VectorXd& d, double thr)
{
    double a = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < p.size(); ++j) {
        if (d[j] < 0)
            a = std::min(a, (p[j] - thr) / -d[j]);
        else if (d[j] > 0)
            a = std::min(a, (kPi - thr - p[j]) / d[j]);
    }
    return std::max(a, 0.0);
}

struct Trial {
    bool accepted{false};
    double alpha{0.0};
    AngleVector point;
    double volume{0.0};
    double gradient_norm{0.0};
};

Trial line_search(const Eigen::MatrixXd& W, const AngleVector& p, double v0, double g_norm,
                  const Eigen::VectorXd& g, const Eigen::VectorXd& d, const SolveOptions& opts)
{
    Trial out;
    const double slope = g.dot(d);
    if (!(slope > 0)) return out;
    const Eigen::VectorXd dir = W * d;
    // rounding level of a sum of 3n Lobachevsky values
    const double noise = kVolumeNoise * static_cast<double>(p.size()) * std::max(1.0, std::abs(v0));
    double alpha = std::min(1.0, 0.5 * step_limit(p, dir, opts.boundary_threshold));
    for (int k = 0; k < kMaxBacktracks && alpha > 0; ++k, alpha *= opts.backtrack) {
        AngleVector q = p + alpha * dir;
        const double vq = volume(q);
        if (vq > v0 && vq >= v0 + opts.armijo * alpha * slope) {
            out = {true, alpha, std::move(q), vq, 0.0};
            out.gradient_norm = reduced_gradient(W, out.point).cwiseAbs().maxCoeff();
            return out;
        }
        if (vq >= v0 - noise) {
            // below the resolution of V; accept if the gradient still shrinks
            const double gq = reduced_gradient(W, q).cwiseAbs().maxCoeff();
            if (gq < g_norm) {
                out = {true, alpha, std::move(q), vq, gq};
                return out;
            }
        }
    }
    return out;
}

int gcd(int a, int b) { return std::gcd(std::abs(a), std::abs(b)); }

std::vector<Filling> validated_fillings(const Triangulation& tri, const std::vector<Filling>& fillings)
{
    std::vector<bool> seen(tri.cusp_count(), false);
    for (const auto& f : fillings) {
        if (f.cusp < 0 || f.cusp >= tri.cusp_count())
            throw Error("filling refers to missing cusp " + std::to_string(f.cusp));
        if (seen[f.cusp]) throw Error("cusp " + std::to_string(f.cusp) + " filled twice");
        seen[f.cusp] = true;
        if (gcd(f.p, f.q) != 1)
            throw NotCoprime("filling coefficients " + std::to_string(f.p) + "/" + std::to_string(f.q) +
                             " are not coprime");
    }
    return fillings;
}

}  // namespace

std::string to_string(SolveStatus s)
{
    switch (s) {
        case SolveStatus::InteriorCriticalPoint: return "InteriorCriticalPoint";
        case SolveStatus::BoundaryMaximum: return "BoundaryMaximum";
        case SolveStatus::Infeasible: return "Infeasible";
    }
    return "?";
}

Eigen::VectorXd reduced_gradient(const Eigen::MatrixXd& W, const AngleVector& p)
{
    return W.transpose() * volume_gradient(p);
}

Eigen::MatrixXd reduced_hessian(const Eigen::MatrixXd& W, const AngleVector& p)
{
    return W.transpose() * volume_hessian_diagonal(p).asDiagonal() * W;
}

Ascent maximize(const Eigen::MatrixXd& W, const AngleVector& p0, const SolveOptions& opts)
{
    Ascent run;
    run.angles = p0;
    run.volume = volume(p0);
    if (W.cols() == 0) {
        run.gradient_norm = 0.0;
        return run;
    }
    Eigen::VectorXd g = reduced_gradient(W, run.angles);
    run.gradient_norm = g.cwiseAbs().maxCoeff();

    auto finish_stuck = [&](const char* why) {
        if (boundary_margin(run.angles) < kBoundaryMargin) {
            run.status = SolveStatus::BoundaryMaximum;
            return run;
        }
        throw MaxIterations(std::string(why) + " with reduced gradient " + std::to_string(run.gradient_norm),
                            run);
    };

    while (run.gradient_norm >= opts.gradient_tolerance) {
        if (run.iterations >= opts.max_iterations) return finish_stuck("iteration limit reached");

        Trial trial;
        bool newton = true;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(-reduced_hessian(W, run.angles));
        if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
            const Eigen::VectorXd d = ldlt.solve(g);
            if (d.allFinite())
                trial = line_search(W, run.angles, run.volume, run.gradient_norm, g, d, opts);
        }
        if (!trial.accepted) {
            newton = false;
            trial = line_search(W, run.angles, run.volume, run.gradient_norm, g, g, opts);
        }
        if (!trial.accepted) return finish_stuck("line search stalled");

        const double gain = trial.volume - run.volume;
        ++run.iterations;
        run.angles = std::move(trial.point);
        run.volume = trial.volume;
        g = reduced_gradient(W, run.angles);
        run.gradient_norm = g.cwiseAbs().maxCoeff();
        run.history.push_back({run.volume, run.gradient_norm, trial.alpha, newton});

        if (gain < kStallImprovement && run.gradient_norm >= opts.gradient_tolerance &&
            boundary_margin(run.angles) < kBoundaryMargin) {
            run.status = SolveStatus::BoundaryMaximum;
            return run;
        }
    }
    run.status = SolveStatus::InteriorCriticalPoint;
    return run;
}

MetricResiduals verify_metric(const Triangulation& tri, const AngleVector& v,
                              const std::vector<PeripheralPair>& peripheral, const std::vector<Filling>& fillings)
{
    const std::complex<double> two_pi_i{0.0, 2.0 * kPi};
    MetricResiduals r;
    for (int e = 0; e < tri.tet_count(); ++e)
        for (int end = 0; end < 2; ++end)
            r.edge = std::max(r.edge, std::abs(holonomy(edge_link_curve(tri, e, end), v).value() - two_pi_i));
    for (int c = 0; c < static_cast<int>(peripheral.size()); ++c) {
        const auto& pp = peripheral[c];
        const Filling* fill = nullptr;
        for (const auto& f : fillings)
            if (f.cusp == c) fill = &f;
        const auto hm = holonomy(pp.meridian, v).value();
        const auto hl = holonomy(pp.longitude, v).value();
        if (fill) {
            const auto h = static_cast<double>(fill->p) * hm + static_cast<double>(fill->q) * hl;
            r.filling = std::max(r.filling, std::abs(h - two_pi_i));
        } else {
            r.completeness = std::max({r.completeness, std::abs(hm), std::abs(hl)});
        }
    }
    return r;
}

ConstraintSystem dehn_slice(const Triangulation& tri, const ConstraintSystem& cs,
                            const std::vector<PeripheralPair>& peripheral, const Filling& filling)
{
    validated_fillings(tri, {filling});
    const auto& pp = peripheral.at(filling.cusp);
    const Eigen::VectorXd row = filling.p * angular_holonomy_form(tri, pp.meridian) +
                                filling.q * angular_holonomy_form(tri, pp.longitude);
    ConstraintSystem out = cs;
    out.A.conservativeResize(cs.A.rows() + 1, Eigen::NoChange);
    out.A.row(cs.A.rows()) = row.transpose();
    out.b.conservativeResize(cs.b.size() + 1);
    out.b[cs.b.size()] = 2.0 * kPi;
    ++out.slice_count;
    return out;
}

double volume_lower_bound(const Triangulation& tri, const AngleVector& v)
{
    if (v.size() != tri.coordinate_count())
        throw NotFeasible("expected " + std::to_string(tri.coordinate_count()) + " angles, got " +
                          std::to_string(v.size()));
    const auto cs = build_constraints(tri);
    const double res = cs.residual(v);
    if (!(res <= 1e-9)) throw NotFeasible("angle sums miss their targets by " + std::to_string(res));
    for (Eigen::Index j = 0; j < v.size(); ++j)
        if (!(v[j] >= -1e-9 && v[j] <= kPi + 1e-9))
            throw NotFeasible("angle " + std::to_string(j) + " lies outside [0, pi]");
    return volume(v);
}

namespace
{

struct Prepared {
    ConstraintSystem cs;
    std::vector<Filling> fillings;
};

Prepared prepare(const SolveInput& input)
{
    const auto& tri = input.triangulation;
    Prepared p{build_constraints(tri), validated_fillings(tri, input.fillings)};
    for (const auto& f : p.fillings) p.cs = dehn_slice(tri, p.cs, input.peripheral, f);
    rank_and_dimension(p.cs, tri.cusp_count());
    return p;
}

SolveReport run(const SolveInput& input, const Prepared& prep, const AngleVector& start, const SolveOptions& opts)
{
    const auto& tri = input.triangulation;
    SolveReport rep;
    rep.fillings = prep.fillings;
    const auto basis = tangent_basis(tri, prep.cs, input.peripheral, prep.fillings);
    rep.dimension = basis.dimension();
    const auto ascent = maximize(basis.W, start, opts);
    rep.status = ascent.status;
    rep.angles = ascent.angles;
    rep.volume = ascent.volume;
    rep.iterations = ascent.iterations;
    rep.shapes = shapes(rep.angles);
    rep.residuals = verify_metric(tri, rep.angles, input.peripheral, prep.fillings);
    rep.lower_bound = rep.volume;
    rep.bound_caveat = rep.status != SolveStatus::InteriorCriticalPoint || !prep.fillings.empty();
    return rep;
}

}  // namespace

SolveReport solve(const SolveInput& input, const SolveOptions& opts)
{
    const auto prep = prepare(input);
    const auto ip = initial_point(prep.cs);
    if (ip.feasibility != Feasibility::Interior) {
        SolveReport rep;
        rep.status = SolveStatus::Infeasible;
        rep.fillings = prep.fillings;
        rep.thin = ip.feasibility == Feasibility::Thin;
        rep.start_margin = ip.feasibility == Feasibility::Empty ? 0.0 : ip.margin;
        return rep;
    }
    auto rep = run(input, prep, ip.angles, opts);
    rep.start_margin = ip.margin;
    return rep;
}

SolveReport solve_from(const SolveInput& input, const AngleVector& start, const SolveOptions& opts)
{
    const auto prep = prepare(input);
    if (start.size() != prep.cs.coordinate_count() || prep.cs.residual(start) > 1e-9 ||
        boundary_margin(start) <= opts.boundary_threshold)
        throw NotFeasible("start point is not an interior angle structure");
    auto rep = run(input, prep, start, opts);
    rep.start_margin = boundary_margin(start);
    return rep;
}

}  // namespace atri
