#include "atri/geometry.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "atri/errors.hpp"

namespace atri
{

namespace
{

constexpr double kPi = std::numbers::pi;
constexpr int kSeriesTerms = 40;

// a_m = zeta(2m) / (m (2m+1) pi^(2m)), m = 1..kSeriesTerms
const std::array<double, kSeriesTerms + 1>& series_coefficients()
{
    static const auto table = [] {
        std::array<double, kSeriesTerms + 1> a{};
        const double pi2 = kPi * kPi;
        for (int m = 1; m <= kSeriesTerms; ++m) {
            double zeta_over_pi = 0.0;  // zeta(2m) / pi^(2m)
            switch (m) {
                case 1: zeta_over_pi = 1.0 / 6.0; break;
                case 2: zeta_over_pi = 1.0 / 90.0; break;
                case 3: zeta_over_pi = 1.0 / 945.0; break;
                case 4: zeta_over_pi = 1.0 / 9450.0; break;
                default: {
                    // direct sum, smallest terms first; tail beyond 64 is < 1e-17
                    double zeta = 0.0;
                    for (int k = 64; k >= 1; --k) zeta += std::pow(static_cast<double>(k), -2.0 * m);
                    zeta_over_pi = zeta / std::pow(pi2, m);
                }
            }
            a[m] = zeta_over_pi / (m * (2.0 * m + 1.0));
        }
        return a;
    }();
    return table;
}

// Clockwise successor of an edge pair at any ideal vertex: 0 -> 2 -> 1 -> 0.
constexpr int cw_next(int pair) { return pair == 0 ? 2 : pair - 1; }

void require_nondegenerate(double angle, int index)
{
    if (!(angle > kDegenerateAngle && angle < kPi - kDegenerateAngle))
        throw DegenerateTetrahedron("angle " + std::to_string(index) + " = " +
                                    std::to_string(angle) + " is degenerate");
}

}  // namespace

double lobachevsky(double x)
{
    double r = std::remainder(x, kPi);  // now |r| <= pi/2
    if (r == 0.0) return 0.0;
    const auto& a = series_coefficients();
    const double r2 = r * r;
    double sum = 0.0;
    double power = r;  // r^(2m+1)
    for (int m = 1; m <= kSeriesTerms; ++m) {
        power *= r2;
        const double term = a[m] * power;
        sum += term;
        if (std::abs(term) < 1e-18) break;
    }
    return r - r * std::log(std::abs(2.0 * r)) + sum;
}

std::complex<double> shape_parameter(double alpha, double beta, double gamma)
{
    require_nondegenerate(alpha, 0);
    require_nondegenerate(beta, 1);
    require_nondegenerate(gamma, 2);
    return std::polar(std::sin(gamma) / std::sin(beta), alpha);
}

std::vector<std::complex<double>> shapes(const AngleVector& v)
{
    std::vector<std::complex<double>> z(v.size());
    for (Eigen::Index t = 0; 3 * t < v.size(); ++t) {
        for (int p = 0; p < 3; ++p) {
            const int b = cw_next(p), g = cw_next(b);
            const Eigen::Index j = 3 * t + p;
            for (int q : {p, b, g}) require_nondegenerate(v[3 * t + q], static_cast<int>(3 * t + q));
            z[j] = shape_parameter(v[j], v[3 * t + b], v[3 * t + g]);
        }
    }
    return z;
}

Holonomy holonomy(const NormalCurve& curve, const AngleVector& v)
{
    Holonomy h;
    for (const auto& s : curve.segments) {
        const auto cc = cut_corner(s);
        const int pair = edge_pair(s.vertex, cc.corner);
        const int base = 3 * s.tet;
        const int jb = base + cw_next(pair);
        const int jg = base + cw_next(cw_next(pair));
        for (int j : {base + pair, jb, jg}) require_nondegenerate(v[j], j);
        h.re += cc.epsilon * (std::log(std::sin(v[jg])) - std::log(std::sin(v[jb])));
        h.im += cc.epsilon * v[base + pair];
    }
    return h;
}

double volume(const AngleVector& v)
{
    double total = 0.0;
    for (Eigen::Index j = 0; j < v.size(); ++j) total += lobachevsky(v[j]);
    return total;
}

Eigen::VectorXd volume_gradient(const AngleVector& v)
{
    Eigen::VectorXd g(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        require_nondegenerate(v[j], static_cast<int>(j));
        g[j] = -std::log(std::sin(v[j]));
    }
    return g;
}

Eigen::VectorXd volume_hessian_diagonal(const AngleVector& v)
{
    Eigen::VectorXd h(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        require_nondegenerate(v[j], static_cast<int>(j));
        h[j] = -1.0 / std::tan(v[j]);
    }
    return h;
}

double directional_derivative(const AngleVector& v, const DeformationVector& w)
{
    return volume_gradient(v).dot(w);
}

double hessian_quadratic_form(const AngleVector& v, const DeformationVector& w)
{
    return volume_hessian_diagonal(v).dot(w.cwiseProduct(w));
}

double boundary_margin(const AngleVector& v)
{
    double m = kPi;
    for (Eigen::Index j = 0; j < v.size(); ++j) m = std::min({m, v[j], kPi - v[j]});
    return m;
}

}  // namespace atri
