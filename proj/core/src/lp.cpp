#include "atri/lp.hpp"

#include <cmath>
#include <vector>

#include "atri/errors.hpp"

namespace atri::lp
{

namespace
{

constexpr double kPivotEps = 1e-11;

class Tableau
{
public:
    Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b)
        : m_{static_cast<int>(A.rows())}, nv_{static_cast<int>(A.cols())},
          t_(A.rows() + 1, A.cols() + A.rows() + 1), basis_(A.rows()), active_(A.rows(), true)
    {
        t_.setZero();
        for (int i = 0; i < m_; ++i) {
            const double s = b[i] < 0 ? -1.0 : 1.0;
            t_.row(i).head(nv_) = s * A.row(i);
            t_(i, nv_ + i) = 1.0;
            t_(i, rhs()) = s * b[i];
            basis_[i] = nv_ + i;
        }
        budget_ = 50 * (m_ + nv_ + 10);
    }

    int rhs() const { return nv_ + m_; }

    // Phase one: maximize -(sum of artificials). Returns the optimum.
    double phase_one()
    {
        t_.row(m_).setZero();
        for (int i = 0; i < m_; ++i) {
            t_.row(m_).head(nv_) -= t_.row(i).head(nv_);
            t_(m_, rhs()) -= t_(i, rhs());
        }
        run(nv_ + m_);
        return t_(m_, rhs());
    }

    // Pivot zero-level artificials out of the basis; drop rows that cannot be.
    void expel_artificials()
    {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < nv_) continue;
            int col = -1;
            for (int j = 0; j < nv_; ++j) {
                if (std::abs(t_(i, j)) > 1e-9) {
                    col = j;
                    break;
                }
            }
            if (col < 0)
                active_[i] = false;
            else
                pivot(i, col);
        }
    }

    bool phase_two(const Eigen::VectorXd& c)
    {
        t_.row(m_).setZero();
        for (int j = 0; j < nv_; ++j) t_(m_, j) = -c[j];
        for (int i = 0; i < m_; ++i) {
            if (!active_[i]) continue;
            const double cb = basis_[i] < nv_ ? c[basis_[i]] : 0.0;
            if (cb != 0.0) t_.row(m_) += cb * t_.row(i);
        }
        return run(nv_);
    }

    Eigen::VectorXd solution() const
    {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(nv_);
        for (int i = 0; i < m_; ++i)
            if (active_[i] && basis_[i] < nv_) x[basis_[i]] = t_(i, rhs());
        return x;
    }

    double objective() const { return t_(m_, rhs()); }

private:
    // Returns false on unboundedness.
    bool run(int allowed_cols)
    {
        while (true) {
            int enter = -1;
            for (int j = 0; j < allowed_cols; ++j) {
                if (t_(m_, j) < -1e-10) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            double best = 0.0;
            for (int i = 0; i < m_; ++i) {
                if (!active_[i] || t_(i, enter) <= kPivotEps) continue;
                const double ratio = t_(i, rhs()) / t_(i, enter);
                if (leave < 0 || ratio < best - 1e-14 ||
                    (ratio <= best + 1e-14 && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
            if (--budget_ < 0) throw LPNumericalFailure("simplex pivot budget exhausted");
        }
    }

    void pivot(int row, int col)
    {
        t_.row(row) /= t_(row, col);
        for (int i = 0; i <= m_; ++i) {
            if (i == row) continue;
            const double f = t_(i, col);
            if (f != 0.0) t_.row(i) -= f * t_.row(row);
        }
        basis_[row] = col;
        // keep rhs of feasible rows non-negative against round-off
        for (int i = 0; i < m_; ++i)
            if (t_(i, rhs()) < 0 && t_(i, rhs()) > -1e-12) t_(i, rhs()) = 0.0;
    }

    int m_;
    int nv_;
    Eigen::MatrixXd t_;
    std::vector<int> basis_;
    std::vector<bool> active_;
    int budget_;
};

}  // namespace

Result maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b)
{
    Tableau tab(A, b);
    const double scale = 1.0 + b.cwiseAbs().sum();
    Result r;
    if (tab.phase_one() < -1e-9 * scale) {
        r.status = Status::Infeasible;
        return r;
    }
    tab.expel_artificials();
    if (!tab.phase_two(c)) {
        r.status = Status::Unbounded;
        return r;
    }
    r.status = Status::Optimal;
    r.x = tab.solution();
    r.objective = c.dot(r.x);
    return r;
}

}  // namespace atri::lp
