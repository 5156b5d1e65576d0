#include "uavcache/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "uavcache/errors.hpp"

namespace uavcache {
namespace {

constexpr double kTol = 1e-9;

/* Tableau simplex over rows [0,m) with the objective in row m. Column layout:
 * structural + slack + artificial variables, rhs in the last column. basis[i]
 * holds the variable occupying row i. Entering column: most negative reduced
 * cost, lowest index on ties; after stall_limit iterations falls back to
 * Bland's rule (first negative index) which cannot cycle. Ratio test breaks
 * ties toward the lowest basis variable. */
class Tableau {
  public:
    Tableau(Eigen::MatrixXd tab, std::vector<int> basis, int num_real)
        : t_(std::move(tab)), basis_(std::move(basis)), num_real_(num_real) {}

    // Runs simplex on objective in the last row. Returns false on unbounded.
    bool iterate() {
        const int m = static_cast<int>(t_.rows()) - 1;
        const int ncols = static_cast<int>(t_.cols()) - 1;
        const long stall_limit = 500 + 4L * (m + ncols);
        const long hard_limit = 64L * (m + ncols) + 200000;
        for (long it = 0; it < hard_limit; ++it) {
            const bool bland = it >= stall_limit;
            int enter = -1;
            double best = -kTol;
            for (int j = 0; j < ncols; ++j) {
                const double rc = t_(m, j);
                if (rc < (bland ? -kTol : best)) {
                    enter = j;
                    if (bland) break;
                    best = rc;
                }
            }
            if (enter < 0) return true;  // optimal

            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                const double a = t_(i, enter);
                if (a <= kTol) continue;
                const double ratio = t_(i, ncols) / a;
                if (ratio < best_ratio - kTol ||
                    (ratio < best_ratio + kTol &&
                     (leave < 0 || basis_[i] < basis_[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
            if (leave < 0) return false;  // unbounded direction
            pivot(leave, enter);
        }
        throw std::runtime_error("simplex iteration limit exceeded");
    }

    void pivot(int row, int col) {
        t_.row(row) /= t_(row, col);
        t_(row, col) = 1.0;  // kill roundoff on the pivot itself
        for (int i = 0; i < t_.rows(); ++i) {
            if (i == row) continue;
            const double f = t_(i, col);
            if (f == 0.0) continue;
            t_.row(i) -= f * t_.row(row);
            t_(i, col) = 0.0;
        }
        basis_[row] = col;
    }

    Eigen::MatrixXd& tab() { return t_; }
    std::vector<int>& basis() { return basis_; }
    int num_real() const { return num_real_; }

  private:
    Eigen::MatrixXd t_;
    std::vector<int> basis_;
    int num_real_;
};

}  // namespace

LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& b) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (c.size() != n || b.size() != m)
        throw ContractError("solve_lp: dimension mismatch");

    // Count artificials: one per row with negative rhs (slack can't be basic).
    int na = 0;
    for (int i = 0; i < m; ++i)
        if (b(i) < 0) ++na;

    const int ncols = n + m + na;  // structural | slack | artificial
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, ncols + 1);
    std::vector<int> basis(m);
    int ai = 0;
    for (int i = 0; i < m; ++i) {
        if (b(i) >= 0) {
            t.block(i, 0, 1, n) = A.row(i);
            t(i, n + i) = 1.0;
            t(i, ncols) = b(i);
            basis[i] = n + i;
        } else {
            t.block(i, 0, 1, n) = -A.row(i);
            t(i, n + i) = -1.0;
            t(i, n + m + ai) = 1.0;
            t(i, ncols) = -b(i);
            basis[i] = n + m + ai;
            ++ai;
        }
    }

    Tableau tab(std::move(t), std::move(basis), n);
    Eigen::MatrixXd& T = tab.tab();

    if (na > 0) {
        // Phase 1: minimize the sum of artificials, priced out over the
        // rows where they start basic.
        T.row(m).setZero();
        T.block(m, n + m, 1, na).setOnes();
        for (int i = 0; i < m; ++i)
            if (tab.basis()[i] >= n + m) T.row(m) -= T.row(i);
        if (!tab.iterate())
            throw std::runtime_error("phase-1 objective unbounded");
        const double phase1 = -T(m, ncols);
        if (phase1 > 1e-7) return {LpStatus::Infeasible, {}, 0.0};

        // Drive remaining artificials out of the basis; a row with no
        // eligible pivot is redundant and can stay as-is (its rhs is ~0).
        for (int i = 0; i < m; ++i) {
            if (tab.basis()[i] < n + m) continue;
            for (int j = 0; j < n + m; ++j) {
                if (std::abs(T(i, j)) > 1e-7) {
                    tab.pivot(i, j);
                    break;
                }
            }
        }
        // Disable artificial columns for phase 2.
        T.block(0, n + m, m + 1, na).setZero();
        for (int i = 0; i < m; ++i)
            if (tab.basis()[i] >= n + m) T(i, ncols) = 0.0;
    }

    // Phase 2 objective, priced out over the current basis.
    T.row(m).setZero();
    T.block(m, 0, 1, n) = c.transpose();
    for (int i = 0; i < m; ++i) {
        const int bv = tab.basis()[i];
        if (bv < n && T(m, bv) != 0.0) T.row(m) -= T(m, bv) * T.row(i);
        T(m, bv) = 0.0;
    }
    if (!tab.iterate()) return {LpStatus::Unbounded, {}, 0.0};

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i)
        if (tab.basis()[i] < n) x(tab.basis()[i]) = T(i, ncols);
    return {LpStatus::Optimal, x, c.dot(x)};
}

LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& b, const Eigen::VectorXd& lo,
                  const Eigen::VectorXd& hi) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (lo.size() != n || hi.size() != n)
        throw ContractError("solve_lp: bound dimension mismatch");
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(lo(j)))
            throw ContractError("solve_lp: lower bounds must be finite");
        if (hi(j) < lo(j) - kTol) return {LpStatus::Infeasible, {}, 0.0};
    }

    // Substitute x = lo + y, y >= 0; finite upper bounds become extra rows.
    int nub = 0;
    for (int j = 0; j < n; ++j)
        if (std::isfinite(hi(j))) ++nub;
    Eigen::MatrixXd As(m + nub, n);
    Eigen::VectorXd bs(m + nub);
    As.topRows(m) = A;
    bs.head(m) = b - A * lo;
    int r = m;
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(hi(j))) continue;
        As.row(r).setZero();
        As(r, j) = 1.0;
        bs(r) = hi(j) - lo(j);
        ++r;
    }
    LpResult res = solve_lp(c, As, bs);
    if (res.status != LpStatus::Optimal) return res;
    res.x += lo;
    res.objective = c.dot(res.x);
    return res;
}

}  // namespace uavcache
