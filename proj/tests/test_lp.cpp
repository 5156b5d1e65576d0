#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "uavcache/lp.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;
using uavcache::LpResult;
using uavcache::LpStatus;

namespace {

struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    double uniform(double a, double b) {
        return a + (b - a) * ((next() >> 11) * 0x1.0p-53);
    }
};

// Independent oracle: every vertex of {Ax <= b, x >= 0} is the intersection
// of n active constraints, so enumerate all n-subsets of the stacked system,
// solve, filter by feasibility, and take the best objective.
double vertex_enum_min(const VectorXd& c, const MatrixXd& A,
                       const VectorXd& b) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    MatrixXd G(m + n, n);
    VectorXd h(m + n);
    G.topRows(m) = A;
    h.head(m) = b;
    G.bottomRows(n) = -MatrixXd::Identity(n, n);
    h.tail(n).setZero();

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> idx(n);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == n) {
            MatrixXd S(n, n);
            VectorXd r(n);
            for (int i = 0; i < n; ++i) {
                S.row(i) = G.row(idx[i]);
                r(i) = h(idx[i]);
            }
            Eigen::FullPivLU<MatrixXd> lu(S);
            if (!lu.isInvertible()) return;
            VectorXd x = lu.solve(r);
            if (((G * x - h).array() > 1e-7).any()) return;
            best = std::min(best, c.dot(x));
            return;
        }
        for (int i = start; i < m + n; ++i) {
            idx[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return best;
}

}  // namespace

TEST_CASE("one-variable programs") {
    SUBCASE("min x subject to x >= 5") {
        VectorXd c(1), b(1);
        MatrixXd A(1, 1);
        c << 1;
        A << -1;  // -x <= -5
        b << -5;
        LpResult r = uavcache::solve_lp(c, A, b);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.x(0) == doctest::Approx(5.0));
        CHECK(r.objective == doctest::Approx(5.0));
    }
    SUBCASE("infeasible: x <= -1 with x >= 0") {
        VectorXd c(1), b(1);
        MatrixXd A(1, 1);
        c << 1;
        A << 1;
        b << -1;
        CHECK(uavcache::solve_lp(c, A, b).status == LpStatus::Infeasible);
    }
    SUBCASE("unbounded: min -x, no constraints") {
        VectorXd c(1);
        MatrixXd A(0, 1);
        VectorXd b(0);
        c << -1;
        CHECK(uavcache::solve_lp(c, A, b).status == LpStatus::Unbounded);
    }
}

TEST_CASE("two-variable programs solved by hand") {
    SUBCASE("min -x - 2y, x + 2y <= 2, 3x + y <= 3") {
        VectorXd c(2), b(2);
        MatrixXd A(2, 2);
        c << -1, -2;
        A << 1, 2, 3, 1;
        b << 2, 3;
        LpResult r = uavcache::solve_lp(c, A, b);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.objective == doctest::Approx(-2.0));
    }
    SUBCASE("min x + y, x + y >= 3, x - y >= -1") {
        // Optimum anywhere on x + y = 3; objective value is unique.
        VectorXd c(2), b(2);
        MatrixXd A(2, 2);
        c << 1, 1;
        A << -1, -1, -1, 1;
        b << -3, 1;
        LpResult r = uavcache::solve_lp(c, A, b);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.objective == doctest::Approx(3.0));
        CHECK(r.x(0) + r.x(1) == doctest::Approx(3.0));
        CHECK(r.x(0) - r.x(1) >= -1.0 - 1e-9);
    }
    SUBCASE("equality emulated by opposing inequalities") {
        // min 2x + y, x + y = 4, x <= 3
        VectorXd c(2), b(3);
        MatrixXd A(3, 2);
        c << 2, 1;
        A << 1, 1, -1, -1, 1, 0;
        b << 4, -4, 3;
        LpResult r = uavcache::solve_lp(c, A, b);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.x(0) == doctest::Approx(0.0));
        CHECK(r.x(1) == doctest::Approx(4.0));
        CHECK(r.objective == doctest::Approx(4.0));
    }
}

TEST_CASE("bounded variables") {
    SUBCASE("upper bound caps the ray") {
        VectorXd c(1), lo(1), hi(1);
        MatrixXd A(0, 1);
        VectorXd b(0);
        c << -1;
        lo << 0;
        hi << 3;
        LpResult r = uavcache::solve_lp(c, A, b, lo, hi);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.x(0) == doctest::Approx(3.0));
    }
    SUBCASE("nonzero lower bound shifts the solution") {
        VectorXd c(1), lo(1), hi(1);
        MatrixXd A(0, 1);
        VectorXd b(0);
        c << 1;
        lo << 2;
        hi << 5;
        LpResult r = uavcache::solve_lp(c, A, b, lo, hi);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.x(0) == doctest::Approx(2.0));
        CHECK(r.objective == doctest::Approx(2.0));
    }
    SUBCASE("crossed bounds are infeasible") {
        VectorXd c(1), lo(1), hi(1);
        MatrixXd A(0, 1);
        VectorXd b(0);
        c << 1;
        lo << 2;
        hi << 1;
        CHECK(uavcache::solve_lp(c, A, b, lo, hi).status ==
              LpStatus::Infeasible);
    }
}

TEST_CASE("degenerate and redundant systems") {
    SUBCASE("duplicated rows") {
        VectorXd c(2), b(3);
        MatrixXd A(3, 2);
        c << -1, -1;
        A << 1, 0, 1, 0, 0, 1;
        b << 1, 1, 1;
        LpResult r = uavcache::solve_lp(c, A, b);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.objective == doctest::Approx(-2.0));
    }
    SUBCASE("degenerate vertex at the origin") {
        VectorXd c(2), b(3);
        MatrixXd A(3, 2);
        c << -1, 0;
        A << 1, 1, 1, -1, 1, 0;
        b << 0, 0, 0;
        LpResult r = uavcache::solve_lp(c, A, b);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.objective == doctest::Approx(0.0));
    }
}

TEST_CASE("random programs match vertex enumeration") {
    Rng rng(20240917);
    int solved = 0;
    for (int trial = 0; trial < 120; ++trial) {
        int n = 2 + static_cast<int>(rng.next() % 2);  // 2 or 3 vars
        int m = 2 + static_cast<int>(rng.next() % 5);  // 2..6 rows
        MatrixXd A(m + n, n);
        VectorXd b(m + n), c(n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = rng.uniform(-1, 1);
        // Interior point x0 >= 0 plus slack keeps the system feasible; the
        // box rows keep it bounded regardless of the random objective.
        VectorXd x0(n);
        for (int j = 0; j < n; ++j) x0(j) = rng.uniform(0, 2);
        for (int i = 0; i < m; ++i)
            b(i) = A.row(i).dot(x0) + rng.uniform(0.01, 1.0);
        A.bottomRows(n) = MatrixXd::Identity(n, n);
        for (int j = 0; j < n; ++j) b(m + j) = rng.uniform(2.5, 6.0);
        for (int j = 0; j < n; ++j) c(j) = rng.uniform(-2, 2);

        LpResult r = uavcache::solve_lp(c, A, b);
        REQUIRE(r.status == LpStatus::Optimal);
        double ref = vertex_enum_min(c, A, b);
        CHECK(r.objective ==
              doctest::Approx(ref).epsilon(1e-6).scale(std::abs(ref) + 1.0));
        CHECK((r.x.array() >= -1e-8).all());
        CHECK(((A * r.x - b).array() <= 1e-7).all());
        ++solved;
    }
    CHECK(solved == 120);
}

TEST_CASE("deterministic resolve") {
    Rng rng(7);
    int n = 4, m = 6;
    MatrixXd A(m, n);
    VectorXd b(m), c(n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) A(i, j) = rng.uniform(-1, 1);
        b(i) = rng.uniform(0.5, 2.0);
    }
    for (int j = 0; j < n; ++j) c(j) = rng.uniform(-1, 1);
    LpResult r1 = uavcache::solve_lp(c, A, b);
    LpResult r2 = uavcache::solve_lp(c, A, b);
    REQUIRE(r1.status == LpStatus::Optimal);
    REQUIRE(r2.status == LpStatus::Optimal);
    CHECK(std::memcmp(r1.x.data(), r2.x.data(), sizeof(double) * n) == 0);
    CHECK(r1.objective == r2.objective);
}
