#include "uavcache/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace uavcache {

namespace {

Circle circle_from_two(const Vec2& a, const Vec2& b) {
    Vec2 c = 0.5 * (a + b);
    return {c, (a - c).norm()};
}

// Circumcircle; falls back to the widest two-point circle when nearly collinear.
Circle circle_from_three(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double ax = a.x(), ay = a.y();
    const double bx = b.x() - ax, by = b.y() - ay;
    const double cx = c.x() - ax, cy = c.y() - ay;
    const double d = 2.0 * (bx * cy - by * cx);
    if (std::abs(d) < 1e-14 * (b - a).norm() * (c - a).norm()) {
        Circle best = circle_from_two(a, b);
        for (const Circle& cand : {circle_from_two(a, c), circle_from_two(b, c)}) {
            if (cand.radius > best.radius) best = cand;
        }
        return best;
    }
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    Vec2 center(ax + (cy * b2 - by * c2) / d, ay + (bx * c2 - cx * b2) / d);
    double r = std::max({(a - center).norm(), (b - center).norm(), (c - center).norm()});
    return {center, r};
}

Circle trivial_circle(const std::vector<Vec2>& boundary) {
    switch (boundary.size()) {
        case 0: return {Vec2(0, 0), 0.0};
        case 1: return {boundary[0], 0.0};
        case 2: return circle_from_two(boundary[0], boundary[1]);
        default: return circle_from_three(boundary[0], boundary[1], boundary[2]);
    }
}

Circle welzl(std::vector<Vec2>& pts, std::size_t n, std::vector<Vec2>& boundary) {
    if (n == 0 || boundary.size() == 3) return trivial_circle(boundary);
    Vec2 p = pts[n - 1];
    Circle d = welzl(pts, n - 1, boundary);
    if (d.contains(p)) return d;
    boundary.push_back(p);
    d = welzl(pts, n - 1, boundary);
    boundary.pop_back();
    return d;
}

}  // namespace

Circle min_enclosing_circle(const std::vector<Vec2>& points) {
    if (points.empty()) return {Vec2(0, 0), 0.0};
    std::vector<Vec2> pts = points;
    // Hand-rolled Fisher-Yates with a fixed mt19937 stream: the standard fully
    // specifies the generator output, so the permutation (and hence any
    // floating-point ties in the result) is identical on every platform.
    std::mt19937 rng(0x9e3779b9u);
    for (std::size_t i = pts.size() - 1; i > 0; --i) {
        std::uint32_t bound = static_cast<std::uint32_t>(i + 1);
        std::uint32_t limit = std::numeric_limits<std::uint32_t>::max() / bound * bound;
        std::uint32_t r;
        do { r = rng(); } while (r >= limit);
        std::swap(pts[i], pts[r % bound]);
    }
    std::vector<Vec2> boundary;
    boundary.reserve(3);
    Circle c = welzl(pts, pts.size(), boundary);
    // Guard against accumulated round-off: grow to actually cover everything.
    double r = c.radius;
    for (const Vec2& p : points) r = std::max(r, (p - c.center).norm());
    c.radius = r;
    return c;
}

std::vector<double> segment_circle_crossings(const Vec2& a, const Vec2& b,
                                             const Vec2& center, double radius) {
    std::vector<double> out;
    const Vec2 d = b - a;
    const Vec2 f = a - center;
    const double qa = d.squaredNorm();
    if (qa < 1e-24) return out;  // zero-length leg
    const double qb = 2.0 * f.dot(d);
    const double qc = f.squaredNorm() - radius * radius;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return out;
    const double s = std::sqrt(disc);
    // Citardauq form for the root with cancellation in the classic formula.
    const double q = -0.5 * (qb + (qb >= 0 ? s : -s));
    double t0 = q / qa;
    double t1 = (std::abs(q) > 0) ? qc / q : t0;
    if (t0 > t1) std::swap(t0, t1);
    for (double t : {t0, t1}) {
        if (t > 1e-12 && t < 1.0 - 1e-12) {
            if (out.empty() || t - out.back() > 1e-12) out.push_back(t);
        }
    }
    return out;
}

bool point_in_all_disks(const Vec2& p, const std::vector<Vec2>& centers, double radius,
                        double tol) {
    for (const Vec2& c : centers) {
        if ((p - c).norm() > radius + tol) return false;
    }
    return true;
}

Vec2 project_into_disks(const Vec2& q, const std::vector<Vec2>& centers, double radius,
                        const Vec2& anchor) {
    if (point_in_all_disks(q, centers, radius)) return q;
    Vec2 p = q;
    for (int iter = 0; iter < 200; ++iter) {
        double worst = 0.0;
        const Vec2* worst_center = nullptr;
        for (const Vec2& c : centers) {
            double excess = (p - c).norm() - radius;
            if (excess > worst) {
                worst = excess;
                worst_center = &c;
            }
        }
        if (worst <= 1e-9) return p;
        p = *worst_center + (p - *worst_center) * (radius / (radius + worst));
    }
    // Cyclic projection stalled (thin intersection): bisect toward the anchor,
    // which is feasible by construction.
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        Vec2 cand = p + mid * (anchor - p);
        if (point_in_all_disks(cand, centers, radius, 0.0)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return p + hi * (anchor - p);
}

double polyline_length(const std::vector<Vec2>& pts) {
    double len = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) len += (pts[i] - pts[i - 1]).norm();
    return len;
}

}  // namespace uavcache
