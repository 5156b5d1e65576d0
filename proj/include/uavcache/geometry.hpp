#pragma once

#include <Eigen/Dense>
#include <vector>

namespace uavcache {

using Vec2 = Eigen::Vector2d;

struct Circle {
    Vec2 center{0.0, 0.0};
    double radius = 0.0;

    bool contains(const Vec2& p, double tol = 1e-9) const {
        return (p - center).norm() <= radius + tol;
    }
};

/// Smallest circle enclosing all points (Welzl). Deterministic for a given input order.
Circle min_enclosing_circle(const std::vector<Vec2>& points);

/// Parameters t in (0,1) where the segment a + t*(b-a) crosses the circle
/// |p - center| = radius. Sorted ascending; tangent (double) roots collapse to one.
std::vector<double> segment_circle_crossings(const Vec2& a, const Vec2& b,
                                             const Vec2& center, double radius);

/// True if p lies in every disk of radius `radius` around the given centers.
bool point_in_all_disks(const Vec2& p, const std::vector<Vec2>& centers, double radius,
                        double tol = 1e-9);

/// Moves q into the intersection of the disks (cyclic projection onto the most
/// violated disk, then a bisection pull toward `anchor`, which must itself lie in
/// the intersection). Returns q unchanged when it is already inside.
Vec2 project_into_disks(const Vec2& q, const std::vector<Vec2>& centers, double radius,
                        const Vec2& anchor);

/// Sum of consecutive Euclidean distances.
double polyline_length(const std::vector<Vec2>& pts);

}  // namespace uavcache
