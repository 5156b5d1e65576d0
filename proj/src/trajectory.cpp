#include "uavcache/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "uavcache/errors.hpp"

namespace uavcache {
namespace {

constexpr double kContactTol = 1e-6;   // meters, disk-membership slack
constexpr double kRefineTol = 1e-3;    // meters, refinement fixed point
constexpr double kZeroLeg = 1e-12;     // meters, leg treated as hover

// Feasible window [t_lo, t_hi] of segment a->b inside every disk of radius r
// around the given centers; empty() when the chord misses the region.
struct Window {
    double lo = 0.0, hi = 1.0;
    bool empty = false;
};

Window chord_window(const Vec2& a, const Vec2& b,
                    const std::vector<Vec2>& centers, double r) {
    Window w;
    const Vec2 d = b - a;
    const double qa = d.squaredNorm();
    for (const auto& c : centers) {
        double lo, hi;
        if (qa < 1e-24) {
            // Point chord: feasible iff the point itself is inside.
            if ((a - c).norm() > r + kContactTol) {
                w.empty = true;
                return w;
            }
            lo = 0.0;
            hi = 1.0;
        } else {
            // Roots of |a + t d - c| = r on the full line; the disk occupies
            // [t0, t1]. Unlike the public crossing routine this keeps
            // endpoint and tangent roots, which the window logic needs.
            const Vec2 f = a - c;
            const double qb = 2.0 * f.dot(d);
            const double qc = f.squaredNorm() - r * r;
            const double disc = qb * qb - 4.0 * qa * qc;
            if (disc < 0.0) {
                w.empty = true;
                return w;
            }
            const double s = std::sqrt(disc);
            const double q = -0.5 * (qb + (qb >= 0 ? s : -s));
            double t0 = q / qa;
            double t1 = (std::abs(q) > 0) ? qc / q : t0;
            if (t0 > t1) std::swap(t0, t1);
            lo = std::max(t0, 0.0);
            hi = std::min(t1, 1.0);
            if (lo > hi) {
                w.empty = true;
                return w;
            }
        }
        w.lo = std::max(w.lo, lo);
        w.hi = std::min(w.hi, hi);
        if (w.lo > w.hi) {
            w.empty = true;
            return w;
        }
    }
    return w;
}

// Point of segment a->b closest to satisfying all disks: max_i |p(t)-c_i| is
// convex in t, so ternary search nails its minimizer.
Vec2 chord_closest_point(const Vec2& a, const Vec2& b,
                         const std::vector<Vec2>& centers) {
    auto worst = [&](double t) {
        const Vec2 p = a + t * (b - a);
        double m = 0.0;
        for (const auto& c : centers) m = std::max(m, (p - c).norm());
        return m;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (worst(m1) <= worst(m2))
            hi = m2;
        else
            lo = m1;
    }
    return a + 0.5 * (lo + hi) * (b - a);
}

std::vector<int> contact_at(const Vec2& p, const std::vector<Vec2>& points,
                            const std::vector<int>& ids, double D_U) {
    std::vector<int> out;
    for (size_t i = 0; i < points.size(); ++i)
        if ((p - points[i]).norm() <= D_U + kContactTol) out.push_back(ids[i]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

double PathSegments::total_length() const {
    double acc = 0.0;
    for (const auto& s : segments) acc += s.length;
    return acc;
}

DiskCover place_cover(const std::vector<Vec2>& points, double D_U) {
    if (points.empty()) throw ContractError("place_cover: no points");
    if (!(D_U > 0)) throw ContractError("place_cover: D_U must be positive");

    const int n = static_cast<int>(points.size());
    DiskCover cover;
    cover.assignment.assign(n, -1);
    std::vector<int> uncovered(n);
    std::iota(uncovered.begin(), uncovered.end(), 0);

    while (!uncovered.empty()) {
        Vec2 centroid = Vec2::Zero();
        for (int i : uncovered) centroid += points[i];
        centroid /= static_cast<double>(uncovered.size());

        // Boundary-outward seed: farthest uncovered point from the centroid.
        int seed = uncovered[0];
        double best = -1.0;
        for (int i : uncovered) {
            const double d = (points[i] - centroid).norm();
            if (d > best + 1e-12) {
                best = d;
                seed = i;
            }
        }

        std::vector<int> rest;
        for (int i : uncovered)
            if (i != seed) rest.push_back(i);
        std::sort(rest.begin(), rest.end(), [&](int a, int b) {
            const double da = (points[a] - points[seed]).norm();
            const double db = (points[b] - points[seed]).norm();
            if (da != db) return da < db;
            return a < b;
        });

        std::vector<int> group{seed};
        std::vector<Vec2> group_pts{points[seed]};
        Circle mec{points[seed], 0.0};
        for (int i : rest) {
            group_pts.push_back(points[i]);
            Circle grown = min_enclosing_circle(group_pts);
            if (grown.radius <= D_U) {
                group.push_back(i);
                mec = grown;
            } else {
                group_pts.pop_back();
            }
        }

        const int g = static_cast<int>(cover.centers.size());
        cover.centers.push_back(mec.center);
        for (int i : group) cover.assignment[i] = g;
        std::vector<int> next;
        for (int i : uncovered)
            if (cover.assignment[i] < 0) next.push_back(i);
        uncovered.swap(next);
    }
    return cover;
}

std::vector<int> tour_order(const std::vector<Vec2>& centers,
                            const Vec2& depot) {
    const int G = static_cast<int>(centers.size());
    if (G == 0) return {};

    // Nearest-neighbor construction from the depot.
    std::vector<int> order;
    std::vector<bool> used(G, false);
    Vec2 at = depot;
    for (int step = 0; step < G; ++step) {
        int pick = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < G; ++i) {
            if (used[i]) continue;
            const double d = (centers[i] - at).norm();
            if (d < best - 1e-12) {
                best = d;
                pick = i;
            }
        }
        used[pick] = true;
        order.push_back(pick);
        at = centers[pick];
    }

    // Local search on the open path depot -> order[0] -> ... -> order[G-1]:
    // best-improvement 2-opt reversals alternated with Or-opt relocations of
    // 1..3 consecutive stops (2-opt alone stalls above the 5%-of-optimum bar
    // often enough to matter). Capped at 10^4 applied moves in total.
    auto pt = [&](int idx) -> const Vec2& {
        return idx < 0 ? depot : centers[order[idx]];
    };
    auto length_of = [&](const std::vector<int>& ord) {
        double len = 0.0;
        Vec2 at = depot;
        for (int i : ord) {
            len += (centers[i] - at).norm();
            at = centers[i];
        }
        return len;
    };

    int moves = 0;
    bool any = true;
    while (any && moves < 10000) {
        any = false;
        // 2-opt: reversing order[i..j] touches only the edges into i and out
        // of j.
        while (moves < 10000) {
            double best_gain = 1e-9;
            int bi = -1, bj = -1;
            for (int i = 0; i < G - 1; ++i) {
                for (int j = i + 1; j < G; ++j) {
                    const double before =
                        (pt(i) - pt(i - 1)).norm() +
                        (j + 1 < G ? (pt(j + 1) - pt(j)).norm() : 0.0);
                    const double after =
                        (pt(j) - pt(i - 1)).norm() +
                        (j + 1 < G ? (pt(j + 1) - pt(i)).norm() : 0.0);
                    if (before - after > best_gain) {
                        best_gain = before - after;
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (bi < 0) break;
            std::reverse(order.begin() + bi, order.begin() + bj + 1);
            ++moves;
            any = true;
        }
        // Or-opt: relocate a run of 1..3 stops to its best position.
        while (moves < 10000) {
            double cur = length_of(order);
            double best = cur - 1e-9;
            std::vector<int> best_order;
            for (int len = 1; len <= std::min(3, G - 1); ++len) {
                for (int i = 0; i + len <= G; ++i) {
                    std::vector<int> rest;
                    rest.reserve(G);
                    for (int t = 0; t < G; ++t)
                        if (t < i || t >= i + len) rest.push_back(order[t]);
                    for (int j = 0; j <= static_cast<int>(rest.size()); ++j) {
                        if (j == i) continue;  // identity relocation
                        std::vector<int> cand(rest.begin(), rest.begin() + j);
                        cand.insert(cand.end(), order.begin() + i,
                                    order.begin() + i + len);
                        cand.insert(cand.end(), rest.begin() + j, rest.end());
                        const double l = length_of(cand);
                        if (l < best) {
                            best = l;
                            best_order = std::move(cand);
                        }
                    }
                }
            }
            if (best_order.empty()) break;
            order = std::move(best_order);
            ++moves;
            any = true;
        }
    }
    return order;
}

FlightPath refine_waypoints(const DiskCover& cover,
                            const std::vector<int>& order,
                            const std::vector<Vec2>& points, const Vec2& depot,
                            double D_U, bool closed_tour) {
    const int G = static_cast<int>(order.size());
    if (G == 0) return {{depot}, 0.0};
    if (cover.assignment.size() != points.size())
        throw ContractError("refine_waypoints: cover/point size mismatch");

    std::vector<std::vector<Vec2>> members(cover.centers.size());
    for (size_t i = 0; i < points.size(); ++i)
        members[cover.assignment[i]].push_back(points[i]);

    // entry[g]/exit_[g] live in the intersection of cluster order[g]'s disks;
    // starting both at the cluster center makes the initial path exactly the
    // center tour, and every update below only ever shortens it.
    std::vector<Vec2> entry(G), exit_(G);
    for (int g = 0; g < G; ++g) entry[g] = exit_[g] = cover.centers[order[g]];

    // Best point of the chord prev->next inside the cluster region: first
    // (pick_lo) or last feasible parameter when the chord passes through,
    // else the closest-approach point projected into the region.
    auto chord_point = [&](const Vec2& prev, const Vec2& next,
                           const std::vector<Vec2>& mem, const Vec2& anchor,
                           bool pick_lo) {
        Window w = chord_window(prev, next, mem, D_U);
        if (!w.empty) {
            const double t = pick_lo ? w.lo : w.hi;
            return Vec2(prev + t * (next - prev));
        }
        const Vec2 q = chord_closest_point(prev, next, mem);
        return project_into_disks(q, mem, D_U, anchor);
    };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double moved = 0.0;
        for (int g = 0; g < G; ++g) {
            const auto& mem = members[order[g]];
            const Vec2 anchor = cover.centers[order[g]];
            const Vec2 prev = g == 0 ? depot : exit_[g - 1];

            // Entry: shortest prev -> e -> exit_[g] detour through the
            // region. Ties are accepted: the two-leg sum is flat along a
            // feasible chord, and sliding the entry to the chord's first
            // feasible point is what lets the exit improve next.
            {
                const Vec2 cand = chord_point(prev, exit_[g], mem, anchor, true);
                const double cur =
                    (entry[g] - prev).norm() + (exit_[g] - entry[g]).norm();
                const double alt =
                    (cand - prev).norm() + (exit_[g] - cand).norm();
                if (alt <= cur + 1e-12) {
                    moved = std::max(moved, (cand - entry[g]).norm());
                    entry[g] = cand;
                }
            }
            // Exit: shortest entry[g] -> x -> next leg. The last cluster has
            // no onward leg (open tour), so its exit collapses onto its entry.
            if (g + 1 < G || closed_tour) {
                const Vec2 next = g + 1 < G ? entry[g + 1] : depot;
                const Vec2 cand =
                    chord_point(entry[g], next, mem, anchor, false);
                const double cur =
                    (exit_[g] - entry[g]).norm() + (next - exit_[g]).norm();
                const double alt =
                    (cand - entry[g]).norm() + (next - cand).norm();
                if (alt <= cur + 1e-12) {
                    moved = std::max(moved, (cand - exit_[g]).norm());
                    exit_[g] = cand;
                }
            } else if ((exit_[g] - entry[g]).norm() > 0) {
                moved = std::max(moved, (exit_[g] - entry[g]).norm());
                exit_[g] = entry[g];
            }
        }
        if (moved < kRefineTol) break;
    }

    FlightPath path;
    path.waypoints.push_back(depot);
    for (int g = 0; g < G; ++g) {
        path.waypoints.push_back(entry[g]);
        path.waypoints.push_back(exit_[g]);
    }
    if (closed_tour) path.waypoints.push_back(depot);
    path.total_length = polyline_length(path.waypoints);

    // The center tour is always feasible; refinement starts there and only
    // descends, but guard against numerical surprises anyway.
    std::vector<Vec2> center_tour{depot};
    for (int g = 0; g < G; ++g) {
        center_tour.push_back(cover.centers[order[g]]);
        center_tour.push_back(cover.centers[order[g]]);
    }
    if (closed_tour) center_tour.push_back(depot);
    if (polyline_length(center_tour) < path.total_length) {
        path.waypoints = center_tour;
        path.total_length = polyline_length(center_tour);
    }
    return path;
}

PathSegments segment_path(const FlightPath& path,
                          const std::vector<Vec2>& points,
                          const std::vector<int>& ids, double D_U) {
    if (points.size() != ids.size())
        throw ContractError("segment_path: points/ids size mismatch");
    if (path.waypoints.empty())
        throw ContractError("segment_path: empty path");

    PathSegments out;
    auto emit = [&](const Vec2& a, const Vec2& b) {
        PathSegments::Segment s;
        s.a = a;
        s.b = b;
        s.length = (b - a).norm();
        s.contact = contact_at(0.5 * (a + b), points, ids, D_U);
        out.segments.push_back(std::move(s));
    };

    if (path.waypoints.size() == 1)
        emit(path.waypoints[0], path.waypoints[0]);

    for (size_t w = 0; w + 1 < path.waypoints.size(); ++w) {
        const Vec2 a = path.waypoints[w];
        const Vec2 b = path.waypoints[w + 1];
        if ((b - a).norm() <= kZeroLeg) {
            emit(a, a);  // hover marker
            continue;
        }
        std::vector<double> cuts{0.0, 1.0};
        for (const auto& p : points) {
            auto ts = segment_circle_crossings(a, b, p, D_U);
            cuts.insert(cuts.end(), ts.begin(), ts.end());
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [](double x, double y) {
                                   return std::abs(x - y) < 1e-12;
                               }),
                   cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i)
            emit(a + cuts[i] * (b - a), a + cuts[i + 1] * (b - a));
    }

    // Merge runs with identical contact sets; hover markers inside a run are
    // absorbed, standalone ones survive.
    std::vector<PathSegments::Segment> merged;
    for (auto& s : out.segments) {
        if (!merged.empty() && merged.back().contact == s.contact) {
            merged.back().b = s.b;
            merged.back().length += s.length;
        } else {
            merged.push_back(std::move(s));
        }
    }
    out.segments.swap(merged);

    std::vector<bool> seen(points.size(), false);
    for (const auto& s : out.segments)
        for (int id : s.contact)
            for (size_t i = 0; i < ids.size(); ++i)
                if (ids[i] == id) seen[i] = true;
    for (size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw ContractError("path does not cover GN " +
                                std::to_string(ids[i]));
    return out;
}

FlightPath tsp_over_gns(const std::vector<Vec2>& gn_points, const Vec2& depot,
                        bool closed_tour) {
    std::vector<int> order = tour_order(gn_points, depot);
    FlightPath path;
    path.waypoints.push_back(depot);
    for (int i : order) {
        path.waypoints.push_back(gn_points[i]);
        path.waypoints.push_back(gn_points[i]);  // hover marker
    }
    if (closed_tour) path.waypoints.push_back(depot);
    path.total_length = polyline_length(path.waypoints);
    return path;
}

void save_path_csv(const FlightPath& path, const std::string& file) {
    std::ofstream out(file);
    if (!out) throw ContractError("cannot write path file: " + file);
    out << "x,y\n";
    char buf[80];
    for (const auto& w : path.waypoints) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", w.x(), w.y());
        out << buf;
    }
    if (!out) throw ContractError("write failed: " + file);
}

}  // namespace uavcache
