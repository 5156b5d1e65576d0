#pragma once

#include <string>
#include <vector>

#include "uavcache/geometry.hpp"

namespace uavcache {

/// Cover of the caching GNs by disks of radius D_U centered at virtual BS
/// locations. assignment[i] is the center index covering input point i.
struct DiskCover {
    std::vector<Vec2> centers;
    std::vector<int> assignment;
};

/// Ordered waypoint polyline. Consecutive duplicate waypoints mark cluster
/// service points: the segmenter turns each zero-length leg into a hover
/// segment there, which is how pure hovering time becomes schedulable.
struct FlightPath {
    std::vector<Vec2> waypoints;
    double total_length = 0.0;
};

/// Path split into maximal pieces with a constant set of covered GNs.
struct PathSegments {
    struct Segment {
        Vec2 a;
        Vec2 b;
        double length = 0.0;
        std::vector<int> contact;  // ids of GNs within D_U, ascending
    };
    std::vector<Segment> segments;
    double total_length() const;
};

/// Greedy max-coverage placement: seed each new disk at the uncovered point
/// farthest from the uncovered centroid, grow it over nearest-first points
/// while the group's minimum enclosing circle stays within D_U, and center
/// the disk at that circle's center.
DiskCover place_cover(const std::vector<Vec2>& points, double D_U);

/// Open-path visiting order over centers: nearest-neighbor from the depot,
/// then 2-opt until no improving exchange (capped at 10^4 exchanges).
/// Deterministic via lowest-index tie-breaks.
std::vector<int> tour_order(const std::vector<Vec2>& centers,
                            const Vec2& depot);

/// Entry/exit points per visited cluster, chosen inside the intersection of
/// the cluster's coverage disks by alternating chord projection (1e-3 m
/// fixed-point tolerance). Never longer than flying center to center.
FlightPath refine_waypoints(const DiskCover& cover,
                            const std::vector<int>& order,
                            const std::vector<Vec2>& points, const Vec2& depot,
                            double D_U, bool closed_tour = false);

/// Splits every leg at the exact circle-crossing parameters of each GN's
/// coverage disk, classifies each piece by its midpoint (1e-6 m contact
/// tolerance), merges equal-contact neighbors, and emits hover segments for
/// zero-length legs. Throws ContractError if some id never makes contact.
PathSegments segment_path(const FlightPath& path,
                          const std::vector<Vec2>& points,
                          const std::vector<int>& ids, double D_U);

/// Benchmark path: tour over the GN positions themselves, hovering at each
/// (no cover, no refinement).
FlightPath tsp_over_gns(const std::vector<Vec2>& gn_points, const Vec2& depot,
                        bool closed_tour = false);

/// Waypoint list as CSV rows "x,y".
void save_path_csv(const FlightPath& path, const std::string& file);

}  // namespace uavcache
