#pragma once

#include "uavcache/schedule.hpp"

namespace uavcache {

/// Which flying-path construction backs the caching-cost evaluation: the
/// full cluster pipeline (disk cover, tour, waypoint refinement) or the
/// benchmark tour that hops directly between caching GNs.
enum class PlannerKind { ClusterRefined, TspOverGns };

struct MissionPlan {
    FlightPath path;
    PathSegments segments;
    Schedule schedule;
};

/// Geometry half of a mission: flying path over a set of caching GNs plus
/// its contact segmentation, no scheduling. The path depends only on which
/// GNs cache something, so callers evaluating many placements over the same
/// GN set can solve the schedule separately against one shared geometry.
struct RouteGeometry {
    FlightPath path;
    PathSegments segments;
};

/// gns: ascending, distinct indices into s.positions; empty means the UAV
/// stays at the depot.
RouteGeometry plan_route(const Scenario& s, const std::vector<int>& gns,
                         const LinkBudget& budget,
                         PlannerKind kind = PlannerKind::ClusterRefined);

/// Flight depot: centroid of all K GNs (seed-independent, shared with the
/// overhearing estimator's first-pick distance).
Vec2 gn_centroid(const Scenario& s);

/// Full caching-mission evaluation for a policy: plan the path over the
/// caching GNs, segment it, and schedule transmissions. An empty policy
/// yields an immobile mission with C_U = 0.
MissionPlan plan_mission(const Scenario& s, const CachingPolicy& policy,
                         const LinkBudget& budget,
                         PlannerKind kind = PlannerKind::ClusterRefined);

}  // namespace uavcache
