#include "uavcache/mission.hpp"

#include "uavcache/errors.hpp"

namespace uavcache {

Vec2 gn_centroid(const Scenario& s) {
    if (s.positions.empty()) throw ContractError("gn_centroid: no GNs");
    Vec2 c = Vec2::Zero();
    for (const auto& w : s.positions) c += w;
    return c / static_cast<double>(s.positions.size());
}

RouteGeometry plan_route(const Scenario& s, const std::vector<int>& gns,
                         const LinkBudget& budget, PlannerKind kind) {
    const Vec2 depot = gn_centroid(s);
    RouteGeometry geom;

    if (gns.empty()) {
        geom.path.waypoints = {depot};
        geom.path.total_length = 0.0;
        geom.segments = segment_path(geom.path, {}, {}, budget.D_U);
        return geom;
    }

    std::vector<Vec2> points;
    points.reserve(gns.size());
    for (int k : gns) points.push_back(s.positions[k]);

    if (kind == PlannerKind::TspOverGns) {
        geom.path = tsp_over_gns(points, depot, s.params.closed_tour);
    } else {
        DiskCover cover = place_cover(points, budget.D_U);
        std::vector<int> order = tour_order(cover.centers, depot);
        geom.path = refine_waypoints(cover, order, points, depot, budget.D_U,
                                     s.params.closed_tour);
    }
    geom.segments = segment_path(geom.path, points, gns, budget.D_U);
    return geom;
}

MissionPlan plan_mission(const Scenario& s, const CachingPolicy& policy,
                         const LinkBudget& budget, PlannerKind kind) {
    RouteGeometry geom = plan_route(s, policy.caching_gns(), budget, kind);
    MissionPlan plan;
    plan.path = std::move(geom.path);
    plan.segments = std::move(geom.segments);
    plan.schedule =
        solve_p4(plan.segments, policy, budget, s.params.V_max, s.params.Y);
    return plan;
}

}  // namespace uavcache
