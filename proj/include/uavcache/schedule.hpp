#pragma once

#include <Eigen/Dense>
#include <string>

#include "uavcache/caching.hpp"
#include "uavcache/radio.hpp"
#include "uavcache/trajectory.hpp"

namespace uavcache {

/// Per-segment dwell times and integral per-file packet allocations. rho and
/// packets rows align with the PathSegments that produced them; lp_lower is
/// the fractional LP optimum, kept for the rounding-inflation bound.
struct Schedule {
    Eigen::VectorXd rho;      // seconds per segment
    Eigen::MatrixXi packets;  // S x N packet counts
    double C_U = 0.0;         // sum of rho, seconds
    double lp_lower = 0.0;    // LP relaxation optimum, seconds

    /// Slot count for the slotted bookkeeping view of the same mission.
    int slot_count(double delta_t) const;
};

/// Minimizes total dwell subject to: rho_s * V_max >= l_s, per-segment
/// transmission capacity sum_n J_{s,n} <= rho_s / t_p_U, and Y packets of
/// every file n delivered within contact of every GN caching it. Fractional
/// packet counts are rounded up and rho repaired minimally, so the result
/// satisfies the constraints as integers. Throws ContractError when some
/// cached pair never makes contact (planner contract violation).
Schedule solve_p4(const PathSegments& segments, const CachingPolicy& policy,
                  const LinkBudget& budget, double V_max, int Y);

/// Total caching time of the mission.
double caching_cost(const Schedule& schedule);

/// Substitutes the schedule into every constraint family; returns false and
/// fills why (when given) on the first violation.
bool schedule_satisfies_p4(const Schedule& schedule,
                           const PathSegments& segments,
                           const CachingPolicy& policy,
                           const LinkBudget& budget, double V_max, int Y,
                           std::string* why = nullptr);

/// CSV rows: l_s, rho_s, contact ids joined by '|', then one packet-count
/// column per file.
void save_schedule_csv(const Schedule& schedule, const PathSegments& segments,
                       const std::string& path);

}  // namespace uavcache
