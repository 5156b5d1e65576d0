#pragma once

#include <functional>

#include "uavcache/caching.hpp"
#include "uavcache/scenario.hpp"

namespace uavcache {

/// Sentinel packet count standing in for an infinite retrieval cost. Finite
/// so greedy cost differences stay well-defined; any pair cost is clamped
/// here, which keeps "add a copy never hurts" true even at extreme ranges.
constexpr double C_MAX = 1e9;

/// Every derived link constant, converted to linear scale exactly once.
struct LinkBudget {
    double gamma0_U = 0;    // UAV-link SNR at 1 m, linear
    double gamma_th_U = 0;  // UAV decoding threshold, linear
    double D_U = 0;         // UAV coverage radius, meters
    double gamma0_G = 0;    // D2D SNR at 1 m, linear
    double gamma_th_G = 0;  // D2D decoding threshold, linear
    double t_p_U = 0;       // seconds per UAV packet, R_p/R_U
    double t_p_G = 0;       // seconds per D2D packet, R_p/R_G
    int L = 0;              // UAV packets per slot, delta_t/t_p_U
};

/// Small-scale fading as a pluggable complementary CDF of the power gain.
struct FadingModel {
    std::function<double(double)> ccdf;

    static FadingModel rayleigh();  // F(x) = exp(-x)
    static FadingModel none();      // F(x) = 1, lossless idealization
};

/// Derives LinkBudget from params. Throws ConfigError when the UAV rate is
/// unsupportable at altitude H (negative radicand in the coverage radius).
LinkBudget link_budget(const SystemParams& p);

/// F((gamma_th_G/gamma0_G) * distance^alpha). distance must be positive;
/// zero distance belongs to the local-cache branch of the pair cost and is
/// rejected as a contract violation.
double packet_success_prob(double distance, const LinkBudget& budget,
                           const FadingModel& fading, double alpha);

/// 0 when k caches n itself, else the distance to the nearest cached copy,
/// +infinity when nobody caches file n.
double retrieval_distance(int k, int n, const CachingPolicy& policy,
                          const Scenario& s);

/// Expected packet transmissions for GN k to obtain file n: 0 when local,
/// else Y/p_succ clamped to C_MAX (also the uncached sentinel).
double pair_retrieval_cost(int k, int n, const CachingPolicy& policy,
                           const Scenario& s, const LinkBudget& budget,
                           const FadingModel& fading);

/// Average file-retrieval time in seconds:
/// (1/K) * sum_k sum_n P^(k)(n) * c_{k,n} * t_p_G.
double average_retrieval_cost(const CachingPolicy& policy, const Scenario& s,
                              const LinkBudget& budget,
                              const FadingModel& fading);

}  // namespace uavcache
