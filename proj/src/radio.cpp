#include "uavcache/radio.hpp"

#include <cmath>
#include <limits>

#include "uavcache/errors.hpp"

namespace uavcache {
namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace

FadingModel FadingModel::rayleigh() {
    return {[](double x) { return std::exp(-x); }};
}

FadingModel FadingModel::none() {
    return {[](double) { return 1.0; }};
}

LinkBudget link_budget(const SystemParams& p) {
    LinkBudget b;
    b.gamma0_U = db_to_linear(p.P_U + p.beta0_U - p.sigma2);
    b.gamma_th_U = (std::pow(2.0, p.R_U / p.B_U) - 1.0) * db_to_linear(p.Gamma);
    const double radicand = b.gamma0_U / b.gamma_th_U - p.H * p.H;
    if (radicand < 0)
        throw ConfigError("UAV rate unsupportable at altitude H");
    b.D_U = std::sqrt(radicand);
    b.gamma0_G = db_to_linear(p.P_G + p.beta0_G - p.sigma2);
    b.gamma_th_G = (std::pow(2.0, p.R_G / p.B_G) - 1.0) * db_to_linear(p.Gamma);
    b.t_p_U = p.R_p / p.R_U;
    b.t_p_G = p.R_p / p.R_G;
    b.L = static_cast<int>(std::llround(p.delta_t / b.t_p_U));
    return b;
}

double packet_success_prob(double distance, const LinkBudget& budget,
                           const FadingModel& fading, double alpha) {
    if (!(distance > 0))
        throw ContractError(
            "packet_success_prob: zero distance; self-retrieval must be "
            "short-circuited by the caller");
    return fading.ccdf(budget.gamma_th_G / budget.gamma0_G *
                       std::pow(distance, alpha));
}

double retrieval_distance(int k, int n, const CachingPolicy& policy,
                          const Scenario& s) {
    if (policy.cached(k, n)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < policy.K(); ++j) {
        if (!policy.cached(j, n)) continue;
        best = std::min(best, (s.positions[k] - s.positions[j]).norm());
    }
    return best;
}

double pair_retrieval_cost(int k, int n, const CachingPolicy& policy,
                           const Scenario& s, const LinkBudget& budget,
                           const FadingModel& fading) {
    const double d = retrieval_distance(k, n, policy, s);
    if (d == 0.0) return 0.0;
    if (!std::isfinite(d)) return C_MAX;
    const double p = packet_success_prob(d, budget, fading, s.params.alpha);
    if (p <= 0.0) return C_MAX;
    return std::min(s.params.Y / p, C_MAX);
}

double average_retrieval_cost(const CachingPolicy& policy, const Scenario& s,
                              const LinkBudget& budget,
                              const FadingModel& fading) {
    double acc = 0.0;
    for (int k = 0; k < policy.K(); ++k)
        for (int n = 0; n < policy.N(); ++n)
            acc += s.popularity(k, n) *
                   pair_retrieval_cost(k, n, policy, s, budget, fading);
    return acc * budget.t_p_G / s.params.K;
}

}  // namespace uavcache
