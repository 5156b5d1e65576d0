#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "uavcache/geometry.hpp"

namespace uavcache {

/// Every system-level parameter in one value type. Angles of attack for the
/// two radio legs (UAV->GN multicast and GN->GN D2D) share the same layout:
/// power in dBm, reference gain at 1 m in dB, noise in dBm, SNR gap in dB.
struct SystemParams {
    int K = 100;               // ground nodes
    int N = 30;                // files in the library
    int Q = 3;                 // cache slots per GN (files)
    double area_side = 3000;   // square side, meters
    double H = 100;            // UAV altitude, meters
    double V_max = 30;         // UAV max speed, m/s
    int R_p = 1000;            // packet size, bits
    int Y = 300;               // coded packets that reconstruct one file
    double kappa = 1.0;        // Zipf skewness
    double B_U = 100e3;        // UAV link bandwidth, Hz
    double B_G = 100e3;        // D2D link bandwidth, Hz
    double R_U = 100e3;        // UAV multicast rate, bit/s
    double R_G = 10e3;         // D2D rate, bit/s
    double P_U = 10;           // UAV transmit power, dBm
    double P_G = 20;           // GN transmit power, dBm
    double beta0_U = -60;      // UAV reference gain at 1 m, dB
    double beta0_G = -60;      // D2D reference gain at 1 m, dB
    double sigma2 = -110;      // noise power, dBm
    double Gamma = 7;          // SNR gap to capacity, dB
    double alpha = 2.7;        // D2D path-loss exponent
    double delta_t = 0.5;      // slot length, seconds
    double epsilon_term = 1e-6;  // greedy stop threshold, cost units
    long long rng_seed = 1;
    bool closed_tour = false;  // fly back to the depot after the last cluster

    bool operator==(const SystemParams&) const = default;
};

/// Throws ConfigError naming the violated invariant. Checks counts, the
/// coverage-radius radicand, the slot-length rule (delta_t*V_max < H), and
/// integrality of L = delta_t*R_U/R_p. The one unsolvable-instance rule,
/// K*Q >= N, throws InfeasibleError instead (exit code 3 in the CLI).
void validate(const SystemParams& p);

/// Non-fatal advisories (e.g. delta_t*V_max above H/10, where the static
/// hover approximation starts to degrade).
std::vector<std::string> param_warnings(const SystemParams& p);

/// Entry n (0-based file index, rank n+1) is (1/(n+1)^kappa) / sum_m (1/m^kappa).
Eigen::VectorXd zipf_popularity(int N, double kappa);

struct Scenario {
    SystemParams params;
    std::vector<Vec2> positions;   // w_k, meters, inside [0, area_side]^2
    Eigen::MatrixXd popularity;    // K x N, each row a probability vector
};

/// Positions i.i.d. uniform over the square, bitwise-reproducible from
/// params.rng_seed. Popularity defaults to the shared Zipf vector replicated
/// per GN; a caller-supplied K x N matrix overrides it.
Scenario generate_scenario(
    const SystemParams& p,
    const std::optional<Eigen::MatrixXd>& popularity = std::nullopt);

/// Flat key=value text config. '#' starts a comment. Every SystemParams
/// field is required except closed_tour (defaults to false); unknown or
/// duplicate keys are errors. Diagnostics carry path and line number.
SystemParams load_config(const std::string& path);
void save_config(const SystemParams& p, const std::string& path);

/// Structured JSON dump (params, positions, popularity) for cross-checking
/// against independent tooling.
void export_scenario_json(const Scenario& s, const std::string& path);

}  // namespace uavcache
