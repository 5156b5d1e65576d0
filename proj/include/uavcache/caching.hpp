#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace uavcache {

/// Binary placement I_{k,n} with the per-GN capacity bound enforced on every
/// insertion, so a policy object can never leave the feasible set of Eq.-(3)
/// style storage constraints. Coverage (every file cached somewhere) is a
/// termination property of the construction algorithms, checked separately.
class CachingPolicy {
  public:
    CachingPolicy() = default;
    CachingPolicy(int K, int N, int Q);

    int K() const { return static_cast<int>(placement_.rows()); }
    int N() const { return static_cast<int>(placement_.cols()); }
    int Q() const { return Q_; }

    bool cached(int k, int n) const { return placement_(k, n) != 0; }
    int fill(int k) const { return fill_(k); }
    int copies(int n) const { return copies_(n); }
    int total_pairs() const { return fill_.sum(); }

    /// True when GN k has spare capacity and does not already hold file n.
    bool can_add(int k, int n) const {
        return fill_(k) < Q_ && placement_(k, n) == 0;
    }
    /// Throws ContractError when can_add(k, n) is false.
    void add(int k, int n);

    /// True when every file has at least one cached copy.
    bool covers_all_files() const { return (copies_.array() >= 1).all(); }

    /// Indices of GNs holding at least one file, ascending.
    std::vector<int> caching_gns() const;

    const Eigen::MatrixXi& placement() const { return placement_; }

  private:
    Eigen::MatrixXi placement_;  // K x N, entries 0/1
    Eigen::VectorXi fill_;       // per-GN cached-file count
    Eigen::VectorXi copies_;     // per-file cached-copy count
    int Q_ = 0;
};

struct CostReport {
    double C_U = 0.0;      // seconds
    double C_G = 0.0;      // seconds
    double theta = 0.0;    // weight in [0,1]
    double C_theta = 0.0;  // (1-theta)*C_U + theta*C_G
};

/// Exact affine combination; theta outside [0,1] is a contract violation.
double weighted_cost(double C_U, double C_G, double theta);

/// Cached-copy count per file (column sums of the placement).
Eigen::VectorXi repetition_stats(const CachingPolicy& policy);

/// Plain 0/1 grid, one row per GN, comma-separated, no header.
void save_policy_csv(const CachingPolicy& policy, const std::string& path);
CachingPolicy load_policy_csv(const std::string& path, int Q);

}  // namespace uavcache
