#include "uavcache/caching.hpp"

#include <fstream>
#include <sstream>

#include "uavcache/errors.hpp"

namespace uavcache {

CachingPolicy::CachingPolicy(int K, int N, int Q)
    : placement_(Eigen::MatrixXi::Zero(K, N)),
      fill_(Eigen::VectorXi::Zero(K)),
      copies_(Eigen::VectorXi::Zero(N)),
      Q_(Q) {
    if (K < 1 || N < 1 || Q < 1)
        throw ContractError("CachingPolicy: K, N, Q must all be >= 1");
}

void CachingPolicy::add(int k, int n) {
    if (k < 0 || k >= K() || n < 0 || n >= N())
        throw ContractError("CachingPolicy::add: index out of range");
    if (placement_(k, n) != 0)
        throw ContractError("CachingPolicy::add: pair already cached");
    if (fill_(k) >= Q_)
        throw ContractError("CachingPolicy::add: storage of GN " +
                            std::to_string(k) + " is full");
    placement_(k, n) = 1;
    ++fill_(k);
    ++copies_(n);
}

std::vector<int> CachingPolicy::caching_gns() const {
    std::vector<int> out;
    for (int k = 0; k < K(); ++k)
        if (fill_(k) > 0) out.push_back(k);
    return out;
}

double weighted_cost(double C_U, double C_G, double theta) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw ContractError("weighted_cost: theta must lie in [0,1]");
    return (1.0 - theta) * C_U + theta * C_G;
}

Eigen::VectorXi repetition_stats(const CachingPolicy& policy) {
    Eigen::VectorXi counts(policy.N());
    for (int n = 0; n < policy.N(); ++n) counts(n) = policy.copies(n);
    return counts;
}

void save_policy_csv(const CachingPolicy& policy, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ContractError("cannot write policy file: " + path);
    for (int k = 0; k < policy.K(); ++k) {
        for (int n = 0; n < policy.N(); ++n) {
            if (n) out << ',';
            out << (policy.cached(k, n) ? 1 : 0);
        }
        out << '\n';
    }
    if (!out) throw ContractError("write failed: " + path);
}

CachingPolicy load_policy_csv(const std::string& path, int Q) {
    std::ifstream in(path);
    if (!in) throw ContractError("cannot open policy file: " + path);
    std::vector<std::vector<int>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<int> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            if (cell != "0" && cell != "1")
                throw ContractError(path + ": policy entries must be 0 or 1");
            row.push_back(cell == "1");
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ContractError(path + ": ragged policy rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ContractError(path + ": empty policy file");
    CachingPolicy policy(static_cast<int>(rows.size()),
                         static_cast<int>(rows.front().size()), Q);
    for (size_t k = 0; k < rows.size(); ++k)
        for (size_t n = 0; n < rows[k].size(); ++n)
            if (rows[k][n]) policy.add(static_cast<int>(k), static_cast<int>(n));
    return policy;
}

}  // namespace uavcache
