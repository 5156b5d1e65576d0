#include "uavcache/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <vector>

#include "uavcache/errors.hpp"
#include "uavcache/lp.hpp"

namespace uavcache {
namespace {

// Segments sharing a contact set are one LP entity: dwell and packets only
// enter the constraints through group totals, so merging is exact, and it
// shrinks the tableau by an order of magnitude on realistic paths.
struct Group {
    std::vector<int> contact;  // GN ids, ascending
    std::vector<int> members;  // physical segment indices, path order
    double length = 0.0;
    std::vector<int> files;    // files cached by someone in contact
};

int snap_ceil(double x) {
    return static_cast<int>(std::ceil(x - 1e-6));
}

}  // namespace

int Schedule::slot_count(double delta_t) const {
    return static_cast<int>(std::ceil(C_U / delta_t - 1e-9));
}

Schedule solve_p4(const PathSegments& segments, const CachingPolicy& policy,
                  const LinkBudget& budget, double V_max, int Y) {
    const int S = static_cast<int>(segments.segments.size());
    const int N = policy.N();
    const double t_p = budget.t_p_U;

    Schedule sched;
    sched.rho = Eigen::VectorXd::Zero(S);
    sched.packets = Eigen::MatrixXi::Zero(S, N);

    // Flight time is sunk cost; the LP only decides extra dwell H and packet
    // placement. Segments with empty contact contribute flight time alone.
    double flight_time = 0.0;
    for (int s = 0; s < S; ++s) {
        flight_time += segments.segments[s].length / V_max;
        sched.rho(s) = segments.segments[s].length / V_max;
    }

    std::map<std::vector<int>, int> group_of;
    std::vector<Group> groups;
    for (int s = 0; s < S; ++s) {
        const auto& seg = segments.segments[s];
        if (seg.contact.empty()) continue;
        auto [it, fresh] =
            group_of.try_emplace(seg.contact, static_cast<int>(groups.size()));
        if (fresh) {
            Group g;
            g.contact = seg.contact;
            groups.push_back(std::move(g));
        }
        groups[it->second].members.push_back(s);
        groups[it->second].length += seg.length;
    }

    // Eligible files per group, and the contact check for every cached pair.
    std::vector<std::vector<int>> groups_with_gn(policy.K());
    for (size_t g = 0; g < groups.size(); ++g)
        for (int k : groups[g].contact)
            groups_with_gn[k].push_back(static_cast<int>(g));
    for (int k = 0; k < policy.K(); ++k)
        for (int n = 0; n < N; ++n)
            if (policy.cached(k, n) && groups_with_gn[k].empty())
                throw ContractError("solve_p4: cached pair (" +
                                    std::to_string(k) + "," +
                                    std::to_string(n) +
                                    ") has no contact segment");
    for (auto& g : groups) {
        std::vector<char> eligible(N, 0);
        for (int k : g.contact)
            for (int n = 0; n < N; ++n)
                if (policy.cached(k, n)) eligible[n] = 1;
        for (int n = 0; n < N; ++n)
            if (eligible[n]) g.files.push_back(n);
    }

    if (policy.total_pairs() == 0 || groups.empty()) {
        sched.C_U = flight_time;
        sched.lp_lower = flight_time;
        return sched;
    }

    // Variable layout: H_g per group, then J_{g,n} per eligible (group,file).
    const int G = static_cast<int>(groups.size());
    std::vector<std::vector<int>> jvar(G);
    int nv = G;
    for (int g = 0; g < G; ++g) {
        jvar[g].assign(N, -1);
        for (int n : groups[g].files) jvar[g][n] = nv++;
    }

    // Rows: capacity per group, then deduplicated decoding rows. Two cached
    // pairs give the same row when the GNs share a group pattern and file.
    std::vector<Eigen::VectorXd> rows;
    std::vector<double> rhs;
    for (int g = 0; g < G; ++g) {
        Eigen::VectorXd row = Eigen::VectorXd::Zero(nv);
        row(g) = -1.0;
        for (int n : groups[g].files) row(jvar[g][n]) = t_p;
        rows.push_back(std::move(row));
        rhs.push_back(groups[g].length / V_max);
    }
    std::map<std::pair<std::vector<int>, int>, bool> seen_rows;
    for (int k = 0; k < policy.K(); ++k) {
        for (int n = 0; n < N; ++n) {
            if (!policy.cached(k, n)) continue;
            auto key = std::make_pair(groups_with_gn[k], n);
            if (seen_rows[key]) continue;
            seen_rows[key] = true;
            Eigen::VectorXd row = Eigen::VectorXd::Zero(nv);
            for (int g : groups_with_gn[k]) row(jvar[g][n]) = -1.0;
            rows.push_back(std::move(row));
            rhs.push_back(-static_cast<double>(Y));
        }
    }

    const int m = static_cast<int>(rows.size());
    Eigen::MatrixXd A(m, nv);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
        A.row(i) = rows[i];
        b(i) = rhs[i];
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(nv);
    c.head(G).setOnes();

    LpResult lp = solve_lp(c, A, b);
    if (lp.status != LpStatus::Optimal)
        throw ContractError("solve_p4: LP not optimal despite contact cover");
    sched.lp_lower = flight_time + lp.objective;

    // Integral repair: round group packet totals up, then pack them into the
    // member segments, consuming free flight-time capacity first; overflow
    // lands on the last member, costing exactly t_p per packet.
    for (int g = 0; g < G; ++g) {
        const auto& grp = groups[g];
        std::vector<int> free_cap(grp.members.size());
        for (size_t i = 0; i < grp.members.size(); ++i) {
            const double l = segments.segments[grp.members[i]].length;
            free_cap[i] = static_cast<int>(std::floor(l / V_max / t_p + 1e-9));
        }
        for (int n : grp.files) {
            int want = snap_ceil(lp.x(jvar[g][n]));
            for (size_t i = 0; i < grp.members.size() && want > 0; ++i) {
                const int take = std::min(want, free_cap[i]);
                if (take > 0) {
                    sched.packets(grp.members[i], n) += take;
                    free_cap[i] -= take;
                    want -= take;
                }
            }
            if (want > 0) sched.packets(grp.members.back(), n) += want;
        }
    }
    for (int s = 0; s < S; ++s) {
        const double need = t_p * sched.packets.row(s).sum();
        sched.rho(s) = std::max(segments.segments[s].length / V_max, need);
    }
    sched.C_U = sched.rho.sum();
    return sched;
}

double caching_cost(const Schedule& schedule) { return schedule.C_U; }

bool schedule_satisfies_p4(const Schedule& schedule,
                           const PathSegments& segments,
                           const CachingPolicy& policy,
                           const LinkBudget& budget, double V_max, int Y,
                           std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int S = static_cast<int>(segments.segments.size());
    if (schedule.rho.size() != S || schedule.packets.rows() != S ||
        schedule.packets.cols() != policy.N())
        return fail("shape mismatch");
    for (int s = 0; s < S; ++s) {
        if (schedule.rho(s) * V_max < segments.segments[s].length - 1e-6)
            return fail("speed constraint violated at segment " +
                        std::to_string(s));
        if ((schedule.packets.row(s).array() < 0).any())
            return fail("negative packet count at segment " +
                        std::to_string(s));
        const double cap = schedule.rho(s) / budget.t_p_U;
        if (schedule.packets.row(s).sum() > cap + 1e-6)
            return fail("capacity exceeded at segment " + std::to_string(s));
    }
    for (int k = 0; k < policy.K(); ++k) {
        for (int n = 0; n < policy.N(); ++n) {
            if (!policy.cached(k, n)) continue;
            long received = 0;
            for (int s = 0; s < S; ++s) {
                const auto& ct = segments.segments[s].contact;
                if (std::binary_search(ct.begin(), ct.end(), k))
                    received += schedule.packets(s, n);
            }
            if (received < Y)
                return fail("GN " + std::to_string(k) + " receives " +
                            std::to_string(received) + " < Y packets of file " +
                            std::to_string(n));
        }
    }
    if (std::abs(schedule.rho.sum() - schedule.C_U) > 1e-6)
        return fail("C_U does not equal the dwell sum");
    return true;
}

void save_schedule_csv(const Schedule& schedule, const PathSegments& segments,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ContractError("cannot write schedule file: " + path);
    out << "l,rho,contact";
    for (int n = 0; n < schedule.packets.cols(); ++n) out << ",p" << n;
    out << '\n';
    char buf[64];
    for (int s = 0; s < schedule.rho.size(); ++s) {
        std::snprintf(buf, sizeof buf, "%.17g", segments.segments[s].length);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", schedule.rho(s));
        out << buf << ',';
        const auto& ct = segments.segments[s].contact;
        for (size_t i = 0; i < ct.size(); ++i)
            out << (i ? "|" : "") << ct[i];
        for (int n = 0; n < schedule.packets.cols(); ++n)
            out << ',' << schedule.packets(s, n);
        out << '\n';
    }
    if (!out) throw ContractError("write failed: " + path);
}

}  // namespace uavcache
