#include "uavcache/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "uavcache/errors.hpp"

namespace uavcache {
namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void validate(const SystemParams& p) {
    auto fail = [](const std::string& what) { throw ConfigError(what); };
    if (p.K < 1) fail("K must be >= 1");
    if (p.N < 1) fail("N must be >= 1");
    if (p.Q < 1) fail("Q must be >= 1");
    // A too-small library is well-formed but unsolvable: no placement can
    // cover every file, so this one maps to the infeasible exit code.
    if (static_cast<long long>(p.K) * p.Q < p.N)
        throw InfeasibleError(
            "K*Q >= N required: total cache capacity cannot hold the library");
    if (!(p.area_side > 0)) fail("area_side must be positive");
    if (!(p.H > 0)) fail("H must be positive");
    if (!(p.V_max > 0)) fail("V_max must be positive");
    if (p.R_p < 1) fail("R_p must be >= 1");
    if (p.Y < 1) fail("Y must be >= 1");
    if (p.kappa < 0) fail("kappa must be >= 0");
    if (!(p.B_U > 0) || !(p.B_G > 0)) fail("bandwidths must be positive");
    if (!(p.R_U > 0) || !(p.R_G > 0)) fail("rates must be positive");
    if (!(p.alpha > 0)) fail("alpha must be positive");
    if (!(p.delta_t > 0)) fail("delta_t must be positive");
    if (p.epsilon_term < 0) fail("epsilon_term must be >= 0");

    // Coverage radius needs gamma0_U / gamma_th_U >= H^2 (radio module holds
    // the authoritative derivation; the same expression is checked here so a
    // bad config dies before any scenario is built).
    const double gamma0_U = db_to_linear(p.P_U + p.beta0_U - p.sigma2);
    const double gamma_th_U =
        (std::pow(2.0, p.R_U / p.B_U) - 1.0) * db_to_linear(p.Gamma);
    if (gamma0_U / gamma_th_U < p.H * p.H)
        fail("UAV rate unsupportable at altitude H (coverage radius radicand "
             "is negative)");

    if (p.delta_t * p.V_max >= p.H)
        fail("delta_t*V_max must stay below H (per-slot displacement breaks "
             "the static-hover channel approximation)");

    const double L = p.delta_t * p.R_U / p.R_p;
    if (L < 1.0 - 1e-9 || std::abs(L - std::round(L)) > 1e-9 * std::max(1.0, L))
        fail("L = delta_t*R_U/R_p must be a positive integer, got " +
             fmt_double(L));
}

std::vector<std::string> param_warnings(const SystemParams& p) {
    std::vector<std::string> w;
    if (p.delta_t * p.V_max > p.H / 10.0)
        w.push_back("delta_t*V_max = " + fmt_double(p.delta_t * p.V_max) +
                    " m exceeds H/10 = " + fmt_double(p.H / 10.0) +
                    " m; per-slot channel variation may be non-negligible");
    return w;
}

Eigen::VectorXd zipf_popularity(int N, double kappa) {
    Eigen::VectorXd v(N);
    for (int n = 0; n < N; ++n) v(n) = std::pow(static_cast<double>(n + 1), -kappa);
    v /= v.sum();
    return v;
}

Scenario generate_scenario(const SystemParams& p,
                           const std::optional<Eigen::MatrixXd>& popularity) {
    validate(p);
    Scenario s;
    s.params = p;

    // mt19937_64's output sequence is pinned by the standard, and the
    // shift-multiply mapping to [0,1) below avoids the library-specific
    // std::uniform_real_distribution, so positions are bitwise-reproducible
    // across platforms.
    std::mt19937_64 rng(static_cast<uint64_t>(p.rng_seed));
    auto unit = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
    s.positions.reserve(p.K);
    for (int k = 0; k < p.K; ++k) {
        const double x = unit() * p.area_side;
        const double y = unit() * p.area_side;
        s.positions.push_back({x, y});
    }

    if (popularity) {
        if (popularity->rows() != p.K || popularity->cols() != p.N)
            throw ConfigError("popularity matrix must be K x N");
        for (int k = 0; k < p.K; ++k) {
            if (std::abs(popularity->row(k).sum() - 1.0) > 1e-9)
                throw ConfigError("popularity row " + std::to_string(k) +
                                  " does not sum to 1");
            if ((popularity->row(k).array() < 0).any())
                throw ConfigError("popularity entries must be nonnegative");
        }
        s.popularity = *popularity;
    } else {
        s.popularity = zipf_popularity(p.N, p.kappa)
                           .transpose()
                           .replicate(p.K, 1);
    }
    return s;
}

namespace {

// One row per field keeps load/save in lockstep; the lambda pair gives each
// field its parser and printer without any reflection machinery.
struct FieldIo {
    const char* key;
    bool required;
    void (*parse)(SystemParams&, const std::string&, const std::string&);
    std::string (*print)(const SystemParams&);
};

[[noreturn]] void parse_fail(const std::string& where, const std::string& msg) {
    throw ConfigError(where + ": " + msg);
}

double parse_double(const std::string& v, const std::string& where) {
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || !std::isfinite(d))
        parse_fail(where, "expected a number, got '" + v + "'");
    return d;
}

long long parse_int(const std::string& v, const std::string& where) {
    char* end = nullptr;
    const long long i = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        parse_fail(where, "expected an integer, got '" + v + "'");
    return i;
}

bool parse_bool(const std::string& v, const std::string& where) {
    if (v == "0" || v == "false") return false;
    if (v == "1" || v == "true") return true;
    parse_fail(where, "expected 0/1/true/false, got '" + v + "'");
}

#define INT_FIELD(name)                                                     \
    FieldIo{#name, true,                                                    \
            [](SystemParams& p, const std::string& v,                       \
               const std::string& w) { p.name = static_cast<int>(parse_int(v, w)); }, \
            [](const SystemParams& p) { return std::to_string(p.name); }}
#define DBL_FIELD(name)                                                     \
    FieldIo{#name, true,                                                    \
            [](SystemParams& p, const std::string& v,                       \
               const std::string& w) { p.name = parse_double(v, w); },      \
            [](const SystemParams& p) { return fmt_double(p.name); }}

const FieldIo kFields[] = {
    INT_FIELD(K),
    INT_FIELD(N),
    INT_FIELD(Q),
    DBL_FIELD(area_side),
    DBL_FIELD(H),
    DBL_FIELD(V_max),
    INT_FIELD(R_p),
    INT_FIELD(Y),
    DBL_FIELD(kappa),
    DBL_FIELD(B_U),
    DBL_FIELD(B_G),
    DBL_FIELD(R_U),
    DBL_FIELD(R_G),
    DBL_FIELD(P_U),
    DBL_FIELD(P_G),
    DBL_FIELD(beta0_U),
    DBL_FIELD(beta0_G),
    DBL_FIELD(sigma2),
    DBL_FIELD(Gamma),
    DBL_FIELD(alpha),
    DBL_FIELD(delta_t),
    DBL_FIELD(epsilon_term),
    FieldIo{"rng_seed", true,
            [](SystemParams& p, const std::string& v, const std::string& w) {
                p.rng_seed = parse_int(v, w);
            },
            [](const SystemParams& p) { return std::to_string(p.rng_seed); }},
    FieldIo{"closed_tour", false,
            [](SystemParams& p, const std::string& v, const std::string& w) {
                p.closed_tour = parse_bool(v, w);
            },
            [](const SystemParams& p) {
                return std::string(p.closed_tour ? "1" : "0");
            }},
};

#undef INT_FIELD
#undef DBL_FIELD

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

SystemParams load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    SystemParams p;
    std::map<std::string, bool> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path + ":" + std::to_string(lineno);
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            parse_fail(where, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            parse_fail(where, "expected 'key = value'");

        const FieldIo* field = nullptr;
        for (const auto& f : kFields)
            if (key == f.key) {
                field = &f;
                break;
            }
        if (!field) parse_fail(where, "unknown config key '" + key + "'");
        if (seen[key]) parse_fail(where, "duplicate config key '" + key + "'");
        seen[key] = true;
        field->parse(p, val, where);
    }
    for (const auto& f : kFields)
        if (f.required && !seen[f.key])
            throw ConfigError(path + ": missing field " + f.key);
    validate(p);
    return p;
}

void save_config(const SystemParams& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file: " + path);
    for (const auto& f : kFields)
        out << f.key << " = " << f.print(p) << "\n";
    if (!out) throw ConfigError("write failed: " + path);
}

void export_scenario_json(const Scenario& s, const std::string& path) {
    nlohmann::json j;
    for (const auto& f : kFields) j["params"][f.key] = f.print(s.params);
    auto& pos = j["positions"];
    pos = nlohmann::json::array();
    for (const auto& w : s.positions) pos.push_back({w.x(), w.y()});
    auto& pop = j["popularity"];
    pop = nlohmann::json::array();
    for (int k = 0; k < s.popularity.rows(); ++k) {
        nlohmann::json row = nlohmann::json::array();
        for (int n = 0; n < s.popularity.cols(); ++n)
            row.push_back(s.popularity(k, n));
        pop.push_back(std::move(row));
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write scenario file: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw ConfigError("write failed: " + path);
}

}  // namespace uavcache
