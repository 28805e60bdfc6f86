#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lcu/core/types.hpp"

namespace lcu::harness {

enum class KeyType { integer, real, text, flag };

inline const char* to_string(KeyType t)
{
    switch (t) {
    case KeyType::integer:
        return "integer";
    case KeyType::real:
        return "real";
    case KeyType::flag:
        return "bool";
    default:
        return "string";
    }
}

struct KeySpec {
    std::string name;
    KeyType type;
    std::string fallback;
    std::string help;
};

inline const std::vector<std::string>& subcommands()
{
    static const std::vector<std::string> names = {
        "hamsim", "gsp", "qls", "analog-gsp", "analog-qls", "walks-search", "decomp-check", "sweep"};
    return names;
}

namespace detail {

inline std::vector<KeySpec> common_keys(const std::string& eps, const std::string& delta)
{
    return {
        {"seed", KeyType::integer, "1", "master seed"},
        {"eps", KeyType::real, eps, "target precision"},
        {"delta", KeyType::real, delta, "failure probability"},
        {"mode", KeyType::text, "expectation", "per-sample outcome: expectation|shot"},
        {"out", KeyType::text, "", "output path (stdout when empty)"},
        {"trace", KeyType::flag, "false", "write a per-sample CSV trace next to the output"},
        {"threads", KeyType::integer, "1", "worker threads"},
        {"repetitions", KeyType::integer, "0", "circuit runs per phase; 0 uses the Hoeffding count"},
    };
}

inline std::vector<KeySpec> gsp_keys()
{
    return {
        {"hamiltonian", KeyType::text, "0.5*II - 0.5*ZZ + 0.1*XI", "Hamiltonian in Pauli text"},
        {"observable", KeyType::text, "ZI", "observable in Pauli text"},
        {"state", KeyType::text, "00", "initial state label over 0 1 + -"},
        {"gap", KeyType::real, "1.019803902718557", "spectral gap lower bound"},
        {"eta", KeyType::real, "0.7071067811865476", "overlap lower bound"},
        {"e0", KeyType::real, "-0.0099019513592784", "ground energy estimate"},
        {"eps_g", KeyType::real, "0.01", "ground energy precision"},
    };
}

inline std::vector<KeySpec> qls_keys()
{
    return {
        {"hamiltonian", KeyType::text, "0.6*ZI + 0.4*XX", "Hamiltonian in Pauli text"},
        {"observable", KeyType::text, "ZI", "observable in Pauli text"},
        {"state", KeyType::text, "00", "right-hand side label over 0 1 + -"},
        {"kappa", KeyType::real, "5", "condition number bound"},
    };
}

inline std::vector<KeySpec> grid_keys()
{
    return {
        {"n_points", KeyType::integer, "4096", "quadrature points per ancilla grid"},
        {"z_max", KeyType::real, "0", "line grid half-width; 0 picks it from eps"},
        {"grid_tol", KeyType::real, "1e-8", "grid tolerance reported with the result"},
        {"check_convergence", KeyType::flag, "true", "reject results that move under grid refinement"},
    };
}

inline void append(std::vector<KeySpec>& a, const std::vector<KeySpec>& b) { a.insert(a.end(), b.begin(), b.end()); }

} // namespace detail

/// Every key a subcommand accepts, in display order.
inline std::vector<KeySpec> schema(const std::string& sub)
{
    using detail::append;
    std::vector<KeySpec> k;
    if (sub == "hamsim") {
        k = detail::common_keys("0.05", "0.05");
        append(k, {
                      {"hamiltonian", KeyType::text, "0.3*X + 0.4*Z", "Hamiltonian in Pauli text"},
                      {"observable", KeyType::text, "Z", "observable in Pauli text"},
                      {"state", KeyType::text, "0", "initial state label over 0 1 + -"},
                      {"time", KeyType::real, "1", "evolution time"},
                  });
    } else if (sub == "gsp") {
        k = detail::common_keys("0.1", "0.1");
        append(k, detail::gsp_keys());
        append(k, {{"imperfect", KeyType::flag, "false", "perturb every sampled unitary at the robustness bound"}});
    } else if (sub == "qls") {
        k = detail::common_keys("0.1", "0.1");
        append(k, detail::qls_keys());
    } else if (sub == "analog-gsp") {
        k = detail::common_keys("0.01", "0.1");
        append(k, detail::gsp_keys());
        append(k, detail::grid_keys());
    } else if (sub == "analog-qls") {
        k = detail::common_keys("0.01", "0.1");
        append(k, detail::qls_keys());
        append(k, detail::grid_keys());
        append(k, {{"ancilla", KeyType::text, "ring", "ancilla pair: ring|gaussian"}});
    } else if (sub == "walks-search") {
        k = detail::common_keys("0.1", "0.1");
        append(k, {
                      {"graph", KeyType::text, "cycle:16", "cycle:N, complete:N or file:<edge list>"},
                      {"marked", KeyType::text, "0", "comma-separated marked nodes"},
                      {"algo", KeyType::integer, "1", "1 = Chebyshev powers, 2 = Poisson-Chebyshev"},
                      {"trials", KeyType::integer, "2000", "independent search runs"},
                      {"c_t", KeyType::real, "1", "horizon multiplier on the hitting time"},
                      {"bigT", KeyType::real, "0", "explicit horizon; 0 uses c_t times the hitting time"},
                      {"slack", KeyType::flag, "true", "evaluate the ancilla-free bound over the whole schedule"},
                  });
    } else if (sub == "decomp-check") {
        k = detail::common_keys("0.001", "0.1");
        append(k, {
                      {"kind", KeyType::text, "gaussian", "gaussian|inverse|power|exp|gaussian_poly|taylor"},
                      {"t", KeyType::real, "25", "time or power parameter"},
                      {"kappa", KeyType::real, "10", "condition number for the inverse"},
                      {"grid", KeyType::integer, "2000", "scalar sup-check grid size"},
                      {"hamiltonian", KeyType::text, "", "optional Pauli text for the matrix check"},
                      {"segments", KeyType::integer, "1", "Taylor segments"},
                      {"order", KeyType::integer, "8", "Taylor truncation order"},
                  });
    } else if (sub == "sweep") {
        k = detail::common_keys("0.1", "0.1");
        append(k, {
                      {"target", KeyType::text, "hamsim", "subcommand to sweep"},
                      {"axis", KeyType::text, "time", "key varied across points"},
                      {"values", KeyType::text, "0.25,0.5,1,2", "comma-separated axis values"},
                      {"set", KeyType::text, "", "semicolon-separated key=value overrides for the target"},
                  });
    } else {
        throw ConfigError("unknown subcommand '" + sub + "'");
    }
    return k;
}

inline const KeySpec* find_key(const std::vector<KeySpec>& s, std::string_view name)
{
    const auto it = std::find_if(s.begin(), s.end(), [&](const KeySpec& k) { return k.name == name; });
    return it == s.end() ? nullptr : &*it;
}

inline std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto pos = s.find(sep, start);
        const auto piece = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (!piece.empty()) {
            out.push_back(piece);
        }
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

inline bool parse_bool(const std::string& v, const std::string& key)
{
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError("key '" + key + "' expects a bool, got '" + v + "'");
}

inline std::int64_t parse_integer(const std::string& v, const std::string& key)
{
    std::int64_t x = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
        throw ConfigError("key '" + key + "' expects an integer, got '" + v + "'");
    }
    return x;
}

inline double parse_real(const std::string& v, const std::string& key)
{
    double x = 0.0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(x)) {
        throw ConfigError("key '" + key + "' expects a finite real, got '" + v + "'");
    }
    return x;
}

/// Resolved flat configuration of one subcommand.
class ExperimentConfig {
public:
    ExperimentConfig() = default;

    explicit ExperimentConfig(std::string sub)
        : sub_(std::move(sub))
        , schema_(schema(sub_))
    {
        for (const auto& k : schema_) {
            values_[k.name] = k.fallback;
        }
    }

    const std::string& subcommand() const { return sub_; }
    const std::vector<KeySpec>& keys() const { return schema_; }
    const std::map<std::string, std::string>& values() const { return values_; }

    bool has(const std::string& key) const { return find_key(schema_, key) != nullptr; }

    /// Type-checked assignment; unknown keys are rejected.
    void set(const std::string& key, const std::string& raw)
    {
        const KeySpec* k = find_key(schema_, key);
        if (!k) {
            throw ConfigError("unknown key '" + key + "' for subcommand '" + sub_ + "'");
        }
        const std::string v = trim(raw);
        switch (k->type) {
        case KeyType::integer:
            parse_integer(v, key);
            break;
        case KeyType::real:
            parse_real(v, key);
            break;
        case KeyType::flag:
            parse_bool(v, key);
            break;
        case KeyType::text:
            break;
        }
        values_[key] = v;
    }

    const std::string& raw(const std::string& key) const
    {
        const auto it = values_.find(key);
        if (it == values_.end()) {
            throw ConfigError("key '" + key + "' not defined for subcommand '" + sub_ + "'");
        }
        return it->second;
    }

    std::string text(const std::string& key) const { return raw(key); }
    double real(const std::string& key) const { return parse_real(raw(key), key); }
    std::int64_t integer(const std::string& key) const { return parse_integer(raw(key), key); }
    bool flag(const std::string& key) const { return parse_bool(raw(key), key); }

    KeyType type(const std::string& key) const
    {
        const KeySpec* k = find_key(schema_, key);
        if (!k) {
            throw ConfigError("unknown key '" + key + "'");
        }
        return k->type;
    }

private:
    std::string sub_;
    std::vector<KeySpec> schema_;
    std::map<std::string, std::string> values_;
};

/// key=value lines; '#' starts a comment line; repeated keys are an error.
inline std::map<std::string, std::string> parse_config_text(std::string_view text)
{
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + " is not key=value");
        }
        const std::string key = trim(std::string_view(t).substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
        }
        if (!out.emplace(key, trim(std::string_view(t).substr(eq + 1))).second) {
            throw ConfigError("config key '" + key + "' repeated");
        }
    }
    return out;
}

inline std::map<std::string, std::string> read_config_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

/// Defaults, then file entries, then explicit flags.
inline ExperimentConfig resolve_config(const std::string& sub, const std::map<std::string, std::string>& file,
    const std::map<std::string, std::string>& flags)
{
    ExperimentConfig cfg(sub);
    for (const auto& [k, v] : file) {
        cfg.set(k, v);
    }
    for (const auto& [k, v] : flags) {
        cfg.set(k, v);
    }
    return cfg;
}

} // namespace lcu::harness
