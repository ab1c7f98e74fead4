#include "bbm/config.hpp"
#include "bbm/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace bbm {

namespace {

const std::vector<std::string> kKnownKeys = {
    "alpha",          "beta",           "gamma",            "period",
    "u0.kind",        "u0.params",      "g.kind",           "g.params",
    "f.spatial.kind", "f.spatial.params", "f.temporal.kind", "f.temporal.params",
    "grid.x",         "grid.t",         "quad.epsilon",     "quad.rel_tol",
    "fd.L",           "fd.nx",          "fd.dt",            "picard.dt",
    "picard.tol",
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = (int)j;
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = (int)i;
        for (size_t j = 1; j <= b.size(); ++j) {
            const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string suggest_key(const std::string& key) {
    std::string best;
    int best_d = 1 << 30;
    for (const auto& k : kKnownKeys) {
        const int d = edit_distance(key, k);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best_d <= 4 ? best : "";
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (trim(v.substr(pos)).size())
            throw ConfigError("trailing characters after number in " + key);
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        throw ConfigError("key " + key + ": cannot parse '" + v + "' as a number");
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("key " + key + ": empty list entry");
        out.push_back(parse_double(key, item));
    }
    return out;
}

// grid axis: "lo:hi:n" linspace or explicit comma list
Eigen::ArrayXd parse_axis(const std::string& key, const std::string& v) {
    if (v.find(':') != std::string::npos) {
        std::stringstream ss(v);
        std::string part;
        std::vector<std::string> parts;
        while (std::getline(ss, part, ':')) parts.push_back(trim(part));
        if (parts.size() != 3)
            throw ConfigError("key " + key + ": expected lo:hi:n");
        const double lo = parse_double(key, parts[0]);
        const double hi = parse_double(key, parts[1]);
        const int n = (int)parse_double(key, parts[2]);
        return Grid::linspace(lo, hi, n);
    }
    const auto lst = parse_list(key, v);
    Eigen::ArrayXd out((Eigen::Index)lst.size());
    for (size_t i = 0; i < lst.size(); ++i) out[(Eigen::Index)i] = lst[i];
    return out;
}

FunctionDescriptor make_descriptor(const std::string& prefix, const std::string& kind,
                                   const std::vector<double>& params) {
    FunctionDescriptor d;
    d.kind = kind_from_string(kind);
    d.params = params;
    // eval once to trigger the per-kind parameter count check
    switch (d.kind) {
        case FunctionKind::Zero:
            if (!params.empty())
                throw ConfigError(prefix + ": zero takes no parameters");
            break;
        default:
            eval_function(d, 0.0);
    }
    return d;
}

} // namespace

void apply_override(std::map<std::string, std::string>& kv, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must be key=value, got '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string val = trim(assignment.substr(eq + 1));
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
        const std::string hint = suggest_key(key);
        throw ConfigError("unknown key '" + key + "'" +
                          (hint.empty() ? "" : " (did you mean '" + hint + "'?)"));
    }
    kv[key] = val;
}

RunSettings settings_from_map(const std::map<std::string, std::string>& kv) {
    RunSettings s;
    auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (auto v = get("alpha")) s.spec.alpha = parse_double("alpha", *v);
    if (auto v = get("beta")) s.spec.beta_nl = parse_double("beta", *v);
    if (auto v = get("gamma")) s.spec.gamma = parse_double("gamma", *v);
    if (auto v = get("period")) s.spec.period = parse_double("period", *v);

    auto fn = [&](const char* base, FunctionDescriptor& into) {
        const std::string kind_key = std::string(base) + ".kind";
        const std::string params_key = std::string(base) + ".params";
        auto kind = kv.find(kind_key);
        auto params = kv.find(params_key);
        if (kind == kv.end()) {
            if (params != kv.end())
                throw ConfigError(params_key + " given without " + kind_key);
            return;
        }
        std::vector<double> p;
        if (params != kv.end()) p = parse_list(params_key, params->second);
        into = make_descriptor(base, trim(kind->second), p);
    };
    fn("u0", s.spec.u0);
    fn("g", s.spec.g);
    fn("f.spatial", s.spec.f.spatial);
    fn("f.temporal", s.spec.f.temporal);

    if (auto v = get("grid.x")) s.grid.x = parse_axis("grid.x", *v);
    if (auto v = get("grid.t")) s.grid.t = parse_axis("grid.t", *v);
    check_grid_axis(s.grid.x, "x");
    check_grid_axis(s.grid.t, "t");

    if (auto v = get("quad.epsilon")) s.quad.epsilon = parse_double("quad.epsilon", *v);
    if (auto v = get("quad.rel_tol")) s.quad.rel_tol = parse_double("quad.rel_tol", *v);
    if (auto v = get("fd.L")) s.fd.L = parse_double("fd.L", *v);
    if (auto v = get("fd.nx")) s.fd.nx = (int)parse_double("fd.nx", *v);
    if (auto v = get("fd.dt")) s.fd.dt = parse_double("fd.dt", *v);
    if (auto v = get("picard.dt")) s.picard.dt = parse_double("picard.dt", *v);
    if (auto v = get("picard.tol")) s.picard.fp_tol = parse_double("picard.tol", *v);
    return s;
}

RunSettings parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::map<std::string, int> first_line;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
            const std::string hint = suggest_key(key);
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key +
                              "'" + (hint.empty() ? "" : " (did you mean '" + hint + "'?)"));
        }
        if (kv.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key +
                              "' (first set on line " + std::to_string(first_line[key]) + ")");
        kv[key] = val;
        first_line[key] = lineno;
    }
    return settings_from_map(kv);
}

RunSettings parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string fmt_axis(const Eigen::ArrayXd& v) {
    std::ostringstream os;
    os.precision(17);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    return os.str();
}

std::string fmt_params(const std::vector<double>& p) {
    std::ostringstream os;
    os.precision(17);
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) os << ",";
        os << p[i];
    }
    return os.str();
}

} // namespace

std::map<std::string, std::string> config_to_map(const RunSettings& s) {
    std::map<std::string, std::string> kv;
    kv["alpha"] = fmt(s.spec.alpha);
    kv["beta"] = fmt(s.spec.beta_nl);
    kv["gamma"] = fmt(s.spec.gamma);
    if (s.spec.period) kv["period"] = fmt(*s.spec.period);
    kv["u0.kind"] = kind_to_string(s.spec.u0.kind);
    if (!s.spec.u0.params.empty()) kv["u0.params"] = fmt_params(s.spec.u0.params);
    kv["g.kind"] = kind_to_string(s.spec.g.kind);
    if (!s.spec.g.params.empty()) kv["g.params"] = fmt_params(s.spec.g.params);
    kv["f.spatial.kind"] = kind_to_string(s.spec.f.spatial.kind);
    if (!s.spec.f.spatial.params.empty())
        kv["f.spatial.params"] = fmt_params(s.spec.f.spatial.params);
    kv["f.temporal.kind"] = kind_to_string(s.spec.f.temporal.kind);
    if (!s.spec.f.temporal.params.empty())
        kv["f.temporal.params"] = fmt_params(s.spec.f.temporal.params);
    kv["grid.x"] = fmt_axis(s.grid.x);
    kv["grid.t"] = fmt_axis(s.grid.t);
    kv["quad.epsilon"] = fmt(s.quad.epsilon);
    kv["quad.rel_tol"] = fmt(s.quad.rel_tol);
    kv["fd.L"] = fmt(s.fd.L);
    kv["fd.nx"] = fmt(s.fd.nx);
    kv["fd.dt"] = fmt(s.fd.dt);
    kv["picard.dt"] = fmt(s.picard.dt);
    kv["picard.tol"] = fmt(s.picard.fp_tol);
    return kv;
}

std::string serialize_config(const RunSettings& s) {
    std::ostringstream os;
    for (const auto& [k, v] : config_to_map(s)) os << k << " = " << v << "\n";
    return os.str();
}

} // namespace bbm
