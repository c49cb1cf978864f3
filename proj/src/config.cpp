#include "hiphop/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hiphop {

namespace {

double parse_double(const std::string& text, const std::string& field) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE)
        throw ConfigError("field '" + field + "': cannot parse '" + text + "' as a number");
    return v;
}

int parse_int(const std::string& text, const std::string& field) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE)
        throw ConfigError("field '" + field + "': cannot parse '" + text + "' as an integer");
    return static_cast<int>(v);
}

std::int64_t parse_int64(const std::string& text, const std::string& field) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE)
        throw ConfigError("field '" + field + "': cannot parse '" + text + "' as an integer");
    return v;
}

std::vector<double> parse_grid(const std::string& text, const std::string& field) {
    std::vector<double> grid;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ','))
        grid.push_back(parse_double(item, field));
    return grid;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Applies one key/value pair; returns false for unknown keys.
bool apply_kv(const std::string& key, const std::string& value, RunConfig& cfg) {
    if (key == "N") cfg.N = parse_int(value, key);
    else if (key == "m") cfg.m = parse_double(value, key);
    else if (key == "r0") cfg.r0 = parse_double(value, key);
    else if (key == "rel_tol") cfg.integ.relTol = parse_double(value, key);
    else if (key == "abs_tol") cfg.integ.absTol = parse_double(value, key);
    else if (key == "max_step") cfg.integ.maxStep = parse_double(value, key);
    else if (key == "max_steps") cfg.integ.maxSteps = parse_int64(value, key);
    else if (key == "r_min_factor") cfg.integ.rMinFactor = parse_double(value, key);
    else if (key == "fd_step") cfg.newton.fdStep = parse_double(value, key);
    else if (key == "tol_residual") cfg.newton.tolResidual = parse_double(value, key);
    else if (key == "max_iter") cfg.newton.maxIter = parse_int(value, key);
    else if (key == "damping") cfg.newton.damping = parse_double(value, key);
    else if (key == "step_init") cfg.cont.stepInit = parse_double(value, key);
    else if (key == "step_grow") cfg.cont.stepGrow = parse_double(value, key);
    else if (key == "step_shrink") cfg.cont.stepShrink = parse_double(value, key);
    else if (key == "step_min") cfg.cont.stepMin = parse_double(value, key);
    else if (key == "step_max") cfg.cont.stepMax = parse_double(value, key);
    else if (key == "family_tol") cfg.cont.familyTol = parse_double(value, key);
    else if (key == "classify_tol") cfg.classifyTol = parse_double(value, key);
    else if (key == "verify_tol") cfg.verifyTol = parse_double(value, key);
    else if (key == "samples") cfg.samples = parse_int(value, key);
    else if (key == "a") cfg.a = parse_double(value, key);
    else if (key == "b") cfg.b = parse_double(value, key);
    else if (key == "u") cfg.u = parse_double(value, key);
    else if (key == "T") cfg.T = parse_double(value, key);
    else if (key == "k") cfg.k = parse_int(value, key);
    else if (key == "b_max") cfg.bMax = parse_double(value, key);
    else if (key == "t_end") cfg.tEnd = parse_double(value, key);
    else if (key == "u_grid") cfg.uGrid = parse_grid(value, key);
    else if (key == "out") cfg.out = value;
    else return false;
    return true;
}

} // namespace

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        try {
            if (!apply_kv(key, value, cfg))
                throw ConfigError("unknown field '" + key + "'");
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void apply_flags(const std::vector<std::string>& args, RunConfig& cfg) {
    // flag --foo-bar maps to config key foo_bar
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& arg = args[i];
        if (arg.rfind("--", 0) != 0)
            throw ConfigError("unexpected argument '" + arg + "'");
        std::string key;
        std::string value;
        bool haveValue = false;
        const auto eq = arg.find('=');
        if (eq != std::string::npos) {
            key = arg.substr(2, eq - 2);
            value = arg.substr(eq + 1);
            haveValue = true;
        } else {
            key = arg.substr(2);
        }
        for (char& c : key)
            if (c == '-') c = '_';
        if (!haveValue) {
            if (i + 1 >= args.size())
                throw ConfigError("flag '" + arg + "' is missing its value");
            value = args[++i];
        }
        if (!apply_kv(key, value, cfg))
            throw ConfigError("unknown flag '" + arg + "'");
    }
}

RunConfig make_config(const std::vector<std::string>& args) {
    RunConfig cfg;
    if (const char* path = std::getenv("HIPHOP_CONFIG"))
        if (path[0] != '\0') load_config_file(path, cfg);
    apply_flags(args, cfg);
    return cfg;
}

ProblemParams params_from(const RunConfig& cfg) {
    try {
        return ProblemParams(cfg.N, cfg.m, cfg.r0);
    } catch (const InvalidParams& e) {
        throw ConfigError(e.what());
    }
}

} // namespace hiphop
