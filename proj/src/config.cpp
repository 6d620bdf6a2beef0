#include "tha/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace tha {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(where + ": value '" + v + "' for key '" + key + "' is not a number");
    }
}

std::uint64_t parse_u64(const std::string& v, const std::string& key, const std::string& where) {
    try {
        std::size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(where + ": value '" + v + "' for key '" + key +
                          "' is not a nonnegative integer");
    }
}

std::vector<double> parse_list(const std::string& v, const std::string& key,
                               const std::string& where) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double(item, key, where));
    }
    if (out.empty()) throw ConfigError(where + ": key '" + key + "' needs a nonempty list");
    return out;
}

void require(bool ok, const std::string& where, const std::string& key, const std::string& what) {
    if (!ok) throw ConfigError(where + ": key '" + key + "' out of range (" + what + ")");
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::vector<std::string> RunConfig::describe() const {
    std::vector<std::string> out;
    out.push_back("mu_D=" + fmt(mu_d));
    out.push_back("L0_km=" + fmt(l0_km));
    out.push_back("L_Q_km=" + fmt(lq_km));
    std::string labels;
    for (std::size_t i = 0; i < tau_labels.size(); ++i) {
        if (i) labels += ',';
        labels += fmt(tau_labels[i]);
    }
    out.push_back("tau_labels=" + labels);
    out.push_back("eta=" + fmt(eta));
    out.push_back("N=" + fmt(budget_n));
    out.push_back("mu_T=" + fmt(mu_t));
    out.push_back("L_km=" + fmt(length_km));
    out.push_back("L_max_km=" + fmt(l_max_km));
    out.push_back("L_step_km=" + fmt(l_step_km));
    out.push_back("fig4_points=" + std::to_string(fig4_points));
    out.push_back("mu_max=" + fmt(mu_max));
    out.push_back("shutter_t_S=" + fmt(shutter_t_open));
    out.push_back("shutter_t_P=" + fmt(shutter_t_period));
    out.push_back("shutter_t_L=" + fmt(shutter_t_travel));
    out.push_back("shutter_eta_R=" + fmt(shutter_eta_r));
    out.push_back("shutter_N=" + fmt(shutter_n));
    out.push_back("shutter_delta=" + fmt(shutter_delta));
    out.push_back("shutter_R_max=" + std::to_string(shutter_r_max));
    out.push_back("shutter_eps=" + fmt(shutter_eps));
    out.push_back("fig5_points=" + std::to_string(fig5_points));
    out.push_back("output=" + output_path);
    out.push_back("rng_seed=" + std::to_string(rng_seed));
    return out;
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value,
                    const std::string& where) {
    if (key == "mu_D") {
        cfg.mu_d = parse_double(value, key, where);
        require(cfg.mu_d >= 0.0, where, key, "mu_D >= 0");
    } else if (key == "L0_km") {
        cfg.l0_km = parse_double(value, key, where);
        require(cfg.l0_km > 0.0, where, key, "L0 > 0");
    } else if (key == "L_Q_km") {
        cfg.lq_km = parse_double(value, key, where);
        require(cfg.lq_km > 0.0, where, key, "L_Q > 0");
    } else if (key == "tau_labels") {
        cfg.tau_labels = parse_list(value, key, where);
        for (double t : cfg.tau_labels) require(t > 0.0, where, key, "tau > 0");
        require(std::is_sorted(cfg.tau_labels.begin(), cfg.tau_labels.end()), where, key,
                "labels ascending");
    } else if (key == "eta") {
        cfg.eta = parse_double(value, key, where);
        require(cfg.eta > 0.0 && cfg.eta <= 1.0, where, key, "eta in (0,1]");
    } else if (key == "N") {
        cfg.budget_n = parse_double(value, key, where);
        require(cfg.budget_n >= 0.0, where, key, "N >= 0");
    } else if (key == "mu_T") {
        cfg.mu_t = parse_double(value, key, where);
        require(cfg.mu_t >= 0.0, where, key, "mu_T >= 0");
    } else if (key == "L_km") {
        cfg.length_km = parse_double(value, key, where);
        require(cfg.length_km >= 0.0, where, key, "L >= 0");
    } else if (key == "L_max_km") {
        cfg.l_max_km = parse_double(value, key, where);
        require(cfg.l_max_km > 0.0, where, key, "L_max > 0");
    } else if (key == "L_step_km") {
        cfg.l_step_km = parse_double(value, key, where);
        require(cfg.l_step_km > 0.0, where, key, "L_step > 0");
    } else if (key == "fig4_points") {
        cfg.fig4_points = static_cast<std::size_t>(parse_u64(value, key, where));
        require(cfg.fig4_points >= 2, where, key, "at least 2 points");
    } else if (key == "mu_max") {
        cfg.mu_max = parse_double(value, key, where);
        require(cfg.mu_max > 0.0 && cfg.mu_max <= 2.0, where, key, "mu_max in (0,2]");
    } else if (key == "shutter_t_S") {
        cfg.shutter_t_open = parse_double(value, key, where);
        require(cfg.shutter_t_open > 0.0, where, key, "t_S > 0");
    } else if (key == "shutter_t_P") {
        cfg.shutter_t_period = parse_double(value, key, where);
        require(cfg.shutter_t_period > 0.0, where, key, "t_P > 0");
    } else if (key == "shutter_t_L") {
        cfg.shutter_t_travel = parse_double(value, key, where);
        require(cfg.shutter_t_travel > 0.0, where, key, "t_L > 0");
    } else if (key == "shutter_eta_R") {
        cfg.shutter_eta_r = parse_double(value, key, where);
        require(cfg.shutter_eta_r > 0.0 && cfg.shutter_eta_r < 1.0, where, key, "eta_R in (0,1)");
    } else if (key == "shutter_N") {
        cfg.shutter_n = parse_double(value, key, where);
        require(cfg.shutter_n >= 0.0, where, key, "N >= 0");
    } else if (key == "shutter_delta") {
        cfg.shutter_delta = parse_double(value, key, where);
        require(cfg.shutter_delta >= 0.0, where, key, "delta >= 0");
    } else if (key == "shutter_R_max") {
        cfg.shutter_r_max = parse_u64(value, key, where);
        require(cfg.shutter_r_max >= 1, where, key, "R_max >= 1");
    } else if (key == "shutter_eps") {
        cfg.shutter_eps = parse_double(value, key, where);
        require(cfg.shutter_eps >= 0.0 && cfg.shutter_eps <= 1.0, where, key, "eps in [0,1]");
    } else if (key == "fig5_points") {
        cfg.fig5_points = static_cast<std::size_t>(parse_u64(value, key, where));
        require(cfg.fig5_points >= 2, where, key, "at least 2 points");
    } else if (key == "output") {
        cfg.output_path = value;
    } else if (key == "rng_seed") {
        cfg.rng_seed = parse_u64(value, key, where);
    } else {
        throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        apply_override(cfg, key, value, "line " + std::to_string(lineno));
    }
    validate_config(cfg);
    return cfg;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.shutter_t_open >= cfg.shutter_t_period) {
        throw ConfigError("config: shutter_t_S must be < shutter_t_P");
    }
}

}  // namespace tha
