#ifndef THA_CONFIG_HPP
#define THA_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tha {

/// Experiment parameters shared by all CLI commands. Defaults follow the
/// published reference point (mu_D = 0.1, L0 = 25 km).
struct RunConfig {
    double mu_d = 0.1;
    double l0_km = 25.0;
    double lq_km = 150.0;  // dephasing length for the longest tau label
    std::vector<double> tau_labels = {2.0, 5.0, 10.0};  // microseconds, ascending
    double eta = 1e-7;
    double budget_n = 1e6;
    double mu_t = 0.0;
    double length_km = 0.0;

    // fig3 sweep
    double l_max_km = 250.0;
    double l_step_km = 2.0;

    // fig4 grid
    std::size_t fig4_points = 100;
    double mu_max = 1.0;

    // shutter
    double shutter_t_open = 0.1;
    double shutter_t_period = 1.0;
    double shutter_t_travel = 0.9;
    double shutter_eta_r = 0.5;
    double shutter_n = 1e6;
    double shutter_delta = 0.01;
    std::uint64_t shutter_r_max = 10000;
    double shutter_eps = 0.0;
    std::size_t fig5_points = 1000;

    std::string output_path;  // empty = stdout
    std::uint64_t rng_seed = 12345;

    /// Full resolved configuration, one key=value per line entry.
    std::vector<std::string> describe() const;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses line-oriented key=value text ('#' starts a comment). Unknown keys
/// and out-of-range values raise ConfigError naming the key and line.
RunConfig parse_config(const std::string& text);

/// Applies one key=value override (CLI flags win over file values).
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value,
                    const std::string& where);

void validate_config(const RunConfig& cfg);

}  // namespace tha

#endif
