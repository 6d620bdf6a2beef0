#ifndef THA_SHUTTER_HPP
#define THA_SHUTTER_HPP

#include <cstddef>
#include <vector>

#include "tha/keyrate.hpp"

namespace tha {

/// Active shutter defense. Times are in units of the shutter period t_P.
struct ShutterConfig {
    double t_open = 0.1;        // t_S
    double t_period = 1.0;      // t_P
    double t_travel = 0.9;      // t_L, shutter -> apparatus round trip
    double reflectivity = 0.5;  // eta_R, rear-side reflectivity
    double photons_in = 1e6;    // N, injected mean photons
    double conv_width = 0.01;   // delta, timing-uncertainty half width
    std::size_t max_reflections = 10000;
    double eps = 0.0;           // assumed bit-error rate for the key-rate map

    void validate() const;
};

/// Smallest R >= 1 with (R t_L mod t_P) in [0, t_S], bounds inclusive.
/// Throws if no escape happens within max_reflections.
std::size_t reflection_count(const ShutterConfig& cfg);

/// mu = N eta_R^(R-1).
double returned_mean_photons(double photons_in, double reflectivity, std::size_t reflections);

/// Key rate with p_succ = 1 and the separable bound for Delta. When the
/// returned photon number exceeds 2 the distinguishability saturates and the
/// rate is zero.
KeyRateResult shutter_key_rate(const ShutterConfig& cfg);

struct TimedSample {
    double t;
    double value;
};

/// Maps each point to the minimum over the window [t - delta, t + delta];
/// endpoints use whatever part of the window the samples cover.
std::vector<TimedSample> minimizing_convolution(const std::vector<TimedSample>& samples,
                                                double delta);

struct ShutterSweepRow {
    double t_travel;
    std::size_t reflections;
    double mu;
    double key_rate_raw;
    double key_rate_convolved;
};

std::vector<ShutterSweepRow> travel_time_sweep(const ShutterConfig& cfg_template,
                                               const std::vector<double>& t_travel_grid);

}  // namespace tha

#endif
