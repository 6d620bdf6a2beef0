#ifndef THA_KEYRATE_HPP
#define THA_KEYRATE_HPP

#include <cstddef>
#include <vector>

namespace tha {

/// Fibre + memory model. T = exp(-L/L0) is the channel transmissivity and
/// Q = (1 - exp(-L/L_Q))/2 the memory-dephasing bit-flip probability.
struct ChannelModel {
    double length_km = 0.0;
    double attenuation_km = 25.0;  // L0
    double dephasing_km = 150.0;   // L_Q

    double transmissivity() const;
    double dephasing_error() const;
    void validate() const;
};

enum class DetectorKind { Bucket, Pnrd };

struct DetectionStats {
    double p_succ;
    double eps;
    DetectorKind detector_kind;
};

struct KeyRateResult {
    double key_rate;       // clamped at 0; zero when delta saturates
    double key_rate_raw;   // unclamped value of the rate formula
    double eps_tilde;      // effective error used for privacy amplification
    double delta_used;     // distinguishability after p_succ scaling, capped at 1/2
    bool saturated;        // delta/p_succ reached 1/2
};

double binary_entropy(double x);

/// Effective error rate combining the measured error with distinguishability.
double effective_error(double eps, double delta);

/// Bob's click statistics with bucket detectors under thermal noise.
DetectionStats bucket_stats(double mu_t, double transmissivity, double q_error);

/// Photon-number-resolving variant; same error rate, lower success probability.
DetectionStats pnrd_stats(double mu_t, double transmissivity, double q_error);

KeyRateResult secret_key_rate(double p_succ, double eps, double delta);

/// Rate without any side-channel penalty: R [1 - 2 H2(eps)], clamped at 0.
double vanilla_key_rate(double raw_rate, double eps);

struct ThermalOptimum {
    double mu_t_star;
    KeyRateResult best;
};

/// Maximizes the key rate over the added thermal noise at one distance.
/// mu_T = 0 is always a candidate, so the result never loses to no defense.
ThermalOptimum optimize_thermal(double mu_d, const ChannelModel& channel,
                                double mu_t_min = 1e-4, double mu_t_max = 1e3,
                                std::size_t grid_points = 128);

struct SweepRow {
    double length_km;
    double key_rate;
    double key_rate_raw;
    double eps;
    double eps_tilde;
    double p_succ;
    double mu_t_opt;
};

std::vector<SweepRow> distance_sweep(double mu_d, const ChannelModel& channel_template,
                                     const std::vector<double>& lengths_km, bool optimize);

/// Largest distance with key rate above 1e-9, refined by bisection between
/// the bracketing sweep rows. Throws if no row has positive rate.
double secure_range(const std::vector<SweepRow>& sweep, double mu_d,
                    const ChannelModel& channel_template, bool optimize);

}  // namespace tha

#endif
