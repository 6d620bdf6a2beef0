#include "tha/shutter.hpp"

#include <cmath>
#include <stdexcept>

#include "tha/separable.hpp"

namespace tha {

void ShutterConfig::validate() const {
    if (!(t_open > 0.0) || !(t_open < t_period)) {
        throw std::invalid_argument("ShutterConfig: need 0 < t_S < t_P");
    }
    if (!(t_travel > 0.0)) throw std::invalid_argument("ShutterConfig: t_L must be > 0");
    if (!(reflectivity > 0.0) || !(reflectivity < 1.0)) {
        throw std::invalid_argument("ShutterConfig: eta_R must be in (0,1)");
    }
    if (photons_in < 0.0) throw std::invalid_argument("ShutterConfig: N must be >= 0");
    if (conv_width < 0.0) throw std::invalid_argument("ShutterConfig: delta must be >= 0");
    if (max_reflections < 1) throw std::invalid_argument("ShutterConfig: R_max must be >= 1");
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("ShutterConfig: eps out of [0,1]");
}

std::size_t reflection_count(const ShutterConfig& cfg) {
    cfg.validate();
    const double tp = cfg.t_period;
    const double snap = 1e-12 * std::max(1.0, tp);
    for (std::size_t r = 1; r <= cfg.max_reflections; ++r) {
        const double prod = static_cast<double>(r) * cfg.t_travel;
        double m = prod - std::floor(prod / tp) * tp;
        if (m > tp - snap) m = 0.0;  // wrap-around rounding
        if (m <= cfg.t_open + snap) return r;
    }
    throw std::runtime_error("reflection_count: no escape within R_max = " +
                             std::to_string(cfg.max_reflections));
}

double returned_mean_photons(double photons_in, double reflectivity, std::size_t reflections) {
    if (reflections < 1) throw std::invalid_argument("returned_mean_photons: R must be >= 1");
    return photons_in * std::pow(reflectivity, static_cast<double>(reflections - 1));
}

KeyRateResult shutter_key_rate(const ShutterConfig& cfg) {
    const std::size_t r = reflection_count(cfg);
    const double mu = returned_mean_photons(cfg.photons_in, cfg.reflectivity, r);
    if (mu > 2.0) {
        // distinguishability saturates at 1/2; no key survives
        KeyRateResult res{};
        res.key_rate = 0.0;
        res.key_rate_raw = 0.0;
        res.eps_tilde = effective_error(cfg.eps, 0.5);
        res.delta_used = 0.5;
        res.saturated = true;
        return res;
    }
    KeyRateResult res = secret_key_rate(1.0, cfg.eps, separable_delta_bound(mu));
    // Past an effective error of 1/2 the privacy-amplification bound no
    // longer certifies any key.
    if (res.eps_tilde >= 0.5) res.key_rate = 0.0;
    return res;
}

std::vector<TimedSample> minimizing_convolution(const std::vector<TimedSample>& samples,
                                                double delta) {
    if (delta < 0.0) throw std::invalid_argument("minimizing_convolution: delta must be >= 0");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].t < samples[i - 1].t) {
            throw std::invalid_argument("minimizing_convolution: samples must be sorted by t");
        }
    }
    std::vector<TimedSample> out;
    out.reserve(samples.size());
    const double pad = 1e-12 * std::max(1.0, delta);
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double wlo = samples[i].t - delta - pad;
        const double whi = samples[i].t + delta + pad;
        while (lo < samples.size() && samples[lo].t < wlo) ++lo;
        if (hi < lo) hi = lo;
        while (hi < samples.size() && samples[hi].t <= whi) ++hi;
        double m = samples[i].value;
        for (std::size_t j = lo; j < hi; ++j) m = std::min(m, samples[j].value);
        out.push_back({samples[i].t, m});
    }
    return out;
}

std::vector<ShutterSweepRow> travel_time_sweep(const ShutterConfig& cfg_template,
                                               const std::vector<double>& t_travel_grid) {
    std::vector<ShutterSweepRow> rows;
    rows.reserve(t_travel_grid.size());
    std::vector<TimedSample> raw;
    raw.reserve(t_travel_grid.size());
    for (double tl : t_travel_grid) {
        ShutterConfig cfg = cfg_template;
        cfg.t_travel = tl;
        const std::size_t r = reflection_count(cfg);
        const double mu = returned_mean_photons(cfg.photons_in, cfg.reflectivity, r);
        const auto kr = shutter_key_rate(cfg);
        rows.push_back({tl, r, mu, kr.key_rate, 0.0});
        raw.push_back({tl, kr.key_rate});
    }
    const auto conv = minimizing_convolution(raw, cfg_template.conv_width);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].key_rate_convolved = conv[i].value;
    return rows;
}

}  // namespace tha
