#include "tha/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tha/attack.hpp"

namespace tha {

namespace {

constexpr double kRateFloor = 1e-9;
constexpr double kGolden = 0.6180339887498949;

double key_rate_at(double mu_d, double mu_t, const ChannelModel& ch) {
    const auto stats = bucket_stats(mu_t, ch.transmissivity(), ch.dephasing_error());
    const double delta = distinguishability(simplified_fidelity(mu_d, mu_t));
    return secret_key_rate(stats.p_succ, stats.eps, delta).key_rate;
}

}  // namespace

double ChannelModel::transmissivity() const { return std::exp(-length_km / attenuation_km); }

double ChannelModel::dephasing_error() const {
    return 0.5 * (1.0 - std::exp(-length_km / dephasing_km));
}

void ChannelModel::validate() const {
    if (length_km < 0.0) throw std::invalid_argument("ChannelModel: L must be >= 0");
    if (attenuation_km <= 0.0) throw std::invalid_argument("ChannelModel: L0 must be > 0");
    if (dephasing_km <= 0.0) throw std::invalid_argument("ChannelModel: L_Q must be > 0");
}

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("binary_entropy: x out of [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double effective_error(double eps, double delta) {
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("effective_error: eps out of [0,1]");
    if (delta < 0.0 || delta > 0.5) {
        throw std::invalid_argument("effective_error: delta out of [0,1/2]");
    }
    const double cross = delta * (1.0 - delta) * eps * (1.0 - eps);
    const double v = eps + 4.0 * delta * (1.0 - delta) * (1.0 - 2.0 * eps) +
                     4.0 * (1.0 - 2.0 * delta) * std::sqrt(std::max(cross, 0.0));
    return std::clamp(v, 0.0, 1.0);
}

DetectionStats bucket_stats(double mu_t, double transmissivity, double q_error) {
    if (mu_t < 0.0) throw std::invalid_argument("bucket_stats: mu_T must be >= 0");
    if (transmissivity <= 0.0 || transmissivity > 1.0) {
        throw std::invalid_argument("bucket_stats: T must be in (0,1]");
    }
    if (q_error < 0.0 || q_error > 0.5) throw std::invalid_argument("bucket_stats: Q out of [0,1/2]");
    const double t = transmissivity;
    const double p_succ = 2.0 * t * (2.0 + 2.0 * mu_t - t * mu_t) /
                          ((2.0 + t * mu_t) * (2.0 + t * mu_t));
    const double eps = (2.0 * q_error + mu_t * (1.0 - t + q_error * t)) /
                       (2.0 + mu_t * (2.0 - t));
    return {p_succ, eps, DetectorKind::Bucket};
}

DetectionStats pnrd_stats(double mu_t, double transmissivity, double q_error) {
    if (mu_t < 0.0) throw std::invalid_argument("pnrd_stats: mu_T must be >= 0");
    if (transmissivity <= 0.0 || transmissivity > 1.0) {
        throw std::invalid_argument("pnrd_stats: T must be in (0,1]");
    }
    if (q_error < 0.0 || q_error > 0.5) throw std::invalid_argument("pnrd_stats: Q out of [0,1/2]");
    const double t = transmissivity;
    const double mt = t * mu_t / 2.0;  // thermal photons per detector
    const double d1 = mt + 1.0;
    const double p_succ = t / (d1 * d1) + 2.0 * (1.0 - t) * mt / (d1 * d1 * d1);
    // wrong-detector contributions conditioned on a single registered photon
    const double wrong = t * q_error / (d1 * d1) + (1.0 - t) * mt / (d1 * d1 * d1);
    const double eps = wrong / p_succ;
    return {p_succ, eps, DetectorKind::Pnrd};
}

KeyRateResult secret_key_rate(double p_succ, double eps, double delta) {
    if (p_succ <= 0.0 || p_succ > 1.0) {
        throw std::invalid_argument("secret_key_rate: p_succ out of (0,1]");
    }
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("secret_key_rate: eps out of [0,1]");
    if (delta < 0.0 || delta > 0.5) {
        throw std::invalid_argument("secret_key_rate: delta out of [0,1/2]");
    }
    KeyRateResult res{};
    const double scaled = delta / p_succ;
    res.saturated = scaled >= 0.5;
    res.delta_used = std::min(scaled, 0.5);
    res.eps_tilde = effective_error(eps, res.delta_used);
    res.key_rate_raw =
        p_succ * (1.0 - binary_entropy(eps) - binary_entropy(res.eps_tilde));
    // Past saturation the formula is outside its domain of validity; the
    // secure rate is zero there even though the raw expression can revive.
    res.key_rate = res.saturated ? 0.0 : std::max(res.key_rate_raw, 0.0);
    return res;
}

double vanilla_key_rate(double raw_rate, double eps) {
    if (raw_rate < 0.0) throw std::invalid_argument("vanilla_key_rate: R must be >= 0");
    return std::max(raw_rate * (1.0 - 2.0 * binary_entropy(eps)), 0.0);
}

ThermalOptimum optimize_thermal(double mu_d, const ChannelModel& channel, double mu_t_min,
                                double mu_t_max, std::size_t grid_points) {
    channel.validate();
    if (grid_points == 0 || mu_t_max <= mu_t_min || mu_t_min <= 0.0) {
        throw std::invalid_argument("optimize_thermal: invalid search range");
    }
    auto k_of = [&](double m) { return key_rate_at(mu_d, m, channel); };
    // log grid plus the mu_T = 0 baseline; ties toward smaller mu_T
    double best_mu = 0.0;
    double best_k = k_of(0.0);
    const double lr = std::log(mu_t_max / mu_t_min);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double m = mu_t_min * std::exp(lr * static_cast<double>(i) /
                                             static_cast<double>(grid_points - 1));
        const double k = k_of(m);
        if (k > best_k + 1e-15) {
            best_k = k;
            best_mu = m;
        }
    }
    if (best_mu > 0.0) {
        const double step = std::exp(lr / static_cast<double>(grid_points - 1));
        double lo = best_mu / step, hi = best_mu * step;
        double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
        double f1 = k_of(x1), f2 = k_of(x2);
        for (int it = 0; it < 80 && hi - lo > 1e-12 * hi; ++it) {
            if (f1 > f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - kGolden * (hi - lo);
                f1 = k_of(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + kGolden * (hi - lo);
                f2 = k_of(x2);
            }
        }
        const double xr = f1 > f2 ? x1 : x2;
        const double fr = std::max(f1, f2);
        if (fr > best_k + 1e-15) {
            best_k = fr;
            best_mu = xr;
        }
    }
    ThermalOptimum opt{};
    opt.mu_t_star = best_mu;
    const auto stats =
        bucket_stats(best_mu, channel.transmissivity(), channel.dephasing_error());
    opt.best = secret_key_rate(stats.p_succ, stats.eps,
                               distinguishability(simplified_fidelity(mu_d, best_mu)));
    return opt;
}

std::vector<SweepRow> distance_sweep(double mu_d, const ChannelModel& channel_template,
                                     const std::vector<double>& lengths_km, bool optimize) {
    std::vector<SweepRow> rows;
    rows.reserve(lengths_km.size());
    for (double L : lengths_km) {
        ChannelModel ch = channel_template;
        ch.length_km = L;
        ch.validate();
        double mu_t = 0.0;
        if (optimize) mu_t = optimize_thermal(mu_d, ch).mu_t_star;
        const auto stats = bucket_stats(mu_t, ch.transmissivity(), ch.dephasing_error());
        const auto kr = secret_key_rate(stats.p_succ, stats.eps,
                                        distinguishability(simplified_fidelity(mu_d, mu_t)));
        rows.push_back({L, kr.key_rate, kr.key_rate_raw, stats.eps, kr.eps_tilde, stats.p_succ,
                        mu_t});
    }
    return rows;
}

double secure_range(const std::vector<SweepRow>& sweep, double mu_d,
                    const ChannelModel& channel_template, bool optimize) {
    auto k_of = [&](double L) {
        ChannelModel ch = channel_template;
        ch.length_km = L;
        if (!optimize) return key_rate_at(mu_d, 0.0, ch);
        return optimize_thermal(mu_d, ch).best.key_rate;
    };
    std::ptrdiff_t last = -1;
    for (std::size_t i = 0; i + 1 < sweep.size(); ++i) {
        if (sweep[i].key_rate > kRateFloor && sweep[i + 1].key_rate <= kRateFloor) {
            last = static_cast<std::ptrdiff_t>(i);
        }
    }
    if (last < 0) {
        if (!sweep.empty() && sweep.back().key_rate > kRateFloor) return sweep.back().length_km;
        throw std::runtime_error("secure_range: no secure range (all rates zero)");
    }
    double lo = sweep[static_cast<std::size_t>(last)].length_km;
    double hi = sweep[static_cast<std::size_t>(last) + 1].length_km;
    for (int it = 0; it < 60 && hi - lo > 1e-9 * std::max(1.0, hi); ++it) {
        const double mid = (lo + hi) / 2.0;
        if (k_of(mid) > kRateFloor) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2.0;
}

}  // namespace tha
