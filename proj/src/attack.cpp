#include "tha/attack.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace tha {

namespace {

constexpr double kGolden = 0.6180339887498949;

GaussianState physical_state(const AttackConfig& cfg, double theta, NoiseModel noise) {
    GaussianState s = vacuum(2);
    const double xi = cfg.xi_e();
    if (xi > 0.0) s = two_mode_squeeze(s, 0, 1, xi);
    const double amp = std::sqrt((1.0 - cfg.squeeze_fraction) * cfg.budget_n);
    if (amp > 0.0) {
        s = displace(s, 0, std::polar(amp, cfg.phi));
    }
    s = pure_loss(s, 0, cfg.eta);
    s = phase_rotate(s, 0, theta);
    if (cfg.mu_t > 0.0) {
        s = noise == NoiseModel::Additive ? add_thermal_additive(s, 0, cfg.mu_t)
                                          : add_thermal_tms(s, 0, cfg.mu_t);
    }
    return s;
}

GaussianState paper_exact_state(const AttackConfig& cfg, double theta) {
    const double omega = cfg.omega();
    const double mu_t = cfg.mu_t;
    const double a = (1.0 + mu_t) * omega * cfg.eta + mu_t;
    const double cross = std::sqrt((1.0 + mu_t) * (omega * omega - 1.0) * cfg.eta);
    const double r = std::sqrt(2.0 * cfg.mu_d());
    const double sp = std::sin(cfg.phi), cp = std::cos(cfg.phi);

    // xxpp ordering [x_s, x_i, p_s, p_i]; signal first, idler second.
    Vec mean = Vec::Zero(4);
    Mat cov = Mat::Zero(4, 4);
    cov(0, 0) = a;
    cov(2, 2) = a;
    cov(1, 1) = omega;
    cov(3, 3) = omega;
    if (theta == 0.0) {
        mean(0) = (sp + cp) * r;
        mean(2) = (sp - cp) * r;
        // sigma_Z coupling between (x_s,p_s) and (x_i,p_i)
        cov(0, 1) = cross;
        cov(1, 0) = cross;
        cov(2, 3) = -cross;
        cov(3, 2) = -cross;
    } else {
        mean(0) = (cp - sp) * r;
        mean(2) = (cp + sp) * r;
        // sigma_X coupling
        cov(0, 3) = cross;
        cov(3, 0) = cross;
        cov(2, 1) = cross;
        cov(1, 2) = cross;
    }
    return GaussianState(2, mean, cov);
}

}  // namespace

double AttackConfig::omega() const {
    const double pn = squeeze_fraction * budget_n;
    return std::cosh(std::asinh(2.0 * std::sqrt(pn)));
}

double AttackConfig::xi_e() const { return 0.5 * std::acosh(omega()); }

double AttackConfig::mu_d() const { return (1.0 - squeeze_fraction) * budget_n * eta; }

void AttackConfig::validate() const {
    if (budget_n < 0.0) throw std::invalid_argument("AttackConfig: N must be >= 0");
    if (squeeze_fraction < 0.0 || squeeze_fraction > 1.0) {
        throw std::invalid_argument("AttackConfig: p must be in [0,1]");
    }
    if (eta <= 0.0 || eta > 1.0) throw std::invalid_argument("AttackConfig: eta must be in (0,1]");
    if (mu_t < 0.0) throw std::invalid_argument("AttackConfig: mu_T must be >= 0");
}

ReturnedPair build_returned_pair(const AttackConfig& cfg, PairVariant variant, NoiseModel noise) {
    cfg.validate();
    if (variant == PairVariant::Physical) {
        return {physical_state(cfg, 0.0, noise), physical_state(cfg, std::numbers::pi / 2, noise)};
    }
    return {paper_exact_state(cfg, 0.0), paper_exact_state(cfg, std::numbers::pi / 2)};
}

double closed_form_fidelity(double omega, double mu_d, double mu_t, double eta) {
    if (omega < 1.0) throw std::invalid_argument("closed_form_fidelity: omega must be >= 1");
    if (mu_d < 0.0 || mu_t < 0.0 || eta < 0.0 || eta > 1.0) {
        throw std::invalid_argument("closed_form_fidelity: parameter out of range");
    }
    const double b = 2.0 * mu_t * omega + (1.0 + mu_t) * (omega * omega + 1.0) * eta;
    if (b <= 0.0) throw std::domain_error("closed_form_fidelity: degenerate denominator B = 0");
    const double c = 16.0 * eta * eta * (1.0 + mu_t) * (1.0 + mu_t) +
                     8.0 * eta * (1.0 + mu_t) * omega * (4.0 * mu_t + omega) +
                     (1.0 + 4.0 * mu_t * omega) * (1.0 + 4.0 * mu_t * omega);
    const double absterm = std::abs(4.0 * mu_t * omega + 4.0 * eta * (1.0 + mu_t) - 1.0);
    return (1.0 / (4.0 * b)) * std::exp(-2.0 * mu_d * omega / b) * (std::sqrt(c) + absterm);
}

double simplified_fidelity(double mu_d, double mu_t) {
    if (mu_d < 0.0 || mu_t < 0.0) throw std::invalid_argument("simplified_fidelity: negative input");
    return std::exp(-mu_d / (1.0 + 2.0 * mu_t));
}

double distinguishability(double fidelity_value) {
    if (fidelity_value < 0.0 || fidelity_value > 1.0) {
        throw std::invalid_argument("distinguishability: fidelity out of [0,1]");
    }
    return (1.0 - fidelity_value) / 2.0;
}

OptimalP optimal_p(double budget_n, double eta, double mu_t, std::size_t grid_points) {
    if (grid_points < 2) throw std::invalid_argument("optimal_p: empty or degenerate grid");
    auto f_of = [&](double p) {
        AttackConfig c{budget_n, p, 0.0, eta, mu_t};
        auto pair = build_returned_pair(c, PairVariant::Physical);
        return fidelity(pair.state_0, pair.state_quarter);
    };
    std::size_t best = 0;
    double fbest = 0.0;
    std::vector<double> fs(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double p = static_cast<double>(i) / static_cast<double>(grid_points - 1);
        fs[i] = f_of(p);
        if (i == 0 || fs[i] < fbest) {
            fbest = fs[i];
            best = i;
        }
    }
    // golden-section refinement on the bracket around the best grid point
    const double step = 1.0 / static_cast<double>(grid_points - 1);
    double lo = best == 0 ? 0.0 : (static_cast<double>(best) - 1.0) * step;
    double hi = best + 1 >= grid_points ? 1.0 : (static_cast<double>(best) + 1.0) * step;
    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = f_of(x1), f2 = f_of(x2);
    for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = f_of(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = f_of(x2);
        }
    }
    double p_star = f1 < f2 ? x1 : x2;
    double f_star = std::min(f1, f2);
    // ties break toward smaller p; in particular p = 0 wins when flat
    const double f_edge = fs[best];
    const double p_edge = static_cast<double>(best) * step;
    if (f_edge <= f_star + 1e-12 && p_edge <= p_star) {
        p_star = p_edge;
        f_star = f_edge;
    }
    return {p_star, f_star, best};
}

BudgetAudit budget_audit(const AttackConfig& cfg) {
    cfg.validate();
    GaussianState s = vacuum(2);
    const double xi = cfg.xi_e();
    if (xi > 0.0) s = two_mode_squeeze(s, 0, 1, xi);
    const double amp = std::sqrt((1.0 - cfg.squeeze_fraction) * cfg.budget_n);
    if (amp > 0.0) s = displace(s, 0, std::polar(amp, cfg.phi));
    BudgetAudit audit{};
    audit.signal_photons = mean_photons(s, 0);
    audit.squeeze_photons = (cfg.omega() - 1.0) / 2.0;
    audit.displacement_photons = (1.0 - cfg.squeeze_fraction) * cfg.budget_n;
    audit.nominal_budget = cfg.budget_n;
    const double nominal_squeeze = cfg.squeeze_fraction * cfg.budget_n;
    audit.omega_matches_budget =
        std::abs(audit.squeeze_photons - nominal_squeeze) <=
        1e-9 * std::max(1.0, nominal_squeeze);
    return audit;
}

}  // namespace tha
