#ifndef THA_ATTACK_HPP
#define THA_ATTACK_HPP

#include <cstddef>

#include "tha/gaussian.hpp"

namespace tha {

/// Eve's Gaussian attack parameters. N is the mean-photon budget, p the
/// fraction spent on two-mode squeezing, phi the displacement angle relative
/// to the (real) squeezing parameter, eta Alice's attenuator transmissivity
/// and mu_T the thermal-noise level added by Alice.
struct AttackConfig {
    double budget_n = 1e6;
    double squeeze_fraction = 0.0;  // p
    double phi = 0.0;
    double eta = 1e-7;
    double mu_t = 0.0;

    /// omega = cosh[arcsinh(2 sqrt(pN))], the squeezed quadrature variance
    /// parameter used by the closed forms.
    double omega() const;
    /// xi_E with omega = cosh(2 xi_E).
    double xi_e() const;
    /// mu_D = (1-p) N eta, Eve's mean returned displacement photons.
    double mu_d() const;

    void validate() const;
};

enum class PairVariant { Physical, PaperExact };
enum class NoiseModel { Additive, Tms };

/// Eve's returned two-mode states for theta = 0 and theta = pi/2.
struct ReturnedPair {
    GaussianState state_0;
    GaussianState state_quarter;
};

/// Physical variant composes the circuit (squeeze, displace, loss, phase,
/// thermal); paper-exact emits the published mean/covariance pair verbatim,
/// in the internal convention the fidelity routine rescales from.
ReturnedPair build_returned_pair(const AttackConfig& cfg, PairVariant variant,
                                 NoiseModel noise = NoiseModel::Additive);

/// Closed-form fidelity between the two returned states.
double closed_form_fidelity(double omega, double mu_d, double mu_t, double eta);

/// Coherent-attack limit: F = exp(-mu_D / (1 + 2 mu_T)).
double simplified_fidelity(double mu_d, double mu_t);

/// Delta = (1 - F) / 2, the worst-case distinguishability bound.
double distinguishability(double fidelity_value);

struct OptimalP {
    double p_star;
    double fidelity_at_star;
    std::size_t grid_argmin;
};

/// Minimizes the returned-pair fidelity over the squeezing fraction p on a
/// uniform grid plus golden-section refinement; ties break toward smaller p.
OptimalP optimal_p(double budget_n, double eta, double mu_t, std::size_t grid_points = 64);

/// Photon bookkeeping for the pre-attenuation signal mode. The squeezing
/// term actually contributes (omega-1)/2 photons, which differs from the
/// nominal p*N whenever p*N is not small; `omega_matches_budget` records
/// whether the published parameterization is self-consistent here.
struct BudgetAudit {
    double signal_photons;        // measured on the built state
    double squeeze_photons;       // (omega-1)/2
    double displacement_photons;  // (1-p) N
    double nominal_budget;        // N
    bool omega_matches_budget;
};

BudgetAudit budget_audit(const AttackConfig& cfg);

}  // namespace tha

#endif
