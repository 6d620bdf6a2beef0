#ifndef THA_SEPARABLE_HPP
#define THA_SEPARABLE_HPP

#include <cstdint>

#include <Eigen/Dense>

#include "tha/fock.hpp"

namespace tha {

/// Projection of Eve's attenuated return onto the {|0>,|1>,|2>} subspace.
struct SubspaceState {
    Eigen::Matrix3d matrix;
    double mu;
    double eta;
    double alpha_term;  // v + <n>^2 + <n>
    double beta;
};

/// Largest off-diagonal coefficient keeping the subspace state PSD when the
/// |1><1| population is zeroed: beta = sqrt(mu (2 - mu)) / 2.
double beta_max(double mu);

/// Subspace matrix for theta = 0; theta = pi/2 flips the sign of beta.
SubspaceState rho_sub(double mu, double eta, double alpha_term, double beta);

/// Distinguishability bound for arbitrary separable attack states:
/// [1 - e^{-mu} sqrt(1 - 3 mu(2-mu)/4)] / 2.
double separable_delta_bound(double mu);

/// Coherent-state reference bound [1 - e^{-mu} cos(mu)] / 2, clamped to
/// [0, 1/2]. (The exponent sign follows the nonnegative published curve.)
double lucamarini_delta(double mu);

/// Distinguishability obtained by actually building the worst-case subspace
/// pair, attaching the orthogonal >=3-photon branch with weight 1 - e^{-mu},
/// and evaluating the Uhlmann fidelity. Equals [1 - e^{-mu}(1 - mu)]/2,
/// which sits above separable_delta_bound.
double constructive_delta(double mu);

struct SurvivalCheck {
    double lhs;  // population of <=2 photons after attenuation
    double rhs;  // e^{-eta <n>}
    bool holds;
};

/// Checks Tr[E_ok E(rho)] >= e^{-mu} on a single-mode state.
SurvivalCheck survival_bound_check(const FockDensityMatrix& rho, double eta);

/// f(y, p) = -y^p + p y - p + 1, the polynomial behind the survival bound.
/// Nonnegative on [0,1]^2; p = 0 returns 0 and y = 0 returns 1 - p.
double bimodal_inequality(double y, double p);

/// Deterministic per-item RNG stream for Monte Carlo checks.
std::uint64_t mc_subseed(std::uint64_t master_seed, std::uint64_t item);

}  // namespace tha

#endif
