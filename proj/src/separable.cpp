#include "tha/separable.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace tha {

double beta_max(double mu) {
    if (mu < 0.0 || mu > 2.0) throw std::invalid_argument("beta_max: mu out of [0,2]");
    return 0.5 * std::sqrt(mu * (2.0 - mu));
}

SubspaceState rho_sub(double mu, double eta, double alpha_term, double beta) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    const double e2a = eta * eta * alpha_term;
    m(0, 0) = 1.0 - mu + e2a / 2.0;
    m(1, 1) = mu - e2a;
    m(2, 2) = e2a / 2.0;
    m(0, 2) = beta;
    m(2, 0) = beta;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m, Eigen::EigenvaluesOnly);
    const double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < -1e-10) {
        throw std::domain_error("rho_sub: matrix not PSD (min eigenvalue " +
                                std::to_string(min_ev) + ")");
    }
    return {m, mu, eta, alpha_term, beta};
}

double separable_delta_bound(double mu) {
    if (mu < 0.0 || mu > 2.0) throw std::invalid_argument("separable_delta_bound: mu out of [0,2]");
    return (1.0 - std::exp(-mu) * std::sqrt(1.0 - 3.0 * mu * (2.0 - mu) / 4.0)) / 2.0;
}

double lucamarini_delta(double mu) {
    if (mu < 0.0) throw std::invalid_argument("lucamarini_delta: mu must be >= 0");
    const double v = (1.0 - std::exp(-mu) * std::cos(mu)) / 2.0;
    return std::min(std::max(v, 0.0), 0.5);
}

double constructive_delta(double mu) {
    if (mu < 0.0 || mu > 2.0) throw std::invalid_argument("constructive_delta: mu out of [0,2]");
    const double beta = beta_max(mu);
    // worst case: alpha_term chosen so the |1><1| population vanishes
    const double alpha_term = mu;  // with eta folded in: eta^2 alpha = mu
    const auto sub_plus = rho_sub(mu, 1.0, alpha_term, beta);
    const auto sub_minus = rho_sub(mu, 1.0, alpha_term, -beta);
    // Embed both subspace states with their orthogonal >=3-photon branches.
    // The branches for the two theta settings are mutually orthogonal, so
    // they contribute nothing to the fidelity.
    const double w = std::exp(-mu);
    Eigen::MatrixXcd r1 = Eigen::MatrixXcd::Zero(5, 5);
    Eigen::MatrixXcd r2 = Eigen::MatrixXcd::Zero(5, 5);
    r1.topLeftCorner(3, 3) = (w * sub_plus.matrix).cast<std::complex<double>>();
    r2.topLeftCorner(3, 3) = (w * sub_minus.matrix).cast<std::complex<double>>();
    r1(3, 3) = 1.0 - w;
    r2(4, 4) = 1.0 - w;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es1(r1);
    Eigen::VectorXd ev = es1.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXcd sq =
        es1.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es1.eigenvectors().adjoint();
    Eigen::MatrixXcd m = sq * r2 * sq;
    m = ((m + m.adjoint()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(m, Eigen::EigenvaluesOnly);
    const double floor = 1e-14 * std::max(es2.eigenvalues().maxCoeff(), 0.0);
    double f = 0.0;
    for (Eigen::Index i = 0; i < 5; ++i) {
        const double lam = es2.eigenvalues()(i);
        if (lam > floor) f += std::sqrt(lam);
    }
    return (1.0 - f) / 2.0;
}

SurvivalCheck survival_bound_check(const FockDensityMatrix& rho, double eta) {
    if (rho.n_modes() != 1) throw std::invalid_argument("survival_bound_check: single mode only");
    const auto stats_in = photon_statistics(rho);
    const auto out = attenuate_kraus(rho, eta);
    const auto stats_out = photon_statistics(out);
    double lhs = 0.0;
    for (std::size_t k = 0; k <= 2 && k < stats_out.diagonal.size(); ++k) {
        lhs += stats_out.diagonal[k];
    }
    const double rhs = std::exp(-eta * stats_in.mean);
    return {lhs, rhs, lhs >= rhs - 1e-10};
}

double bimodal_inequality(double y, double p) {
    if (y < 0.0 || y > 1.0 || p < 0.0 || p > 1.0) {
        throw std::invalid_argument("bimodal_inequality: inputs out of [0,1]");
    }
    if (p == 0.0) return 0.0;
    if (y == 0.0) return 1.0 - p;
    return -std::pow(y, p) + p * y - p + 1.0;
}

std::uint64_t mc_subseed(std::uint64_t master_seed, std::uint64_t item) {
    // splitmix64 step keyed by item index
    std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (item + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace tha
