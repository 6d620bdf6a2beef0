#ifndef THA_GAUSSIAN_HPP
#define THA_GAUSSIAN_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tha {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Bosonic Gaussian state in the xxpp quadrature ordering
/// [x_1..x_n, p_1..p_n], with x = a + a^dag and p = -i(a - a^dag).
/// Vacuum has zero mean and identity covariance.
class GaussianState {
public:
    GaussianState(std::size_t n_modes, Vec mean, Mat cov);

    std::size_t n_modes() const { return n_; }
    const Vec& mean() const { return mean_; }
    const Mat& cov() const { return cov_; }

    /// Minimum eigenvalue of cov + i*Omega; physical states have >= -tol.
    double physicality_margin() const;
    bool is_physical(double tol = 1e-9) const;

    /// Plain-text fixture form: mean entries, then row-major covariance,
    /// one value per line at 17 significant digits.
    std::string debug_string() const;

private:
    std::size_t n_;
    Vec mean_;
    Mat cov_;
};

/// Symplectic form [[0, I],[-I, 0]] for n modes in xxpp ordering.
Mat symplectic_form(std::size_t n_modes);

GaussianState vacuum(std::size_t n_modes);

GaussianState displace(const GaussianState& s, std::size_t mode, std::complex<double> alpha);

GaussianState phase_rotate(const GaussianState& s, std::size_t mode, double theta);

GaussianState two_mode_squeeze(const GaussianState& s, std::size_t mode_i, std::size_t mode_j,
                               double xi);

/// Beam-splitter loss against vacuum: mean scales by sqrt(eta), the mode's
/// covariance block relaxes toward the identity.
GaussianState pure_loss(const GaussianState& s, std::size_t mode, double eta);

/// Classical additive noise: cov += 2*mu_T on the mode block, mean unchanged.
GaussianState add_thermal_additive(const GaussianState& s, std::size_t mode, double mu_t);

/// Thermalisation via a two-mode squeezer against a vacuum ancilla which is
/// then traced out. Amplifies the mean by cosh(arcsinh(sqrt(mu_T))).
GaussianState add_thermal_tms(const GaussianState& s, std::size_t mode, double mu_t);

GaussianState partial_trace(const GaussianState& s, const std::vector<std::size_t>& keep);

double mean_photons(const GaussianState& s, std::size_t mode);

/// Uhlmann fidelity F = Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)) for arbitrary
/// Gaussian states, evaluated from the closed form for Gaussian states.
double fidelity(const GaussianState& s1, const GaussianState& s2);

}  // namespace tha

#endif
