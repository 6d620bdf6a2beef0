#ifndef THA_FOCK_HPP
#define THA_FOCK_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tha {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Truncated photon-number-basis density matrix on one or two modes.
/// Ground-truth engine for the Gaussian closed forms: slow, explicit and
/// independent of the covariance-matrix code paths.
class FockDensityMatrix {
public:
    FockDensityMatrix(std::size_t cutoff, std::size_t n_modes, CMat entries);

    std::size_t cutoff() const { return cutoff_; }
    std::size_t n_modes() const { return n_modes_; }
    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const CMat& entries() const { return entries_; }

    /// 1 - trace accumulated across truncating renormalizations.
    double leakage() const { return leakage_; }
    void add_leakage(double l) { leakage_ += l; }

    std::string debug_string() const;

    static constexpr std::size_t kDefaultCutoff1 = 30;  // single mode
    static constexpr std::size_t kDefaultCutoff2 = 20;  // per mode, two modes

private:
    std::size_t cutoff_;
    std::size_t n_modes_;
    CMat entries_;
    double leakage_ = 0.0;
};

struct PhotonStatistics {
    double mean;
    double variance_v;  // <n^2> - <n>
    std::vector<double> diagonal;
};

enum class Generator { Phase, Displacement, TwoModeSqueeze };

FockDensityMatrix fock_vacuum(std::size_t cutoff, std::size_t n_modes);

/// |alpha><alpha| truncated and renormalized. Requires |alpha|^2 <= cutoff/4.
FockDensityMatrix coherent_fock(std::complex<double> alpha, std::size_t cutoff);

/// U rho U^dag with U = exp of the requested generator built from truncated
/// ladder operators; renormalizes afterwards (truncated U is not unitary).
/// Phase and displacement act on `mode`; the two-mode squeeze needs a
/// two-mode state and ignores `mode`.
FockDensityMatrix apply_unitary_generator(const FockDensityMatrix& rho, Generator gen,
                                          std::complex<double> parameter, std::size_t mode = 0);

/// Pure-loss channel as an explicit Kraus sum over the number of lost photons.
FockDensityMatrix attenuate_kraus(const FockDensityMatrix& rho, double eta, std::size_t mode = 0);

/// Quantum-limited amplifier of gain G >= 1 (Kraus form). Composed with
/// attenuate_kraus(1/G) this realizes the additive classical-noise channel.
FockDensityMatrix amplify_kraus(const FockDensityMatrix& rho, double gain, std::size_t mode = 0);

/// Additive thermal noise of mean photon number mu on one mode, realized as
/// loss 1/(1+mu) followed by amplification 1+mu.
FockDensityMatrix add_thermal_fock(const FockDensityMatrix& rho, double mu, std::size_t mode = 0);

/// Two-mode squeezed vacuum built directly from its Schmidt form.
FockDensityMatrix tmsv_fock(double xi, std::size_t cutoff);

FockDensityMatrix partial_trace_fock(const FockDensityMatrix& rho, std::size_t keep_mode);

double uhlmann_fidelity(const FockDensityMatrix& rho1, const FockDensityMatrix& rho2);

PhotonStatistics photon_statistics(const FockDensityMatrix& rho);

}  // namespace tha

#endif
