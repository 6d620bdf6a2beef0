#ifndef THA_TESTS_SUPPORT_HPP
#define THA_TESTS_SUPPORT_HPP

#include <complex>
#include <cstdint>
#include <random>

#include "tha/fock.hpp"
#include "tha/gaussian.hpp"

namespace tha::testing {

/// A Gaussian state together with its brute-force Fock twin, built by
/// applying the same circuit on both sides.
struct PairedState {
    GaussianState gauss;
    FockDensityMatrix fock;
};

struct PairedSampler {
    std::mt19937_64 rng;
    explicit PairedSampler(std::uint64_t seed) : rng(seed) {}

    double unif(double a, double b) {
        return a + (b - a) * std::generate_canonical<double, 53>(rng);
    }

    /// Random physical state from displacements (|alpha| <= 1.2), two-mode
    /// squeezing (xi <= 0.6), additive thermal noise (mu_T <= 2) and loss
    /// (eta in [0.1, 1]).
    PairedState sample(std::size_t n_modes, std::size_t cutoff) {
        if (n_modes == 1) {
            GaussianState g = vacuum(1);
            FockDensityMatrix f = fock_vacuum(cutoff, 1);
            const std::complex<double> alpha = std::polar(unif(0.0, 1.2), unif(0.0, 6.2831853));
            g = displace(g, 0, alpha);
            f = apply_unitary_generator(f, Generator::Displacement, alpha);
            const double mu_t = unif(0.0, 2.0);
            g = add_thermal_additive(g, 0, mu_t);
            f = add_thermal_fock(f, mu_t);
            const double eta = unif(0.1, 1.0);
            g = pure_loss(g, 0, eta);
            f = attenuate_kraus(f, eta);
            const double th = unif(0.0, 6.2831853);
            g = phase_rotate(g, 0, th);
            f = apply_unitary_generator(f, Generator::Phase, th);
            return {g, f};
        }
        const double xi = unif(0.0, 0.6);
        GaussianState g = two_mode_squeeze(vacuum(2), 0, 1, xi);
        FockDensityMatrix f = tmsv_fock(xi, cutoff);
        for (std::size_t mode = 0; mode < 2; ++mode) {
            const std::complex<double> alpha = std::polar(unif(0.0, 1.2), unif(0.0, 6.2831853));
            g = displace(g, mode, alpha);
            f = apply_unitary_generator(f, Generator::Displacement, alpha, mode);
            const double mu_t = unif(0.0, 2.0);
            g = add_thermal_additive(g, mode, mu_t);
            f = add_thermal_fock(f, mu_t, mode);
            const double eta = unif(0.1, 1.0);
            g = pure_loss(g, mode, eta);
            f = attenuate_kraus(f, eta, mode);
        }
        return {g, f};
    }
};

}  // namespace tha::testing

#endif
