#include <cmath>
#include <complex>

#include "doctest.h"
#include "tha/fock.hpp"

using namespace tha;
using std::complex;

TEST_CASE("coherent_fock") {
    auto vac = coherent_fock(0.0, 20);
    CHECK(vac.entries()(0, 0).real() == doctest::Approx(1.0));
    CHECK(vac.entries()(1, 1).real() == doctest::Approx(0.0));

    auto coh = coherent_fock(1.0, 30);
    CHECK(photon_statistics(coh).mean == doctest::Approx(1.0).epsilon(1e-8));
    // |<0|alpha>|^2 = e^{-1}
    CHECK(coh.entries()(0, 0).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
    CHECK(coh.leakage() <= 1e-10);

    CHECK_THROWS_AS(coherent_fock(4.0, 30), std::invalid_argument);
}

TEST_CASE("apply_unitary_generator") {
    // phase leaves number states alone
    auto one = fock_vacuum(10, 1);
    CMat m = one.entries();
    m(0, 0) = 0.0;
    m(1, 1) = 1.0;
    FockDensityMatrix n1(10, 1, m);
    auto rotated = apply_unitary_generator(n1, Generator::Phase, 0.7);
    CHECK((rotated.entries() - n1.entries()).cwiseAbs().maxCoeff() <= 1e-12);

    // displacement of vacuum reproduces the coherent state
    auto disp = apply_unitary_generator(fock_vacuum(30, 1), Generator::Displacement, 1.0);
    CHECK(uhlmann_fidelity(disp, coherent_fock(1.0, 30)) == doctest::Approx(1.0).epsilon(1e-6));

    // two-mode squeeze on vacuum: reduced mode is thermal with sinh^2(xi)
    auto sq = apply_unitary_generator(fock_vacuum(12, 2), Generator::TwoModeSqueeze, 0.3);
    const double nbar = photon_statistics(partial_trace_fock(sq, 0)).mean;
    CHECK(nbar == doctest::Approx(std::sinh(0.3) * std::sinh(0.3)).epsilon(1e-6));
    // matches the direct Schmidt-form construction
    CHECK(uhlmann_fidelity(sq, tmsv_fock(0.3, 12)) == doctest::Approx(1.0).epsilon(1e-8));

    CHECK_THROWS_AS(apply_unitary_generator(fock_vacuum(10, 1), Generator::TwoModeSqueeze, 0.3),
                    std::invalid_argument);
}

TEST_CASE("attenuate_kraus") {
    // single photon: eta |1><1| + (1-eta) |0><0|
    CMat m = CMat::Zero(11, 11);
    m(1, 1) = 1.0;
    FockDensityMatrix one(10, 1, m);
    auto lossy = attenuate_kraus(one, 0.3);
    CHECK(lossy.entries()(1, 1).real() == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(lossy.entries()(0, 0).real() == doctest::Approx(0.7).epsilon(1e-12));

    // coherent alpha -> coherent sqrt(eta) alpha
    auto out = attenuate_kraus(coherent_fock(complex<double>(0.8, 0.6), 30), 0.49);
    auto expect = coherent_fock(complex<double>(0.8 * 0.7, 0.6 * 0.7), 30);
    CHECK(uhlmann_fidelity(out, expect) == doctest::Approx(1.0).epsilon(1e-8));

    // vacuum fixed point
    auto v = attenuate_kraus(fock_vacuum(10, 1), 0.2);
    CHECK(v.entries()(0, 0).real() == doctest::Approx(1.0));

    CHECK_THROWS_AS(attenuate_kraus(one, 1.2), std::invalid_argument);
}

TEST_CASE("attenuation preserves trace and loses photons linearly") {
    auto rho = add_thermal_fock(coherent_fock(complex<double>(0.5, -0.9), 30), 0.8);
    const double before = photon_statistics(rho).mean;
    auto out = attenuate_kraus(rho, 0.37);
    CHECK(out.entries().trace().real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(photon_statistics(out).mean == doctest::Approx(0.37 * before).epsilon(1e-8));

    auto two_step = attenuate_kraus(attenuate_kraus(rho, 0.7), 0.6);
    auto one_step = attenuate_kraus(rho, 0.42);
    CHECK((two_step.entries() - one_step.entries()).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("uhlmann_fidelity") {
    auto vac = fock_vacuum(20, 1);
    CHECK(uhlmann_fidelity(vac, vac) == doctest::Approx(1.0));

    CMat m = CMat::Zero(21, 21);
    m(1, 1) = 1.0;
    FockDensityMatrix one(20, 1, m);
    CHECK(uhlmann_fidelity(vac, one) == doctest::Approx(0.0));

    // |<alpha|beta>| = e^{-|alpha-beta|^2/2}; alpha=1, beta=i gives e^{-1}
    const double f = uhlmann_fidelity(coherent_fock(1.0, 30),
                                      coherent_fock(complex<double>(0.0, 1.0), 30));
    CHECK(f == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));

    CHECK_THROWS_AS(uhlmann_fidelity(vac, fock_vacuum(10, 1)), std::invalid_argument);
}

TEST_CASE("photon_statistics") {
    auto vac = photon_statistics(fock_vacuum(20, 1));
    CHECK(vac.mean == doctest::Approx(0.0));
    CHECK(vac.variance_v == doctest::Approx(0.0));
    CHECK(vac.diagonal[0] == doctest::Approx(1.0));

    // Poisson: <n> = 1, <n^2> = 2, v = <n^2> - <n> = 1
    auto coh = photon_statistics(coherent_fock(1.0, 30));
    CHECK(coh.mean == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(coh.variance_v == doctest::Approx(1.0).epsilon(1e-7));

    auto th = photon_statistics(add_thermal_fock(fock_vacuum(30, 1), 1.0));
    CHECK(th.mean == doctest::Approx(1.0).epsilon(1e-6));

    CHECK_THROWS_AS(photon_statistics(fock_vacuum(10, 2)), std::invalid_argument);
}

TEST_CASE("thermal channel matches geometric distribution") {
    auto th = add_thermal_fock(fock_vacuum(30, 1), 0.6);
    const auto st = photon_statistics(th);
    for (std::size_t k = 0; k < 6; ++k) {
        const double expect = std::pow(0.6, static_cast<double>(k)) /
                              std::pow(1.6, static_cast<double>(k + 1));
        CHECK(st.diagonal[k] == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("leakage is tracked and reported") {
    auto big = coherent_fock(2.5, 26);  // pushes the guard without tripping it
    CHECK(big.leakage() >= 0.0);
    auto amped = add_thermal_fock(coherent_fock(1.2, 30), 2.0);
    CHECK(amped.leakage() > 0.0);
    CHECK(amped.leakage() < 1e-2);
}
